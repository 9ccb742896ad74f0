#include "bbvp/homotopy_symbol.hpp"

#include <utility>

#include "unknowns.hpp"

namespace bbvp {

using detail::k;
using detail::LinForm;
using detail::uG;
using detail::uh;

namespace {

struct TVars {
    Poly x1 = Poly::variable(Var::xi1);
    Poly x2 = Poly::variable(Var::xi2);
    Poly x3 = Poly::variable(Var::xi3);
    Poly t = Poly::variable(Var::t);
    Poly omt = k(1) - Poly::variable(Var::t);  // 1 - t
};

}  // namespace

HomotopySymbol build_homotopy_symbol() {
    TVars V;
    SymMatrix m(8, 8);
    auto set = [&](int i, int j, Poly p) { m.at(i, j) = RationalExpr(std::move(p)); };

    set(0, 5, V.t * V.x1);
    set(0, 6, k(-1) * V.omt * V.x2);
    set(0, 7, k(-1) * V.omt * V.x3);

    set(1, 0, k(-1) * V.t * V.x1);
    set(1, 3, V.omt * V.x2);
    set(1, 4, V.omt * V.x3);

    set(2, 0, k(-2) * V.omt * V.x2);
    set(2, 2, V.omt * V.x2);
    set(2, 3, V.x1);

    set(3, 0, k(-2) * V.omt * V.x3);
    set(3, 2, V.omt * V.x3);
    set(3, 4, V.x1);

    set(4, 1, V.x1);
    set(4, 5, V.omt * V.x1);
    set(4, 6, k(2) * V.omt * V.x2);
    set(4, 7, k(2) * V.omt * V.x3);

    set(5, 1, V.omt * V.x2);
    set(5, 5, k(-1) * V.omt * V.x2);
    set(5, 6, k(2) * V.x1);

    set(6, 1, V.omt * V.x3);
    set(6, 5, k(-1) * V.omt * V.x3);
    set(6, 7, k(2) * V.x1);

    set(7, 2, V.x1);
    set(7, 3, V.omt * V.x2);
    set(7, 4, V.omt * V.x3);

    SymMatrix d(8, 8);
    const long diag[8] = {1, -1, -2, -2, -2, -2, -2, -1};
    for (int i = 0; i < 8; ++i) d.at(i, i) = RationalExpr(k(diag[i]));

    return {std::move(m), std::move(d), RationalExpr::constant(-1, 32)};
}

SymMatrix homotopy_operator_rows() {
    TVars V;
    const RationalExpr half = RationalExpr::constant(1, 2);
    const RationalExpr omt(V.omt);

    LinForm tr4 = uh(1, 1) + uh(2, 2) + uh(3, 3) - uh(0, 0);
    LinForm tr3 = uh(1, 1) + uh(2, 2) + uh(3, 3);

    std::array<LinForm, 8> rows;
    // (1-t) H' + t d_n h(n, n)
    rows[0] = omt * (k(-1) * V.x2 * uh(1, 2) + k(-1) * V.x3 * uh(1, 3) +
                     (half * RationalExpr(V.x1)) * (uh(2, 2) + uh(3, 3))) +
              (V.t * V.x1) * uh(1, 1);
    // (1-t) (tr K)' + t d_n G
    rows[1] = omt * (k(-1) * V.x2 * uh(0, 2) + k(-1) * V.x3 * uh(0, 3)) +
              (V.t * V.x1) * uG();
    // -1/2 [ d_n h(dt)(e_i) + (1-t) d_{e_i} h(dt)(n) ] + (1-t) e_i(G)
    rows[2] = (-half) * (V.x1 * uh(0, 2) + (V.omt * V.x2) * uh(0, 1)) +
              (V.omt * V.x2) * uG();
    rows[3] = (-half) * (V.x1 * uh(0, 3) + (V.omt * V.x3) * uh(0, 1)) +
              (V.omt * V.x3) * uG();
    // -1/2 d_n h(dt, dt) + (1-t) [ 1/2 d_n tr3 h + (div h)(n) ]
    rows[4] = (-half * RationalExpr(V.x1)) * uh(0, 0) +
              omt * ((half * RationalExpr(V.x1)) * tr3 -
                     (V.x1 * uh(1, 1) + V.x2 * uh(1, 2) + V.x3 * uh(1, 3)));
    // tangential: -d_n h(n)^T + (1-t) [ -(div_T h)_i + 1/2 xi_i tr4 ]
    rows[5] = (k(-1) * V.x1) * uh(1, 2) +
              omt * ((half * RationalExpr(V.x2)) * tr4 -
                     (V.x2 * uh(2, 2) + V.x3 * uh(2, 3)));
    rows[6] = (k(-1) * V.x1) * uh(1, 3) +
              omt * ((half * RationalExpr(V.x3)) * tr4 -
                     (V.x2 * uh(2, 3) + V.x3 * uh(3, 3)));
    // stationary: -d_n h(n, dt) - (1-t) d_{e_i} h(e_i, dt)
    rows[7] = (k(-1) * V.x1) * uh(0, 1) -
              omt * (V.x2 * uh(0, 2) + V.x3 * uh(0, 3));

    SymMatrix m(8, detail::kUnknowns);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < detail::kUnknowns; ++j) m.at(i, j) = rows[i].c[j];
    return m;
}

SymMatrix homotopy_flat_endpoint() {
    TVars V;
    SymMatrix m(8, 8);
    auto set = [&](int i, int j, Poly p) { m.at(i, j) = RationalExpr(std::move(p)); };
    // Flat display block; the endpoint is -1/2 of it.
    set(0, 6, k(2) * V.x2);
    set(0, 7, k(2) * V.x3);
    set(1, 3, k(2) * V.x2);
    set(1, 4, k(2) * V.x3);
    set(2, 0, k(-2) * V.x2);
    set(2, 2, V.x2);
    set(2, 3, V.x1);
    set(3, 0, k(-2) * V.x3);
    set(3, 2, V.x3);
    set(3, 4, V.x1);
    set(4, 1, V.x1);
    set(4, 5, V.x1);
    set(4, 6, k(2) * V.x2);
    set(4, 7, k(2) * V.x3);
    set(5, 1, V.x2);
    set(5, 5, k(-1) * V.x2);
    set(5, 6, k(2) * V.x1);
    set(6, 1, V.x3);
    set(6, 5, k(-1) * V.x3);
    set(6, 7, k(2) * V.x1);
    set(7, 2, k(2) * V.x1);
    set(7, 3, k(2) * V.x2);
    set(7, 4, k(2) * V.x3);
    for (int i = 0; i < 8; ++i)
        m.scale_row(i, RationalExpr::constant(-1, 2));
    return m;
}

SymMatrix homotopy_selfadjoint_endpoint() {
    TVars V;
    SymMatrix m(8, 8);
    auto set = [&](int i, int j, Poly p) { m.at(i, j) = RationalExpr(std::move(p)); };
    const RationalExpr mhalf = RationalExpr::constant(-1, 2);
    set(0, 5, V.x1);                       // d_n h(n, n)
    set(1, 0, V.x1);                       // d_n G
    m.at(2, 3) = mhalf * RationalExpr(V.x1);
    m.at(3, 4) = mhalf * RationalExpr(V.x1);
    m.at(4, 1) = mhalf * RationalExpr(V.x1);
    set(5, 6, k(-1) * V.x1);
    set(6, 7, k(-1) * V.x1);
    set(7, 2, k(-1) * V.x1);
    return m;
}

RationalExpr homotopy_det_closed_form() {
    TVars V;
    Poly eta2 = V.x2 * V.x2 + V.x3 * V.x3;
    Poly w = (k(2) + V.t) * V.omt * V.omt;  // (2+t)(1-t)^2
    Poly xi1sq = V.x1 * V.x1;
    Poly xi1q = xi1sq * xi1sq;
    Poly b1 = V.t * xi1q - w * xi1sq * eta2;
    Poly b2 = k(2) * w * eta2 * xi1sq - k(4) * V.t * xi1q;
    return RationalExpr(k(-1) * b1 * b2);
}

RationalExpr homotopy_certificate(const RationalExpr& det) {
    TVars V;
    std::map<Var, RationalExpr> bind;
    bind[Var::xi1] = RationalExpr::variable(Var::z);
    Poly zz = Poly::variable(Var::z);
    return rem_in_z(det.substitute(bind),
                    zz * zz + V.x2 * V.x2 + V.x3 * V.x3);
}

RationalExpr homotopy_certificate_closed_form() {
    TVars V;
    Poly eta2 = V.x2 * V.x2 + V.x3 * V.x3;
    Poly w = (k(2) + V.t) * V.omt * V.omt;
    Poly q1 = V.t + w;
    Poly q2 = k(2) * w + k(4) * V.t;
    return RationalExpr(q1 * q2 * eta2.pow(4));
}

Poly homotopy_bracket_product() {
    TVars V;
    Poly w = (k(2) + V.t) * V.omt * V.omt;
    return (V.t + w) * (k(2) * w + k(4) * V.t);
}

}  // namespace bbvp
