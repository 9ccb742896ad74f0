#include "bbvp/boundary_symbol.hpp"

#include <stdexcept>
#include <utility>

#include "unknowns.hpp"

namespace bbvp {

using detail::k;
using detail::LinForm;
using detail::uG;
using detail::uh;
using detail::Vars;

namespace {

// Symbols of the eight boundary rows as linear forms in the 11 unknowns:
// mean curvature, trace of the linearized second fundamental form, the two
// tangential connection 1-form components, and the four gauge components.
std::array<LinForm, 8> formula_rows(const Vars& V) {
    const RationalExpr half = RationalExpr::constant(1, 2);
    const RationalExpr m_inv2n(k(-1), k(2) * V.N);
    const RationalExpr m_inv2n2(k(-1), k(2) * V.N2);
    const RationalExpr m_invn2(k(-1), V.N2);

    // 2 H' = -2 xi2 h12 - 2 xi3 h13 + xi1 (h22 + h33)
    LinForm row_h = half * (k(-2) * V.xi2 * uh(1, 2) + k(-2) * V.xi3 * uh(1, 3) +
                            V.xi1 * (uh(2, 2) + uh(3, 3)));

    // (tr K)' = -(1/2N) [ 2 xi2 h02 + 2 xi3 h03 + S (h22 + h33)
    //                     - X^l (2 xi2 h_{2l} + 2 xi3 h_{3l}) ]
    LinForm trk_sum;
    for (int l = 1; l <= 3; ++l)
        trk_sum = trk_sum +
                  V.X[l] * (k(2) * V.xi2 * uh(2, l) + k(2) * V.xi3 * uh(3, l));
    LinForm row_trk =
        m_inv2n * (k(2) * V.xi2 * uh(0, 2) + k(2) * V.xi3 * uh(0, 3) +
                   V.S * (uh(2, 2) + uh(3, 3)) - trk_sum);

    // omega'_i + N xi_i G, i = 2, 3
    auto row_omega = [&](int i) {
        LinForm acc = V.xi1 * uh(0, i) + V.xi[i] * uh(0, 1) + V.S * uh(1, i);
        for (int l = 1; l <= 3; ++l)
            acc = acc - V.X[l] * (V.xi1 * uh(i, l) + V.xi[i] * uh(1, l));
        return m_inv2n * acc + (V.N * V.xi[i]) * uG();
    };

    // beta_i = -(1/2) xi_i tr h - xi^k h_{ki} - (S/N^2)(h_{0i} - X^k h_{ki}),
    // with tr h = -(1/N^2)(h00 + X^k X^j h_{kj} - 2 X^l h_{0l}) + tr3 h.
    auto row_beta_spatial = [&](int i) {
        LinForm a1 = V.xi[i] * uh(0, 0);
        for (int kk = 1; kk <= 3; ++kk)
            for (int j = 1; j <= 3; ++j)
                a1 = a1 + (V.X[kk] * V.X[j] * V.xi[i]) * uh(kk, j);
        for (int l = 1; l <= 3; ++l)
            a1 = a1 - (k(2) * V.X[l] * V.xi[i]) * uh(0, l);
        LinForm a2 = V.S * uh(0, i);
        for (int kk = 1; kk <= 3; ++kk) a2 = a2 - (V.X[kk] * V.S) * uh(kk, i);
        LinForm a3;
        for (int kk = 1; kk <= 3; ++kk) a3 = a3 + V.xi[kk] * uh(kk, i);
        return m_inv2n2 * a1 +
               (half * RationalExpr(V.xi[i])) * (uh(1, 1) + uh(2, 2) + uh(3, 3)) +
               m_invn2 * a2 - a3;
    };

    LinForm bt = V.S * uh(0, 0);
    for (int kk = 1; kk <= 3; ++kk) bt = bt - (V.X[kk] * V.S) * uh(0, kk);
    LinForm row_beta_time = m_invn2 * bt;
    for (int kk = 1; kk <= 3; ++kk)
        row_beta_time = row_beta_time - V.xi[kk] * uh(0, kk);

    return {row_h,
            row_trk,
            row_omega(2),
            row_omega(3),
            row_beta_spatial(1),
            row_beta_spatial(2),
            row_beta_spatial(3),
            row_beta_time};
}

// Hand transcription of the reduced block scaled by -2N^2 (so the tilde
// block is -(1/(2N^2)) times this matrix).
SymMatrix m_display(const Vars& V) {
    SymMatrix m(8, 8);
    const Poly &x1 = V.xi1, &x2 = V.xi2, &x3 = V.xi3;
    const Poly &X1 = V.X1, &X2 = V.X2, &X3 = V.X3;
    const Poly &N = V.N, &S = V.S, &N2 = V.N2;
    const Poly N3 = N * N2;
    auto set = [&](int i, int j, Poly p) { m.at(i, j) = RationalExpr(std::move(p)); };

    set(0, 6, k(2) * N2 * x2);
    set(0, 7, k(2) * N2 * x3);

    set(1, 3, k(2) * N * x2);
    set(1, 4, k(2) * N * x3);
    set(1, 6, k(-2) * N * x2 * X1);
    set(1, 7, k(-2) * N * x3 * X1);

    set(2, 0, k(-2) * N3 * x2);
    set(2, 2, N * x2);
    set(2, 3, N * x1);
    set(2, 5, k(-1) * N * x2 * X1);
    set(2, 6, N * x3 * X3);
    set(2, 7, k(-1) * N * x2 * X3);

    set(3, 0, k(-2) * N3 * x3);
    set(3, 2, N * x3);
    set(3, 4, N * x1);
    set(3, 5, k(-1) * N * x3 * X1);
    set(3, 6, k(-1) * N * x3 * X2);
    set(3, 7, N * x2 * X2);

    set(4, 1, x1);
    set(4, 2, k(2) * S - k(2) * x1 * X1);
    set(4, 3, k(-2) * x1 * X2);
    set(4, 4, k(-2) * x1 * X3);
    set(4, 5, x1 * X1 * X1 + N2 * x1 - k(2) * S * X1);
    set(4, 6, x1 * X1 * X2 - k(2) * S * X2 + k(2) * N2 * x2);
    set(4, 7, x1 * X1 * X3 - k(2) * S * X3 + k(2) * N2 * x3);

    set(5, 1, x2);
    set(5, 2, k(-2) * x2 * X1);
    set(5, 3, k(2) * S - k(2) * x2 * X2);
    set(5, 4, k(-2) * x2 * X3);
    set(5, 5, x2 * X1 * X1 - N2 * x2);
    set(5, 6, x2 * X1 * X2 - k(2) * S * X1 + k(2) * N2 * x1);
    set(5, 7, x2 * X1 * X3);

    set(6, 1, x3);
    set(6, 2, k(-2) * x3 * X1);
    set(6, 3, k(-2) * x3 * X2);
    set(6, 4, k(2) * S - k(2) * x3 * X3);
    set(6, 5, x3 * X1 * X1 - N2 * x3);
    set(6, 6, x3 * X1 * X2);
    set(6, 7, x3 * X1 * X3 - k(2) * S * X1 + k(2) * N2 * x1);

    set(7, 1, k(2) * S);
    set(7, 2, k(2) * (N2 * x1 - S * X1));
    set(7, 3, k(2) * (N2 * x2 - S * X2));
    set(7, 4, k(2) * (N2 * x3 - S * X3));
    return m;
}

// Transcription of the row-factored reduced matrix (rows of the display
// divided by -2N^2, 2N, N, N, 1, 1, 1, 2).
SymMatrix bhat_expected(const Vars& V) {
    SymMatrix m = m_display(V);
    const std::array<RationalExpr, 8> factors = {
        RationalExpr(k(-2) * V.N2), RationalExpr(k(2) * V.N),
        RationalExpr(V.N),          RationalExpr(V.N),
        RationalExpr(k(1)),         RationalExpr(k(1)),
        RationalExpr(k(1)),         RationalExpr(k(2))};
    for (int i = 0; i < 8; ++i)
        m.scale_row(i, RationalExpr(k(1)) / factors[i]);
    return m;
}

SymMatrix b1_expected(const Vars& V) {
    SymMatrix m = bhat_expected(V);
    for (int j = 0; j < 8; ++j) m.at(1, j) = RationalExpr();
    m.at(1, 3) = RationalExpr(V.xi2);
    m.at(1, 4) = RationalExpr(V.xi3);
    m.at(4, 6) = RationalExpr(V.xi1 * V.X1 * V.X2 - k(2) * V.S * V.X2);
    m.at(4, 7) = RationalExpr(V.xi1 * V.X1 * V.X3 - k(2) * V.S * V.X3);
    return m;
}

SymMatrix b2_expected(const Vars& V) {
    SymMatrix m = b1_expected(V);
    m.at(7, 3) = RationalExpr(k(-1) * V.S * V.X2);
    m.at(7, 4) = RationalExpr(k(-1) * V.S * V.X3);
    return m;
}

SymMatrix b3_expected(const Vars& V) {
    SymMatrix m(8, 8);
    const Poly &x1 = V.xi1, &x2 = V.xi2, &x3 = V.xi3;
    const Poly &X1 = V.X1, &X2 = V.X2, &X3 = V.X3;
    const Poly &S = V.S, &N2 = V.N2;
    auto set = [&](int i, int j, Poly p) { m.at(i, j) = RationalExpr(std::move(p)); };

    set(0, 6, k(-1) * x2);
    set(0, 7, k(-1) * x3);

    set(1, 3, x2);
    set(1, 4, x3);

    set(2, 0, k(-2) * N2 * x2);
    set(2, 2, x2);
    set(2, 3, x1);
    set(2, 5, k(-1) * x2 * X1);
    set(2, 6, x3 * X3);
    set(2, 7, k(-1) * x2 * X3);

    set(3, 0, k(-2) * N2 * x3);
    set(3, 2, x3);
    set(3, 4, x1);
    set(3, 5, k(-1) * x3 * X1);
    set(3, 6, k(-1) * x3 * X2);
    set(3, 7, x2 * X2);

    set(4, 1, x1);
    set(4, 2, k(2) * S - x1 * X1);
    set(4, 3, k(-1) * x1 * X2);
    set(4, 4, k(-1) * x1 * X3);
    set(4, 5, x1 * X1 * X1 + k(2) * N2 * x1 - k(2) * S * X1);
    set(4, 6, x1 * X1 * X2 - k(2) * S * X2);
    set(4, 7, x1 * X1 * X3 - k(2) * S * X3);

    set(5, 1, x2);
    set(5, 2, k(-1) * x2 * X1);
    set(5, 3, k(2) * S - x2 * X2);
    set(5, 4, k(-1) * x2 * X3);
    set(5, 5, x2 * X1 * X1);
    set(5, 6, x2 * X1 * X2 - k(2) * S * X1 + k(2) * N2 * x1);
    set(5, 7, x2 * X1 * X3);

    set(6, 1, x3);
    set(6, 2, k(-1) * x3 * X1);
    set(6, 3, k(-1) * x3 * X2);
    set(6, 4, k(2) * S - x3 * X3);
    set(6, 5, x3 * X1 * X1);
    set(6, 6, x3 * X1 * X2);
    set(6, 7, x3 * X1 * X3 - k(2) * S * X1 + k(2) * N2 * x1);

    set(7, 1, S);
    set(7, 2, N2 * x1);
    set(7, 5, N2 * S);
    return m;
}

SymMatrix b4_expected(const Vars& V) {
    SymMatrix m(8, 8);
    const Poly &x1 = V.xi1, &x2 = V.xi2, &x3 = V.xi3;
    const Poly &X1 = V.X1, &X2 = V.X2, &X3 = V.X3;
    const Poly &S = V.S, &N2 = V.N2;
    auto set = [&](int i, int j, Poly p) { m.at(i, j) = RationalExpr(std::move(p)); };

    set(0, 6, k(-1) * x2);
    set(0, 7, k(-1) * x3);

    set(1, 3, x2);
    set(1, 4, x3);
    set(1, 6, x2 * X1);
    set(1, 7, x3 * X1);

    set(2, 0, k(-2) * N2 * x2);
    set(2, 2, x2);
    set(2, 3, x1);
    set(2, 6, x3 * X3 + x1 * X1);
    set(2, 7, k(-1) * x2 * X3);

    set(3, 0, k(-2) * N2 * x3);
    set(3, 2, x3);
    set(3, 4, x1);
    set(3, 6, k(-1) * x3 * X2);
    set(3, 7, x2 * X2 + x1 * X1);

    set(4, 1, x1);
    set(4, 2, k(2) * S - x1 * X1);
    set(4, 3, k(-1) * x1 * X2);
    set(4, 4, k(-1) * x1 * X3);
    set(4, 5, k(2) * N2 * x1);
    set(4, 6, k(-2) * S * X2);
    set(4, 7, k(-2) * S * X3);

    set(5, 1, x2);
    set(5, 2, k(-1) * x2 * X1);
    set(5, 3, k(2) * S - x2 * X2);
    set(5, 4, k(-1) * x2 * X3);
    set(5, 6, k(2) * N2 * x1);

    set(6, 1, x3);
    set(6, 2, k(-1) * x3 * X1);
    set(6, 3, k(-1) * x3 * X2);
    set(6, 4, k(2) * S - x3 * X3);
    set(6, 7, k(2) * N2 * x1);

    set(7, 1, S);
    set(7, 2, N2 * x1);
    set(7, 5, N2 * S + N2 * x1 * X1);
    return m;
}

SymMatrix b5_expected(const Vars& V) {
    SymMatrix m(8, 8);
    const Poly &x1 = V.xi1, &x2 = V.xi2, &x3 = V.xi3;
    const Poly &X1 = V.X1, &X2 = V.X2, &X3 = V.X3;
    const Poly &S = V.S, &N2 = V.N2;
    auto set = [&](int i, int j, Poly p) { m.at(i, j) = RationalExpr(std::move(p)); };

    set(0, 6, k(-1) * x2);
    set(0, 7, k(-1) * x3);

    set(1, 3, x2);
    set(1, 4, x3);

    set(2, 0, k(-2) * N2 * x2);
    set(2, 3, x1);
    set(2, 6, x3 * X3 + x1 * X1);
    set(2, 7, k(-1) * x2 * X3);

    set(3, 0, k(-2) * N2 * x3);
    set(3, 4, x1);
    set(3, 6, k(-1) * x3 * X2);
    set(3, 7, x2 * X2 + x1 * X1);

    set(4, 1, x1);
    set(4, 2, k(2) * S);
    set(4, 5, k(2) * N2 * x1);
    set(4, 6, k(-2) * S * X2);
    set(4, 7, k(-2) * S * X3);

    set(5, 1, x2);
    set(5, 3, k(2) * S);
    set(5, 6, k(2) * N2 * x1);

    set(6, 1, x3);
    set(6, 4, k(2) * S);
    set(6, 7, k(2) * N2 * x1);

    set(7, 1, S);
    set(7, 2, N2 * x1 + S * X1);
    set(7, 3, S * X2);
    set(7, 4, S * X3);
    set(7, 5, N2 * S + N2 * x1 * X1);
    return m;
}

void require_equal(const SymMatrix& got, const SymMatrix& want, const char* what) {
    for (int i = 0; i < got.rows(); ++i)
        for (int j = 0; j < got.cols(); ++j)
            if (!(got.at(i, j) == want.at(i, j)))
                throw std::logic_error(
                    std::string(what) + " mismatch at (" + std::to_string(i) +
                    "," + std::to_string(j) + "): got " + got.at(i, j).str() +
                    ", expected " + want.at(i, j).str());
}

}  // namespace

InteriorSymbol build_interior_symbol() {
    Vars V;
    RationalExpr a(
        V.N2 * (V.xi1 * V.xi1 + V.xi2 * V.xi2 + V.xi3 * V.xi3) - V.S * V.S,
        V.N2);
    SymMatrix m(11, 11);
    for (int i = 0; i < 11; ++i) m.at(i, i) = a;
    return {std::move(m), std::move(a)};
}

BoundarySymbol build_boundary_symbol() {
    Vars V;
    BoundarySymbol b;

    auto rows = formula_rows(V);
    b.full = SymMatrix(11, 11);
    b.full.at(0, 8) = RationalExpr(k(1));
    b.full.at(1, 9) = RationalExpr(k(1));
    b.full.at(2, 10) = RationalExpr(k(1));
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 11; ++j) b.full.at(3 + i, j) = rows[i].c[j];

    b.tilde_formula = SymMatrix(8, 8);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) b.tilde_formula.at(i, j) = rows[i].c[j];

    const RationalExpr pre(k(-1), k(2) * V.N2);
    b.tilde = m_display(V);
    for (int i = 0; i < 8; ++i) b.tilde.scale_row(i, pre);

    b.unknown_order = {"G",   "h00", "h01", "h02", "h03", "h11",
                       "h12", "h13", "h22", "h23", "h33"};
    b.row_order = {"H'",     "(tr K)'", "omega'_2", "omega'_3",
                   "beta_1", "beta_2",  "beta_3",   "beta_0"};
    return b;
}

SymMatrix variant_rank1_correction() {
    Vars V;
    const std::array<Poly, 8> v = {Poly{}, Poly{}, Poly{}, Poly{},
                                   V.xi1,  V.xi2,  V.xi3,  Poly{}};
    const std::array<Poly, 8> w = {Poly{}, Poly{}, Poly{},       Poly{},
                                   Poly{}, Poly{}, V.X1 * V.X2, V.X1 * V.X3};
    const RationalExpr pre(k(-1), k(2) * V.N2);
    SymMatrix m(8, 8);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            m.at(i, j) = pre * RationalExpr(v[i] * w[j]);
    return m;
}

ReduceResult reduce_to_bhat(const BoundarySymbol& b) {
    Vars V;

    // Undo the -1/(2N^2) prefactor, then the per-row factors.
    SymMatrix bhat = b.tilde;
    const RationalExpr m2n2(k(-2) * V.N2);
    const std::array<RationalExpr, 8> factors = {
        RationalExpr(k(-2) * V.N2), RationalExpr(k(2) * V.N),
        RationalExpr(V.N),          RationalExpr(V.N),
        RationalExpr(k(1)),         RationalExpr(k(1)),
        RationalExpr(k(1)),         RationalExpr(k(2))};
    for (int i = 0; i < 8; ++i) bhat.scale_row(i, m2n2 / factors[i]);
    require_equal(bhat, bhat_expected(V), "row-factor extraction");

    const RationalExpr x1(V.X1), x2(V.X2), x3(V.X3);
    const RationalExpr n2(V.N2);

    ReduceResult r;
    r.bhat = bhat;
    SymMatrix s = bhat;

    s.add_multiple_of_row(1, 0, -x1);
    s.add_multiple_of_row(4, 0, RationalExpr(k(2) * V.N2));
    require_equal(s, b1_expected(V), "stage-1 checkpoint");
    r.checkpoints.push_back(s);

    s.add_multiple_of_row(7, 1, -n2);
    require_equal(s, b2_expected(V), "stage-2 checkpoint");
    r.checkpoints.push_back(s);

    s.add_multiple_of_col(5, 1, n2);
    s.add_multiple_of_col(2, 1, x1);
    s.add_multiple_of_col(3, 1, x2);
    s.add_multiple_of_col(4, 1, x3);
    require_equal(s, b3_expected(V), "stage-3 checkpoint");
    r.checkpoints.push_back(s);

    s.add_multiple_of_col(5, 2, x1);
    s.add_multiple_of_col(6, 3, x1);
    s.add_multiple_of_col(7, 4, x1);
    require_equal(s, b4_expected(V), "stage-4 checkpoint");
    r.checkpoints.push_back(s);

    s.add_multiple_of_col(2, 1, x1);
    s.add_multiple_of_col(3, 1, x2);
    s.add_multiple_of_col(4, 1, x3);
    s.add_multiple_of_col(2, 0, RationalExpr(k(1), k(2) * V.N2));
    s.add_multiple_of_row(1, 0, x1);
    require_equal(s, b5_expected(V), "stage-5 checkpoint");
    r.checkpoints.push_back(s);

    r.det_tilde = det_minor_expansion(b.tilde);
    r.det_bhat = det_minor_expansion(bhat);
    if (!(r.det_tilde * RationalExpr(k(-32) * V.N.pow(11)) == r.det_bhat))
        throw std::logic_error(
            "determinant bookkeeping violated: det(tilde) != "
            "-det(bhat)/(32 N^11)");
    if (!(det_minor_expansion(s) == r.det_bhat))
        throw std::logic_error("elementary replay changed the determinant");
    return r;
}

RationalExpr det_bhat_closed_form() {
    Vars V;
    Poly f1 = V.N2 * V.xi1 * V.xi1 - V.S * V.S;
    Poly f2 = V.xi2 * V.xi2 + V.xi3 * V.xi3;
    return RationalExpr(k(8) * V.N2 * V.N2 * f1 * f1 * f2 * f2);
}

Poly interior_quadratic_in_z() {
    Vars V;
    Poly zz = Poly::variable(Var::z);
    Poly sz = zz * V.X1 + V.xi2 * V.X2 + V.xi3 * V.X3;
    return V.N2 * (zz * zz + V.xi2 * V.xi2 + V.xi3 * V.xi3) - sz * sz;
}

RationalExpr half_plane_certificate(const RationalExpr& det) {
    std::map<Var, RationalExpr> bind;
    bind[Var::xi1] = RationalExpr::variable(Var::z);
    return rem_in_z(det.substitute(bind), interior_quadratic_in_z());
}

}  // namespace bbvp
