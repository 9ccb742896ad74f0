#include "bbvp/boundary_data.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace bbvp {
namespace {

void invert3(const double m[3][3], double out[3][3]) {
    Eigen::Matrix3d e;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) e(a, b) = m[a][b];
    Eigen::Matrix3d inv = e.inverse();
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) out[a][b] = inv(a, b);
}

struct SpatialJet {
    double gs[3][3], gsi[3][3];
    double dgs[3][3][3];  // dgs[k][i][j]
    double Gs[3][3][3];
};

SpatialJet spatial_jet(const Metric4& g, const V3& x, const FdEngine& fd) {
    SpatialJet J{};
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            const ScalarFn& c = g.component(i + 1, j + 1);
            double v = c(x);
            J.gs[i][j] = J.gs[j][i] = v;
            for (int k = 0; k < 3; ++k) {
                double d = fd.d1(c, x, k);
                J.dgs[k][i][j] = J.dgs[k][j][i] = d;
            }
        }
    invert3(J.gs, J.gsi);
    for (int lam = 0; lam < 3; ++lam)
        for (int i = 0; i < 3; ++i)
            for (int j = i; j < 3; ++j) {
                double s = 0.0;
                for (int a = 0; a < 3; ++a)
                    s += J.gsi[lam][a] *
                         (J.dgs[i][a][j] + J.dgs[j][a][i] - J.dgs[a][i][j]);
                J.Gs[lam][i][j] = J.Gs[lam][j][i] = 0.5 * s;
            }
    return J;
}

// Unit conormal of the coordinate sphere through y for the spatial block.
V3 unit_conormal(const Metric4& g, const V3& y) {
    double gs[3][3], gsi[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) gs[i][j] = gs[j][i] = g(i + 1, j + 1, y);
    invert3(gs, gsi);
    double r = norm3(y);
    V3 dr{y[0] / r, y[1] / r, y[2] / r};
    double lam2 = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) lam2 += gsi[i][j] * dr[i] * dr[j];
    double lam = std::sqrt(lam2);
    return {dr[0] / lam, dr[1] / lam, dr[2] / lam};
}

// Lapse, normal derivative of f, and shift-normal contraction at y.
struct BoostParts {
    double N, nf, Xn;
};

BoostParts boost_parts(const Metric4& g, const ScalarField& f, const V3& y) {
    double gs[3][3], gsi[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) gs[i][j] = gs[j][i] = g(i + 1, j + 1, y);
    invert3(gs, gsi);
    V3 nl = unit_conormal(g, y);
    V3 nu{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) nu[i] += gsi[i][j] * nl[j];
    V3 g0{g(0, 1, y), g(0, 2, y), g(0, 3, y)};
    double x2 = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) x2 += g0[i] * gsi[i][j] * g0[j];
    BoostParts out;
    out.N = std::sqrt(-g(0, 0, y) + x2);
    out.nf = dot3(nu, f.grad(y));
    out.Xn = dot3(g0, nu);
    return out;
}

// Two coordinate tangents of the sphere at x.
std::pair<V3, V3> sphere_tangents(const V3& x) {
    double r = norm3(x);
    V3 xh{x[0] / r, x[1] / r, x[2] / r};
    V3 v1{-xh[1], xh[0], 0.0};
    double n1 = norm3(v1);
    if (n1 < 1e-6) {
        v1 = {0.0, -xh[2], xh[1]};
        n1 = norm3(v1);
    }
    for (double& c : v1) c /= n1;
    V3 v2{xh[1] * v1[2] - xh[2] * v1[1], xh[2] * v1[0] - xh[0] * v1[2],
          xh[0] * v1[1] - xh[1] * v1[0]};
    return {v1, v2};
}

}  // namespace

BartnikData bartnik_data(const Metric4& g, const V3& x, const FdEngine& fd) {
    SpatialJet J = spatial_jet(g, x, fd);
    BartnikData out;
    out.n_low = unit_conormal(g, x);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out.n_up[i] += J.gsi[i][j] * out.n_low[j];

    double dnl[3][3];  // dnl[i][j] = d_i n_j
    for (int j = 0; j < 3; ++j) {
        ScalarFn nj = [&g, j](const V3& y) { return unit_conormal(g, y)[j]; };
        for (int i = 0; i < 3; ++i) dnl[i][j] = fd.d1(nj, x, i);
    }
    double tanp[3][3];  // g^{ij} - n^i n^j
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            tanp[i][j] = J.gsi[i][j] - out.n_up[i] * out.n_up[j];
    double H = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double cov = dnl[i][j];
            for (int l = 0; l < 3; ++l) cov -= J.Gs[l][i][j] * out.n_low[l];
            H += tanp[i][j] * cov;
        }
    out.H = H;

    // Second fundamental form of the slice from the stationary flow.
    auto xup = [&g](int l, const V3& y) {
        double gs[3][3], gsi[3][3];
        for (int i = 0; i < 3; ++i)
            for (int j = i; j < 3; ++j) gs[i][j] = gs[j][i] = g(i + 1, j + 1, y);
        invert3(gs, gsi);
        double s = 0.0;
        for (int j = 0; j < 3; ++j) s += gsi[l][j] * g(0, j + 1, y);
        return s;
    };
    double Xv[3], dX[3][3];  // dX[i][l] = d_i X^l
    for (int l = 0; l < 3; ++l) {
        ScalarFn xl = [&xup, l](const V3& y) { return xup(l, y); };
        Xv[l] = xl(x);
        for (int i = 0; i < 3; ++i) dX[i][l] = fd.d1(xl, x, i);
    }
    BoostParts bp = boost_parts(g, ScalarField{[](const V3&) { return 0.0; },
                                               [](const V3&) { return V3{}; }},
                                x);
    double K[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double lie = 0.0;
            for (int l = 0; l < 3; ++l)
                lie += Xv[l] * J.dgs[l][i][j] + J.gs[l][j] * dX[i][l] +
                       J.gs[i][l] * dX[j][l];
            K[i][j] = -lie / (2.0 * bp.N);
        }
    double k = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) k += tanp[i][j] * K[i][j];
    out.k = k;

    V3 Kn{};
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i) Kn[j] += K[i][j] * out.n_up[i];
    double Knn = dot3(Kn, out.n_up);
    for (int j = 0; j < 3; ++j) out.tau[j] = Kn[j] - Knn * out.n_low[j];

    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            out.gamma[i][j] = J.gs[i][j] - out.n_low[i] * out.n_low[j];
    return out;
}

TimeTranslation time_translate(const Metric4& g, const ScalarField& f) {
    TimeTranslation out;
    Metric4 pg;
    pg.set(0, 0, g.component(0, 0));
    for (int i = 0; i < 3; ++i)
        pg.set(0, i + 1, [g, f, i](const V3& y) {
            return g(0, i + 1, y) + g(0, 0, y) * f.grad(y)[i];
        });
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j)
            pg.set(i + 1, j + 1, [g, f, i, j](const V3& y) {
                V3 df = f.grad(y);
                return g(i + 1, j + 1, y) + g(0, i + 1, y) * df[j] +
                       g(0, j + 1, y) * df[i] + g(0, 0, y) * df[i] * df[j];
            });
    out.pulled = pg;
    out.a = [g, f](const V3& y) {
        BoostParts p = boost_parts(g, f, y);
        double base = 1.0 + p.Xn * p.nf;
        return base / std::sqrt(base * base - p.N * p.N * p.nf * p.nf);
    };
    out.b = [g, f](const V3& y) {
        BoostParts p = boost_parts(g, f, y);
        double base = 1.0 + p.Xn * p.nf;
        return p.N * p.nf / std::sqrt(base * base - p.N * p.N * p.nf * p.nf);
    };
    out.b_over_a = [g, f](const V3& y) {
        BoostParts p = boost_parts(g, f, y);
        return p.N * p.nf / (1.0 + p.Xn * p.nf);
    };
    return out;
}

std::vector<IdentityResult> verify_transformation_laws(
    const Metric4& g, const ScalarField& f, const std::vector<V3>& pts,
    const FdEngine& fd, double tol) {
    double rH = 0.0, rk = 0.0, rtau = 0.0, rgam = 0.0, rhyp = 0.0;
    TimeTranslation tt = time_translate(g, f);
    for (const V3& x : pts) {
        BartnikData B = bartnik_data(g, x, fd);
        BartnikData Bh = bartnik_data(tt.pulled, x, fd);
        double a = tt.a(x), b = tt.b(x);
        rH = std::max(rH, std::abs(Bh.H - (b * B.k + a * B.H)));
        rk = std::max(rk, std::abs(Bh.k - (a * B.k + b * B.H)));
        rhyp = std::max(rhyp, std::abs(a * a - b * b - 1.0));
        auto [v1, v2] = sphere_tangents(x);
        for (const V3& v : {v1, v2}) {
            double dba = 0.0;
            for (int j = 0; j < 3; ++j) dba += v[j] * fd.d1(tt.b_over_a, x, j);
            double lhs = dot3(Bh.tau, v);
            double rhs = a * a * dba + dot3(B.tau, v);
            rtau = std::max(rtau, std::abs(lhs - rhs));
        }
        for (const V3& va : {v1, v2})
            for (const V3& vb : {v1, v2}) {
                double gaa = 0.0, gbb = 0.0;
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j) {
                        gaa += B.gamma[i][j] * va[i] * vb[j];
                        gbb += Bh.gamma[i][j] * va[i] * vb[j];
                    }
                rgam = std::max(rgam, std::abs(gbb - gaa));
            }
    }
    int n = int(pts.size());
    return {make_result("mean_curvature_law", n, rH, tol),
            make_result("trace_law", n, rk, tol),
            make_result("momentum_law", n, rtau, tol),
            make_result("induced_metric_law", n, rgam, tol),
            make_result("unit_hyperbola", n, rhyp, tol)};
}

std::vector<IdentityResult> verify_normal_invariance(
    const Metric4& g, const ScalarField& f_tangential,
    const std::vector<V3>& pts, const FdEngine& fd, double tol) {
    double rH = 0.0, rk = 0.0, rtau = 0.0;
    TimeTranslation tt = time_translate(g, f_tangential);
    for (const V3& x : pts) {
        BartnikData B = bartnik_data(g, x, fd);
        BartnikData Bh = bartnik_data(tt.pulled, x, fd);
        rH = std::max(rH, std::abs(Bh.H - B.H));
        rk = std::max(rk, std::abs(Bh.k - B.k));
        auto [v1, v2] = sphere_tangents(x);
        for (const V3& v : {v1, v2})
            rtau = std::max(rtau, std::abs(dot3(Bh.tau, v) - dot3(B.tau, v)));
    }
    int n = int(pts.size());
    return {make_result("mean_curvature_invariant", n, rH, tol),
            make_result("trace_invariant", n, rk, tol),
            make_result("momentum_invariant", n, rtau, tol)};
}

}  // namespace bbvp
