#include "bbvp/curvature.hpp"

#include <Eigen/Dense>
#include <cstring>

namespace bbvp {
namespace {

void invert4(const double g[4][4], double gi[4][4]) {
    Eigen::Matrix4d m;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) m(a, b) = g[a][b];
    Eigen::Matrix4d inv = m.inverse();
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) gi[a][b] = inv(a, b);
}

}  // namespace

Jet4 jet4(const Metric4& g, const V3& x, const FdEngine& fd, bool second_order) {
    Jet4 J;
    std::memset(&J, 0, sizeof(J));
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = mu; nu < 4; ++nu) {
            const ScalarFn& c = g.component(mu, nu);
            double v = c(x);
            J.g[mu][nu] = J.g[nu][mu] = v;
            for (int k = 0; k < 3; ++k) {
                double d = fd.d1(c, x, k);
                J.dg[k + 1][mu][nu] = J.dg[k + 1][nu][mu] = d;
            }
            if (second_order)
                for (int k = 0; k < 3; ++k)
                    for (int l = k; l < 3; ++l) {
                        double dd = fd.d2(c, x, k, l);
                        J.ddg[k + 1][l + 1][mu][nu] = J.ddg[k + 1][l + 1][nu][mu] = dd;
                        J.ddg[l + 1][k + 1][mu][nu] = J.ddg[l + 1][k + 1][nu][mu] = dd;
                    }
        }
    invert4(J.g, J.gi);

    for (int lam = 0; lam < 4; ++lam)
        for (int mu = 0; mu < 4; ++mu)
            for (int nu = mu; nu < 4; ++nu) {
                double s = 0.0;
                for (int a = 0; a < 4; ++a)
                    s += J.gi[lam][a] *
                         (J.dg[mu][a][nu] + J.dg[nu][a][mu] - J.dg[a][mu][nu]);
                J.G[lam][mu][nu] = J.G[lam][nu][mu] = 0.5 * s;
            }

    if (second_order) {
        double dgi[4][4][4] = {};
        for (int k = 1; k < 4; ++k)
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b) {
                    double s = 0.0;
                    for (int p = 0; p < 4; ++p)
                        for (int q = 0; q < 4; ++q)
                            s -= J.gi[a][p] * J.dg[k][p][q] * J.gi[q][b];
                    dgi[k][a][b] = s;
                }
        for (int k = 1; k < 4; ++k)
            for (int lam = 0; lam < 4; ++lam)
                for (int mu = 0; mu < 4; ++mu)
                    for (int nu = mu; nu < 4; ++nu) {
                        double s = 0.0;
                        for (int a = 0; a < 4; ++a) {
                            s += dgi[k][lam][a] *
                                 (J.dg[mu][a][nu] + J.dg[nu][a][mu] - J.dg[a][mu][nu]);
                            s += J.gi[lam][a] *
                                 (J.ddg[k][mu][a][nu] + J.ddg[k][nu][a][mu] -
                                  J.ddg[k][a][mu][nu]);
                        }
                        J.dG[k][lam][mu][nu] = J.dG[k][lam][nu][mu] = 0.5 * s;
                    }
    }
    return J;
}

Mat4 ricci(const Jet4& J) {
    Mat4 R{};
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = mu; nu < 4; ++nu) {
            double val = 0.0;
            for (int l = 1; l < 4; ++l) val += J.dG[l][l][mu][nu];
            if (nu >= 1)
                for (int l = 0; l < 4; ++l) val -= J.dG[nu][l][mu][l];
            for (int l = 0; l < 4; ++l)
                for (int s = 0; s < 4; ++s)
                    val += J.G[l][l][s] * J.G[s][mu][nu] -
                           J.G[l][nu][s] * J.G[s][mu][l];
            R[mu][nu] = R[nu][mu] = val;
        }
    return R;
}

Curvature curvature(const Metric4& g, const V3& x, const FdEngine& fd) {
    Jet4 J = jet4(g, x, fd, true);
    Curvature c;
    std::memcpy(c.Gamma, J.G, sizeof(c.Gamma));
    c.Ric = ricci(J);
    return c;
}

Vec4 bianchi(const Metric4& g, const Tensor4Fn& h, const V3& x,
             const FdEngine& fd) {
    Jet4 J = jet4(g, x, fd, false);

    double hv[4][4], dh[4][4][4] = {};
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = mu; nu < 4; ++nu) {
            hv[mu][nu] = hv[nu][mu] = h(mu, nu, x);
            ScalarFn comp = [&h, mu, nu](const V3& y) { return h(mu, nu, y); };
            for (int k = 0; k < 3; ++k) {
                double d = fd.d1(comp, x, k);
                dh[k + 1][mu][nu] = dh[k + 1][nu][mu] = d;
            }
        }

    double dgi[4][4][4] = {};
    for (int k = 1; k < 4; ++k)
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                double s = 0.0;
                for (int p = 0; p < 4; ++p)
                    for (int q = 0; q < 4; ++q)
                        s -= J.gi[a][p] * J.dg[k][p][q] * J.gi[q][b];
                dgi[k][a][b] = s;
            }

    Vec4 out{};
    for (int nu = 0; nu < 4; ++nu) {
        double s = 0.0;
        for (int al = 0; al < 4; ++al)
            for (int be = 0; be < 4; ++be) {
                double cov = dh[al][be][nu];
                for (int lam = 0; lam < 4; ++lam)
                    cov -= J.G[lam][al][be] * hv[lam][nu] +
                           J.G[lam][al][nu] * hv[be][lam];
                s -= J.gi[al][be] * cov;
            }
        if (nu >= 1) {
            double dtr = 0.0;
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b)
                    dtr += dgi[nu][a][b] * hv[a][b] + J.gi[a][b] * dh[nu][a][b];
            s += 0.5 * dtr;
        }
        out[nu] = s;
    }
    return out;
}

Mat4 delta_star(const Metric4& g, const Vector4Fn& Y, const V3& x,
                const FdEngine& fd) {
    Jet4 J = jet4(g, x, fd, false);
    double Yv[4], dY[4][4] = {};
    for (int mu = 0; mu < 4; ++mu) {
        Yv[mu] = Y(mu, x);
        ScalarFn comp = [&Y, mu](const V3& y) { return Y(mu, y); };
        for (int k = 0; k < 3; ++k) dY[k + 1][mu] = fd.d1(comp, x, k);
    }
    Mat4 out{};
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = mu; nu < 4; ++nu) {
            double s = 0.0;
            for (int lam = 0; lam < 4; ++lam)
                s += Yv[lam] * J.dg[lam][mu][nu] + J.g[lam][nu] * dY[mu][lam] +
                     J.g[mu][lam] * dY[nu][lam];
            out[mu][nu] = out[nu][mu] = 0.5 * s;
        }
    return out;
}

Vec4 rough_laplacian(const Metric4& g, const Vector4Fn& Y, const V3& x,
                     const FdEngine& fd) {
    Jet4 J = jet4(g, x, fd, true);
    double Yv[4], dY[4][4] = {}, ddY[4][4][4] = {};
    for (int mu = 0; mu < 4; ++mu) {
        Yv[mu] = Y(mu, x);
        ScalarFn comp = [&Y, mu](const V3& y) { return Y(mu, y); };
        for (int k = 0; k < 3; ++k) dY[k + 1][mu] = fd.d1(comp, x, k);
        for (int k = 0; k < 3; ++k)
            for (int l = k; l < 3; ++l) {
                double dd = fd.d2(comp, x, k, l);
                ddY[k + 1][l + 1][mu] = ddY[l + 1][k + 1][mu] = dd;
            }
    }
    // (nabla Y)^mu_be with the derivative slot first.
    double DY[4][4];
    for (int be = 0; be < 4; ++be)
        for (int mu = 0; mu < 4; ++mu) {
            double s = dY[be][mu];
            for (int lam = 0; lam < 4; ++lam) s += J.G[mu][be][lam] * Yv[lam];
            DY[be][mu] = s;
        }
    Vec4 out{};
    for (int mu = 0; mu < 4; ++mu) {
        double acc = 0.0;
        for (int al = 0; al < 4; ++al)
            for (int be = 0; be < 4; ++be) {
                double t = ddY[al][be][mu];
                for (int lam = 0; lam < 4; ++lam) {
                    t += J.dG[al][mu][be][lam] * Yv[lam] +
                         J.G[mu][be][lam] * dY[al][lam];
                    t += J.G[mu][al][lam] * DY[be][lam];
                    t -= J.G[lam][al][be] * DY[lam][mu];
                }
                acc += J.gi[al][be] * t;
            }
        out[mu] = -acc;
    }
    return out;
}

}  // namespace bbvp
