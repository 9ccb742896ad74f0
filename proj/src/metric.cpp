#include "bbvp/metric.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace bbvp {

Metric4::Metric4() {
    for (auto& c : comp_) c = [](const V3&) { return 0.0; };
}

int Metric4::pack(int mu, int nu) {
    if (mu > nu) std::swap(mu, nu);
    // Row-major upper triangle of a 4x4 symmetric matrix.
    static constexpr int offset[4] = {0, 4, 7, 9};
    return offset[mu] + (nu - mu);
}

void Metric4::set(int mu, int nu, ScalarFn f) { comp_[pack(mu, nu)] = std::move(f); }

const ScalarFn& Metric4::component(int mu, int nu) const { return comp_[pack(mu, nu)]; }

double Metric4::operator()(int mu, int nu, const V3& x) const {
    return comp_[pack(mu, nu)](x);
}

Metric4 Metric4::minkowski() {
    Metric4 g;
    g.set(0, 0, [](const V3&) { return -1.0; });
    for (int i = 1; i < 4; ++i)
        g.set(i, i, [](const V3&) { return 1.0; });
    return g;
}

Metric4 assemble_adm(const StationaryTriple& t) {
    Metric4 out;
    out.set(0, 0, [t](const V3& x) {
        double n = t.N(x);
        double xx = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                xx += t.g(i, j, x) * t.X(i, x) * t.X(j, x);
        return -n * n + xx;
    });
    for (int i = 0; i < 3; ++i) {
        out.set(0, i + 1, [t, i](const V3& x) {
            double v = 0.0;
            for (int j = 0; j < 3; ++j) v += t.g(i, j, x) * t.X(j, x);
            return v;
        });
        for (int j = i; j < 3; ++j)
            out.set(i + 1, j + 1, [t, i, j](const V3& x) { return t.g(i, j, x); });
    }
    return out;
}

Metric4 assemble_projection(const ProjectionTriple& p) {
    Metric4 out;
    out.set(0, 0, [p](const V3& x) {
        double u = p.u(x);
        return -u * u;
    });
    for (int i = 0; i < 3; ++i) {
        out.set(0, i + 1, [p, i](const V3& x) {
            double u = p.u(x);
            return -u * u * p.theta(i, x);
        });
        for (int j = i; j < 3; ++j)
            out.set(i + 1, j + 1, [p, i, j](const V3& x) {
                double u = p.u(x);
                return p.g_S(i, j, x) - u * u * p.theta(i, x) * p.theta(j, x);
            });
    }
    return out;
}

void check_causal(const Metric4& g, const V3& x) {
    if (g(0, 0, x) >= 0.0)
        throw std::domain_error("check_causal: time direction not timelike");
    // Sylvester criterion on the spatial block.
    double a11 = g(1, 1, x), a12 = g(1, 2, x), a13 = g(1, 3, x);
    double a22 = g(2, 2, x), a23 = g(2, 3, x), a33 = g(3, 3, x);
    double m1 = a11;
    double m2 = a11 * a22 - a12 * a12;
    double m3 = a11 * (a22 * a33 - a23 * a23) - a12 * (a12 * a33 - a13 * a23) +
                a13 * (a12 * a23 - a13 * a22);
    if (m1 <= 0.0 || m2 <= 0.0 || m3 <= 0.0)
        throw std::domain_error("check_causal: spatial block not positive definite");
}

namespace {

StationaryTriple triple_flat() {
    StationaryTriple t;
    t.g = [](int i, int j, const V3&) { return i == j ? 1.0 : 0.0; };
    t.X = [](int, const V3&) { return 0.0; };
    t.N = [](const V3&) { return 1.0; };
    return t;
}

ProjectionTriple projection_flat() {
    ProjectionTriple p;
    p.u = [](const V3&) { return 1.0; };
    p.theta = [](int, const V3&) { return 0.0; };
    p.g_S = [](int i, int j, const V3&) { return i == j ? 1.0 : 0.0; };
    return p;
}

// Shared scalars of the rotating fixture in quasi-isotropic coordinates.
struct KerrVals {
    double rho, r, Sigma, alpha, beta, c, qq, u2;
};

KerrVals kerr_vals(double m, double a, const V3& x) {
    KerrVals v;
    v.rho = norm3(x);
    v.r = v.rho + m + (m * m - a * a) / (4.0 * v.rho);
    v.Sigma = v.r * v.r + a * a * x[2] * x[2] / (v.rho * v.rho);
    v.alpha = v.Sigma / (v.rho * v.rho);
    v.beta = a * a * (v.Sigma + 2.0 * m * v.r) / (v.Sigma * std::pow(v.rho, 4));
    v.c = -2.0 * m * a * v.r / (v.Sigma * v.rho * v.rho);
    v.qq = x[0] * x[0] + x[1] * x[1];
    v.u2 = 1.0 - 2.0 * m * v.r / v.Sigma;
    return v;
}

double kerr_q(const V3& x, int i) {
    if (i == 0) return -x[1];
    if (i == 1) return x[0];
    return 0.0;
}

}  // namespace

Fixture fixture_minkowski_exterior() {
    Fixture f;
    f.name = "minkowski";
    f.metric = Metric4::minkowski();
    f.triple = triple_flat();
    f.projection = projection_flat();
    f.excluded_radius = 0.0;
    return f;
}

Fixture fixture_schwarzschild(double m) {
    if (m <= 0.0) throw std::invalid_argument("fixture_schwarzschild: m must be positive");
    Fixture f;
    f.name = "schwarzschild";
    auto psi = [m](const V3& x) { return 1.0 + m / (2.0 * norm3(x)); };
    auto lapse = [m, psi](const V3& x) {
        return (1.0 - m / (2.0 * norm3(x))) / psi(x);
    };

    f.triple.g = [psi](int i, int j, const V3& x) {
        return i == j ? std::pow(psi(x), 4) : 0.0;
    };
    f.triple.X = [](int, const V3&) { return 0.0; };
    f.triple.N = lapse;

    f.projection.u = lapse;
    f.projection.theta = [](int, const V3&) { return 0.0; };
    f.projection.g_S = f.triple.g;

    f.metric = assemble_adm(f.triple);
    f.excluded_radius = m / 2.0;
    return f;
}

Fixture fixture_kerr(double m, double a) {
    if (m <= 0.0 || std::abs(a) >= m)
        throw std::invalid_argument("fixture_kerr: need 0 < |a| < m (use the static fixture for a = 0)");
    Fixture f;
    f.name = "kerr";

    f.triple.g = [m, a](int i, int j, const V3& x) {
        KerrVals v = kerr_vals(m, a, x);
        double d = i == j ? v.alpha : 0.0;
        return d + v.beta * kerr_q(x, i) * kerr_q(x, j);
    };
    f.triple.X = [m, a](int i, const V3& x) {
        KerrVals v = kerr_vals(m, a, x);
        return v.c * kerr_q(x, i) / (v.alpha + v.beta * v.qq);
    };
    f.triple.N = [m, a](const V3& x) {
        KerrVals v = kerr_vals(m, a, x);
        double n2 = v.u2 + v.c * v.c * v.qq / (v.alpha + v.beta * v.qq);
        return std::sqrt(n2);
    };

    f.projection.u = [m, a](const V3& x) {
        return std::sqrt(kerr_vals(m, a, x).u2);
    };
    // theta_i = g0i / g00 with g00 = -u^2 and g0i = c q_i.
    f.projection.theta = [m, a](int i, const V3& x) {
        KerrVals v = kerr_vals(m, a, x);
        return -v.c * kerr_q(x, i) / v.u2;
    };
    f.projection.g_S = [m, a](int i, int j, const V3& x) {
        KerrVals v = kerr_vals(m, a, x);
        double gij = (i == j ? v.alpha : 0.0) + v.beta * kerr_q(x, i) * kerr_q(x, j);
        return gij + v.c * v.c * kerr_q(x, i) * kerr_q(x, j) / v.u2;
    };

    f.metric = assemble_adm(f.triple);
    f.excluded_radius = (m + std::abs(a)) / 2.0;
    return f;
}

namespace {

std::vector<V3> sphere_directions(int n, std::uint64_t seed, std::vector<double>* radii,
                                  double r_min, double r_max) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<V3> out;
    out.reserve(n);
    while (int(out.size()) < n) {
        V3 d{gauss(rng), gauss(rng), gauss(rng)};
        double nd = norm3(d);
        if (nd < 1e-8) continue;
        double r = radii ? r_min + (r_max - r_min) * u01(rng) : 1.0;
        out.push_back({d[0] / nd * r, d[1] / nd * r, d[2] / nd * r});
        if (radii) radii->push_back(r);
    }
    return out;
}

}  // namespace

std::vector<V3> probe_points(int n, std::uint64_t seed, double r_min, double r_max) {
    std::vector<double> radii;
    return sphere_directions(n, seed, &radii, r_min, r_max);
}

std::vector<V3> boundary_points(int n, std::uint64_t seed) {
    return sphere_directions(n, seed, nullptr, 1.0, 1.0);
}

}  // namespace bbvp
