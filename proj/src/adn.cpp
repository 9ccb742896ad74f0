#include "bbvp/adn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>

namespace bbvp {

namespace {

constexpr double kRootResidualTol = 1e-12;
constexpr double kRelTol = 1e-8;

using Mat8c = Eigen::Matrix<std::complex<double>, 8, 8>;

std::array<std::complex<double>, kNumVars> eval_point(
    const CoefficientSample& s, std::complex<double> z_conormal) {
    std::array<std::complex<double>, kNumVars> x{};
    x[static_cast<int>(Var::xi1)] = z_conormal;
    x[static_cast<int>(Var::xi2)] = s.eta[0];
    x[static_cast<int>(Var::xi3)] = s.eta[1];
    x[static_cast<int>(Var::N)] = s.N;
    x[static_cast<int>(Var::X1)] = s.X[0];
    x[static_cast<int>(Var::X2)] = s.X[1];
    x[static_cast<int>(Var::X3)] = s.X[2];
    return x;
}

Mat8c tilde_at(const AdnContext& ctx,
               const std::array<std::complex<double>, kNumVars>& x) {
    Mat8c m;
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) m(i, j) = ctx.tilde.at(i, j).eval(x);
    return m;
}

template <typename F>
double sweep_max(int n, bool parallel, const F& f) {
    double worst = 0.0;
    if (parallel) {
#pragma omp parallel for reduction(max : worst) schedule(static)
        for (int i = 0; i < n; ++i) worst = std::max(worst, f(i));
    } else {
        for (int i = 0; i < n; ++i) worst = std::max(worst, f(i));
    }
    return worst;
}

}  // namespace

bool admissible(const CoefficientSample& s) {
    double xx = s.X[0] * s.X[0] + s.X[1] * s.X[1] + s.X[2] * s.X[2];
    double ee = s.eta[0] * s.eta[0] + s.eta[1] * s.eta[1];
    return s.N > 0 && xx < s.N * s.N && ee > 0;
}

RootPair interior_roots(const CoefficientSample& s) {
    if (!admissible(s))
        throw std::invalid_argument("interior_roots: inadmissible coefficients");
    const double n2 = s.N * s.N;
    const double w = s.eta[0] * s.X[1] + s.eta[1] * s.X[2];
    const double a = 1.0 - s.X[0] * s.X[0] / n2;
    const double b = -2.0 * s.X[0] * w / n2;
    const double c =
        s.eta[0] * s.eta[0] + s.eta[1] * s.eta[1] - w * w / n2;
    const double disc = b * b - 4.0 * a * c;
    if (disc >= 0)
        throw std::logic_error("interior quadratic has real roots");
    const double im = std::sqrt(-disc) / (2.0 * a);
    const double re = -b / (2.0 * a);
    return {{re, im}, {re, -im}};
}

CoefficientSample sample_coefficients(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    CoefficientSample s;
    s.N = 0.5 + 1.5 * u01(rng);
    double gx = gauss(rng), gy = gauss(rng), gz = gauss(rng);
    double gn = std::sqrt(gx * gx + gy * gy + gz * gz);
    double r = 0.95 * s.N * std::cbrt(u01(rng));
    if (gn > 0) s.X = {r * gx / gn, r * gy / gn, r * gz / gn};
    double phi = 2.0 * M_PI * u01(rng);
    double mag = std::pow(10.0, -1.0 + 2.0 * u01(rng));
    s.eta = {mag * std::cos(phi), mag * std::sin(phi)};
    return s;
}

std::vector<CoefficientSample> sample_batch(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<CoefficientSample> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) out.push_back(sample_coefficients(rng));
    return out;
}

AdnContext::AdnContext() {
    BoundarySymbol b = build_boundary_symbol();
    tilde = b.tilde;
    det_tilde = det_minor_expansion(tilde);
}

const AdnContext& adn_context() {
    static const AdnContext ctx;
    return ctx;
}

double root_residual(const CoefficientSample& s) {
    RootPair rp = interior_roots(s);
    if (!(rp.z_plus.imag() > 0))
        return std::numeric_limits<double>::infinity();
    if (rp.z_minus != std::conj(rp.z_plus))
        return std::numeric_limits<double>::infinity();
    const double n2 = s.N * s.N;
    const double w = s.eta[0] * s.X[1] + s.eta[1] * s.X[2];
    std::complex<double> z = rp.z_plus;
    std::complex<double> sz = z * s.X[0] + w;
    std::complex<double> a =
        z * z + s.eta[0] * s.eta[0] + s.eta[1] * s.eta[1] - sz * sz / n2;
    return std::abs(a);
}

double complementing_error(const AdnContext& ctx, const CoefficientSample& s) {
    RootPair rp = interior_roots(s);
    Mat8c m = tilde_at(ctx, eval_point(s, rp.z_plus));
    std::complex<double> det = m.determinant();
    if (!(std::abs(det) > 0)) return std::numeric_limits<double>::infinity();
    const double eta2 = s.eta[0] * s.eta[0] + s.eta[1] * s.eta[1];
    const std::complex<double> expected =
        -std::pow(eta2, 4) / (4.0 * std::pow(s.N, 3));
    return std::abs(det - expected) / std::abs(expected);
}

double homogeneity_error(const AdnContext& ctx, const CoefficientSample& s,
                         double lambda) {
    RootPair rp = interior_roots(s);
    auto x = eval_point(s, rp.z_plus);
    std::complex<double> det = tilde_at(ctx, x).determinant();
    auto xs = x;
    for (Var v : {Var::xi1, Var::xi2, Var::xi3})
        xs[static_cast<int>(v)] *= lambda;
    std::complex<double> det_scaled = tilde_at(ctx, xs).determinant();
    std::complex<double> expected = std::pow(lambda, 8) * det;
    return std::abs(det_scaled - expected) / std::abs(expected);
}

double numeric_vs_symbolic_error(const AdnContext& ctx,
                                 const CoefficientSample& s) {
    RootPair rp = interior_roots(s);
    auto x = eval_point(s, rp.z_plus);
    std::complex<double> lu = tilde_at(ctx, x).determinant();
    std::complex<double> sym = ctx.det_tilde.eval(x);
    return std::abs(lu - sym) / std::abs(sym);
}

CheckResult proper_ellipticity_check(int nsamples, std::uint64_t seed,
                                     bool parallel) {
    auto samples = sample_batch(nsamples, seed);
    double worst = sweep_max(nsamples, parallel, [&](int i) {
        return root_residual(samples[i]);
    });
    return {"proper_ellipticity", nsamples, worst, worst < kRootResidualTol};
}

CheckResult complementing_check_numeric(int nsamples, std::uint64_t seed,
                                        bool parallel) {
    const AdnContext& ctx = adn_context();
    auto samples = sample_batch(nsamples, seed);
    double worst = sweep_max(nsamples, parallel, [&](int i) {
        return complementing_error(ctx, samples[i]);
    });
    return {"complementing_root_value", nsamples, worst, worst < kRelTol};
}

CheckResult homogeneity_check(int nsamples, std::uint64_t seed,
                              bool parallel) {
    const AdnContext& ctx = adn_context();
    auto samples = sample_batch(nsamples, seed);
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::vector<double> lambdas(nsamples);
    for (double& l : lambdas) l = 0.5 + 1.5 * u01(rng);
    double worst = sweep_max(nsamples, parallel, [&](int i) {
        return homogeneity_error(ctx, samples[i], lambdas[i]);
    });
    return {"determinant_homogeneity_degree_8", nsamples, worst,
            worst < kRelTol};
}

CheckResult numeric_vs_symbolic_check(int nsamples, std::uint64_t seed,
                                      bool parallel) {
    const AdnContext& ctx = adn_context();
    auto samples = sample_batch(nsamples, seed);
    double worst = sweep_max(nsamples, parallel, [&](int i) {
        return numeric_vs_symbolic_error(ctx, samples[i]);
    });
    return {"lu_vs_expanded_determinant", nsamples, worst, worst < kRelTol};
}

SymbolicCertificate complementing_check_symbolic() {
    BoundarySymbol b = build_boundary_symbol();
    ReduceResult r = reduce_to_bhat(b);
    SymbolicCertificate c;
    c.certificate = half_plane_certificate(r.det_bhat);
    c.z_free = !c.certificate.num().depends_on(Var::z) &&
               !c.certificate.den().depends_on(Var::z);
    c.shift_free = true;
    for (Var v : {Var::X1, Var::X2, Var::X3})
        c.shift_free = c.shift_free && !c.certificate.num().depends_on(v) &&
                       !c.certificate.den().depends_on(v);
    Poly eta2 = Poly::variable(Var::xi2, 2) + Poly::variable(Var::xi3, 2);
    c.matches_closed_form =
        c.certificate ==
        RationalExpr(Poly::constant(8) * Poly::variable(Var::N, 8) * eta2.pow(4));
    return c;
}

}  // namespace bbvp
