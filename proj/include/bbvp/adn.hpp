#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "bbvp/boundary_symbol.hpp"

namespace bbvp {

// Frozen coefficients of the boundary symbol at one boundary point:
// lapse N, shift X, tangential frequency eta (the xi2, xi3 slots).
// Admissible means |X| < N.
struct CoefficientSample {
    double N = 1.0;
    std::array<double, 3> X{0.0, 0.0, 0.0};
    std::array<double, 2> eta{1.0, 0.0};
};

bool admissible(const CoefficientSample& s);

// Roots in z of the interior quadratic a(eta + z mu), mu the outward
// conormal. For admissible coefficients they form a conjugate pair with
// Im z_plus > 0.
struct RootPair {
    std::complex<double> z_plus, z_minus;
};
RootPair interior_roots(const CoefficientSample& s);

struct CheckResult {
    std::string name;
    int samples = 0;
    double worst_relative_error = 0.0;
    bool pass = false;
};

// Deterministic sampler: N ~ U[0.5, 2], X uniform in the ball of radius
// 0.95 N, |eta| log-uniform on [0.1, 10] with uniform direction.
CoefficientSample sample_coefficients(std::mt19937_64& rng);
std::vector<CoefficientSample> sample_batch(int n, std::uint64_t seed);

// Shared symbolic data: the reduced boundary block and its expanded
// determinant, built once.
struct AdnContext {
    SymMatrix tilde;
    RationalExpr det_tilde;
    AdnContext();
};
const AdnContext& adn_context();

// Per-sample kernels (serial building blocks of the sweeps below).
// Absolute residual |a(eta + z_plus mu)| at the upper root; infinity when
// the pair is not conjugate with Im z_plus > 0.
double root_residual(const CoefficientSample& s);
// Relative error of the numeric determinant of the reduced block at the
// upper root against the closed form -(|eta|^8) / (4 N^3).
double complementing_error(const AdnContext& ctx, const CoefficientSample& s);
// Relative error of det(lambda xi) against lambda^8 det(xi).
double homogeneity_error(const AdnContext& ctx, const CoefficientSample& s,
                         double lambda);
// Relative difference between the LU determinant and the evaluated
// expanded determinant at the upper root.
double numeric_vs_symbolic_error(const AdnContext& ctx,
                                 const CoefficientSample& s);

// Sweeps; `parallel` toggles the OpenMP variant, the serial one is the
// reference. Both return bitwise-identical worst errors (max reduction).
CheckResult proper_ellipticity_check(int nsamples, std::uint64_t seed,
                                     bool parallel = true);
CheckResult complementing_check_numeric(int nsamples, std::uint64_t seed,
                                        bool parallel = true);
CheckResult homogeneity_check(int nsamples, std::uint64_t seed,
                              bool parallel = true);
CheckResult numeric_vs_symbolic_check(int nsamples, std::uint64_t seed,
                                      bool parallel = true);

// Adjugate-based symbolic argument: the remainder of det modulo the
// interior quadratic must be free of z and of the shift, and equal
// 8 N^8 (xi2^2 + xi3^2)^4.
struct SymbolicCertificate {
    RationalExpr certificate;
    bool z_free = false;
    bool shift_free = false;
    bool matches_closed_form = false;
};
SymbolicCertificate complementing_check_symbolic();

}  // namespace bbvp
