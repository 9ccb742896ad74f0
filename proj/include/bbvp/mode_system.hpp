#pragma once

#include <array>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include <bbvp/solid_harmonics.hpp>

namespace bbvp {

// Spectral form of the linearized, gauged boundary value problem at the
// flat exterior background.  Unknown scalars (all componentwise harmonic,
// expanded in decaying solid harmonics): six Cartesian metric deformation
// components, three shift-like vector components, the lapse-like scalar v,
// and the boundary-coupled harmonic scalar G.  Conditions per mode: three
// induced-metric projections, the linearized mean curvature, the linearized
// momentum trace with +2G coupling, two tangential momentum projections
// with tangential-gradient G coupling, and four gauge rows.
inline constexpr int kNumComponents = 11;
inline constexpr int kNumConditions = 11;
inline constexpr int kNumDataFamilies = 7;

extern const std::array<const char*, kNumComponents> kComponentNames;
extern const std::array<const char*, kNumConditions> kConditionNames;

using Rotation3 = std::array<V3, 3>;

struct SphereQuadrature {
    std::vector<V3> nodes;        // unit vectors
    std::vector<double> weights;  // sum to 4 pi
};

// Gauss-Legendre in the polar cosine times uniform azimuth.
SphereQuadrature sphere_quadrature(int n_polar, int n_azimuth);

// Pointwise values of the eleven condition fields generated by a unit
// coefficient of `component` carrying basis element b, at unit vector n.
std::array<double, kNumConditions> condition_fields(int component,
                                                    const HarmonicBasisElem& b,
                                                    const V3& n);

struct ModeSystem {
    int L = 0;
    Eigen::MatrixXd matrix;  // square, rows condition-major, columns component-major
    Eigen::VectorXd rhs;     // zero unless loaded with boundary data
    std::vector<std::pair<int, int>> modes;

    int mode_count() const { return static_cast<int>(modes.size()); }
    int size() const { return kNumComponents * mode_count(); }
    int row(int condition, int mode) const { return condition * mode_count() + mode; }
    int col(int component, int mode) const { return component * mode_count() + mode; }
};

// Boundary and gauge rows over decaying harmonics through degree L (L >= 2);
// the interior equations hold identically for the harmonic ansatz.  The
// quadrature is exact for every assembled integrand, so a rigid rotation of
// the grid reproduces the matrix to machine precision.  Parallel and serial
// assembly are bitwise identical.
ModeSystem assemble(int L);
ModeSystem assemble(int L, const Rotation3& grid_rotation);
ModeSystem assemble_serial(int L);

struct SolveReport {
    double sigma_min = 0.0;
    double sigma_max = 0.0;
    double effective_sigma_min = 0.0;    // smallest singular value above the kernel cut
    int kernel_dim = 0;                  // count of sigma < 1e-10 sigma_max
    double interior_residual = 0.0;
    double boundary_residual = 0.0;
    double gauge_residual = 0.0;
    std::vector<double> bottom_sigmas;   // ten smallest, descending
    std::vector<double> decay_exponents; // per component, 0 when absent
};

SolveReport kernel_check(int L);
SolveReport kernel_check(const ModeSystem& sys);

// Orthonormal kernel basis (columns), threshold 1e-10 sigma_max.
Eigen::MatrixXd kernel_basis(const ModeSystem& sys);

// Count of kernel directions at L that the refined system at L+2 still
// annihilates (threshold 1e-9 of its sigma_max).
int persistent_kernel_dim(int L);

// Ten closed-form continuum kernel directions as coefficient columns: four
// pairs (Y, G) = (grad S, -(l+1)(l+2)/2 S) over S in {S_00, S_1m}, three
// pairs h = 2 delta*(b/r) for unit translations b, and three pairs
// h = 2 delta*((a x x)/r^3) for unit rotation generators a.
Eigen::MatrixXd kernel_closed_forms(int L);
std::array<const char*, 10> kernel_closed_form_names();

// Dirichlet problem for four componentwise-harmonic scalars with value rows
// on the unit sphere; the Neumann variant uses radial-derivative rows.
SolveReport harmonic_dirichlet_check(int L, bool neumann = false);

// Spherical-harmonic coefficient arrays of the prescribed linearized
// boundary data (lexicographic mode order, length (lmax+1)^2 each).
struct BoundaryCoefficients {
    int lmax = 0;
    std::array<std::vector<double>, 3> gamma_prime;
    std::vector<double> H_prime;
    std::vector<double> k_prime;
    std::array<std::vector<double>, 2> tau_prime;

    void validate() const;  // throws std::invalid_argument on shape errors
};

// Synthesized data-family values at a unit vector n, order
// gamma1, gamma2, gamma3, H, k, tau1, tau2.
std::array<double, kNumDataFamilies> data_fields(const BoundaryCoefficients& data,
                                                 const V3& n);

struct LinearizedUnknowns {
    int L = 0;
    std::vector<std::pair<int, int>> modes;
    Eigen::VectorXd coefficients;  // component-major

    double coefficient(int component, int l, int m) const;
    double component_value(int component, const V3& x) const;
    V3 component_gradient(int component, const V3& x) const;
    double component_laplacian(int component, const V3& x) const;
};

// Gauge fields of a solution at an exterior point:
// [0] = -div Y, [1..3] = (-div h + d(tr h + 2 v)/2)_i.
std::array<double, 4> gauge_fields(const LinearizedUnknowns& u, const V3& x);

struct SolveResult {
    LinearizedUnknowns unknowns;
    SolveReport report;
};

class IllPosedTruncation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Min-norm least-squares solve for prescribed data in the seven data
// families; the gauge rows stay homogeneous.  Requires lmax <= L - 2
// (headroom for the degree coupling of the rows).  Aborts with
// IllPosedTruncation when the smallest non-kernel singular value falls
// below abort_threshold * sigma_max.  probe_seed drives the off-grid
// residual probes recorded in the report.
SolveResult solve(const BoundaryCoefficients& data, int L,
                  unsigned probe_seed = 20260825, double abort_threshold = 1e-6);

// Deterministic in-range sample data: a gauge-compatible generator supported
// at degree <= 2, deflated against the truncation-artifact kernel directions
// of the systems at L = 6 and L = 8, emitted as degree-4 data arrays with
// peak coefficient 1e-3.
BoundaryCoefficients sample_perturbation(unsigned seed);

} // namespace bbvp
