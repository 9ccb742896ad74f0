#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "bbvp/mode_system.hpp"
#include "bbvp/solid_harmonics.hpp"

using namespace bbvp;

namespace {

const double kPi = std::acos(-1.0);

Rotation3 rot_x(double a) {
    const double c = std::cos(a), s = std::sin(a);
    return {{{1, 0, 0}, {0, c, -s}, {0, s, c}}};
}
Rotation3 rot_y(double a) {
    const double c = std::cos(a), s = std::sin(a);
    return {{{c, 0, s}, {0, 1, 0}, {-s, 0, c}}};
}
Rotation3 rot_z(double a) {
    const double c = std::cos(a), s = std::sin(a);
    return {{{c, -s, 0}, {s, c, 0}, {0, 0, 1}}};
}
Rotation3 mul(const Rotation3& A, const Rotation3& B) {
    Rotation3 C{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) C[i][j] += A[i][k] * B[k][j];
    return C;
}
V3 rot_apply(const Rotation3& R, const V3& x) {
    V3 y{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) y[i] += R[i][j] * x[j];
    return y;
}
Rotation3 rot_transpose(const Rotation3& R) {
    Rotation3 T{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) T[i][j] = R[j][i];
    return T;
}

int component_index(const char* name) {
    for (int i = 0; i < kNumComponents; ++i)
        if (std::string(kComponentNames[i]) == name) return i;
    return -1;
}
int condition_index(const char* name) {
    for (int i = 0; i < kNumConditions; ++i)
        if (std::string(kConditionNames[i]) == name) return i;
    return -1;
}

} // namespace

TEST_CASE("solid harmonic jets match frozen reference values") {
    const V3 x = {1.2, -0.3, 0.9};

    const HarmonicBasisElem s21(2, 1);
    HarmonicJet j = s21.jet(x);
    CHECK(j.val == doctest::Approx(1.4087204185339058e-01).epsilon(1e-13));
    CHECK(j.grad[0] == doctest::Approx(-2.4381699551548369e-01).epsilon(1e-13));
    CHECK(j.grad[1] == doctest::Approx(9.0302590931660626e-02).epsilon(1e-13));
    CHECK(j.grad[2] == doctest::Approx(-1.1438328184677012e-01).epsilon(1e-13));
    CHECK(j.hess[0][0] == doctest::Approx(3.9362667842005911e-01).epsilon(1e-13));
    CHECK(j.hess[1][1] == doctest::Approx(-2.1996784970532715e-01).epsilon(1e-13));
    CHECK(j.hess[2][2] == doctest::Approx(-1.7365882871473196e-01).epsilon(1e-13));
    CHECK(j.hess[0][1] == doctest::Approx(-2.4891098782444915e-01).epsilon(1e-13));

    const HarmonicBasisElem s3m2(3, -2);
    j = s3m2.jet(x);
    CHECK(j.val == doctest::Approx(-4.7783639669994098e-02).epsilon(1e-13));
    CHECK(j.grad[0] == doctest::Approx(1.3171131447498374e-01).epsilon(1e-13));
    CHECK(j.grad[1] == doctest::Approx(1.1639604534998563e-01).epsilon(1e-13));
    CHECK(j.grad[2] == doctest::Approx(7.5555327683324000e-02).epsilon(1e-13));
    CHECK(j.hess[0][0] == doctest::Approx(-3.6285406849995522e-01).epsilon(1e-13));
    CHECK(j.hess[1][1] == doctest::Approx(3.7934743524995318e-01).epsilon(1e-13));
    CHECK(j.hess[2][2] == doctest::Approx(-1.6493366749997962e-02).epsilon(1e-13));
    CHECK(j.hess[0][1] == doctest::Approx(-2.7685294187496579e-01).epsilon(1e-13));

    const HarmonicBasisElem s00(0, 0);
    const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    CHECK(s00.value(x) == doctest::Approx(1.0 / (std::sqrt(4.0 * kPi) * r)).epsilon(1e-14));
}

TEST_CASE("solid harmonic constructor and domain guards") {
    CHECK_THROWS_AS(HarmonicBasisElem(-1, 0), std::invalid_argument);
    CHECK_THROWS_AS(HarmonicBasisElem(2, 3), std::invalid_argument);
    CHECK_THROWS_AS(HarmonicBasisElem(31, 0), std::invalid_argument);
    const HarmonicBasisElem b(2, 0);
    CHECK_THROWS_AS(b.jet({0.3, 0.2, 0.1}), std::domain_error);
    CHECK_NOTHROW(b.jet({1.0, 0.0, 0.0}));
}

TEST_CASE("restrictions to the unit sphere are orthonormal") {
    const int L = 3;
    const auto modes = harmonic_modes(L);
    SphereQuadrature q = sphere_quadrature(2 * L + 6, 4 * L + 12);
    double wsum = 0.0;
    for (double w : q.weights) wsum += w;
    CHECK(wsum == doctest::Approx(4.0 * kPi).epsilon(1e-14));

    std::vector<HarmonicBasisElem> basis;
    for (auto [l, m] : modes) basis.emplace_back(l, m);
    const int nm = static_cast<int>(modes.size());
    double worst = 0.0;
    for (int a = 0; a < nm; ++a)
        for (int b = a; b < nm; ++b) {
            double acc = 0.0;
            for (std::size_t p = 0; p < q.nodes.size(); ++p)
                acc += q.weights[p] * basis[a].value(q.nodes[p]) * basis[b].value(q.nodes[p]);
            worst = std::max(worst, std::abs(acc - (a == b ? 1.0 : 0.0)));
        }
    CHECK(worst < 1e-13);
}

TEST_CASE("jets are harmonic and consistent with finite differences") {
    const V3 pts[3] = {{1.1, 0.3, -0.7}, {-0.8, 0.9, 0.4}, {0.2, -1.4, 0.6}};
    for (int l = 0; l <= 4; ++l)
        for (int m = -l; m <= l; ++m) {
            const HarmonicBasisElem b(l, m);
            for (const V3& x : pts) {
                const HarmonicJet j = b.jet(x);
                CHECK(std::abs(j.hess[0][0] + j.hess[1][1] + j.hess[2][2]) < 1e-12);
                const double h = 1e-5;
                for (int i = 0; i < 3; ++i) {
                    V3 xp = x, xm = x;
                    xp[i] += h;
                    xm[i] -= h;
                    const HarmonicJet jp = b.jet(xp), jm = b.jet(xm);
                    CHECK(std::abs((jp.val - jm.val) / (2 * h) - j.grad[i]) < 1e-8);
                    for (int k = 0; k < 3; ++k)
                        CHECK(std::abs((jp.grad[k] - jm.grad[k]) / (2 * h) - j.hess[i][k]) <
                              1e-7);
                }
            }
        }
}

TEST_CASE("mode enumeration is lexicographic in (l, m)") {
    const auto modes = harmonic_modes(2);
    REQUIRE(modes.size() == 9);
    CHECK(modes[0] == std::pair<int, int>(0, 0));
    CHECK(modes[1] == std::pair<int, int>(1, -1));
    CHECK(modes[3] == std::pair<int, int>(1, 1));
    CHECK(modes[4] == std::pair<int, int>(2, -2));
    CHECK(modes[8] == std::pair<int, int>(2, 2));
}

TEST_CASE("condition fields match frozen reference values") {
    const V3 n = {0.6, 0.0, 0.8};
    auto at = [&](const char* comp, int l, int m, const char* cond) {
        const HarmonicBasisElem b(l, m);
        return condition_fields(component_index(comp), b, n)[condition_index(cond)];
    };
    CHECK(at("h22", 2, 1, "gamma1") == doctest::Approx(-5.2442324668419804e-01).epsilon(1e-13));
    CHECK(at("h22", 2, 1, "gamma3") == doctest::Approx(5.2442324668419804e-01).epsilon(1e-13));
    CHECK(at("h22", 2, 1, "H") == doctest::Approx(-1.3110581167104951e+00).epsilon(1e-13));
    CHECK(at("h22", 2, 1, "gauge_dh1") ==
          doctest::Approx(-3.4961549778946527e-01).epsilon(1e-13));
    CHECK(at("h22", 2, 1, "gauge_dh3") ==
          doctest::Approx(-7.2108196419077231e-01).epsilon(1e-13));
    CHECK(at("h12", 3, -2, "H") == doctest::Approx(-8.3249609548047954e-01).epsilon(1e-13));
    CHECK(at("h12", 3, -2, "gauge_dh1") ==
          doctest::Approx(-1.3874934924674660e+00).epsilon(1e-13));
    CHECK(at("Y1", 2, 0, "k") == doctest::Approx(7.2666216634180614e-01).epsilon(1e-13));
    CHECK(at("Y1", 2, 0, "tau1") == doctest::Approx(4.9655248033356769e-01).epsilon(1e-13));
    CHECK(at("Y1", 2, 0, "gauge_dY") == doctest::Approx(1.2489505983999796e+00).epsilon(1e-13));
    CHECK(at("Y3", 1, 1, "k") == doctest::Approx(2.3452920571340152e-01).epsilon(1e-13));
    CHECK(at("Y3", 1, 1, "tau1") == doctest::Approx(-2.6579976647518849e-01).epsilon(1e-13));
    CHECK(at("Y3", 1, 1, "gauge_dY") == doctest::Approx(7.0358761714020479e-01).epsilon(1e-13));
    CHECK(at("v", 2, 2, "gauge_dh1") == doctest::Approx(6.5552905835524866e-02).epsilon(1e-13));
    CHECK(at("v", 2, 2, "gauge_dh3") ==
          doctest::Approx(-7.8663487002629695e-01).epsilon(1e-13));
    CHECK(at("G", 3, 0, "k") == doctest::Approx(1.1941642642883721e-01).epsilon(1e-13));
    CHECK(at("G", 3, 0, "tau1") == doctest::Approx(-1.1822226216454859e+00).epsilon(1e-13));
    CHECK_THROWS_AS(condition_fields(11, HarmonicBasisElem(0, 0), n), std::invalid_argument);
}

TEST_CASE("assembly shape, zero rows, and degree coupling") {
    CHECK_THROWS_AS(assemble(1), std::invalid_argument);
    CHECK_THROWS_AS(sphere_quadrature(0, 4), std::invalid_argument);

    ModeSystem sys = assemble(3);
    CHECK(sys.size() == 176);
    CHECK(sys.matrix.rows() == 176);
    CHECK(sys.rhs.size() == 176);

    // the degree-0 row of each gauge family is empty: gauge fields are pure
    // gradients, so their sphere restrictions carry no constant part
    int zero_rows = 0;
    for (int r = 0; r < sys.size(); ++r)
        if (sys.matrix.row(r).cwiseAbs().maxCoeff() < 1e-14) {
            ++zero_rows;
            const int fam = r / sys.mode_count();
            CHECK(fam >= 7);
            CHECK(r % sys.mode_count() == 0);
        }
    CHECK(zero_rows == 4);

    ModeSystem sys4 = assemble(4);
    CHECK(sys4.size() == 275);
    const SolveReport rep4 = kernel_check(sys4);

    // degree bandwidth per condition family, entries above 1e-12 sigma_max
    const int expected_bw[kNumConditions] = {4, 4, 2, 2, 1, 2, 2, 1, 1, 1, 1};
    const int nm = sys4.mode_count();
    const double cut = 1e-12 * rep4.sigma_max;
    for (int fi = 0; fi < kNumConditions; ++fi) {
        int bw = 0;
        for (int mi = 0; mi < nm; ++mi)
            for (int ci = 0; ci < kNumComponents; ++ci)
                for (int mj = 0; mj < nm; ++mj)
                    if (std::abs(sys4.matrix(fi * nm + mi, ci * nm + mj)) > cut)
                        bw = std::max(bw, std::abs(sys4.modes[mi].first - sys4.modes[mj].first));
        CHECK(bw == expected_bw[fi]);
    }
}

TEST_CASE("parallel assembly is bitwise identical to the serial reference") {
    ModeSystem a = assemble(3);
    ModeSystem b = assemble_serial(3);
    CHECK((a.matrix - b.matrix).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("matrix is invariant under a rigid rotation of the quadrature grid") {
    const Rotation3 R = mul(rot_z(0.7), rot_y(0.3));
    ModeSystem a = assemble(3);
    ModeSystem b = assemble(3, R);
    CHECK((a.matrix - b.matrix).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("kernel dimensions and spectrum across truncation degrees") {
    const SolveReport r2 = kernel_check(2);
    CHECK(r2.kernel_dim == 26);
    const SolveReport r3 = kernel_check(3);
    CHECK(r3.kernel_dim == 33);
    const SolveReport r4 = kernel_check(4);
    CHECK(r4.kernel_dim == 38);
    CHECK(r4.sigma_max == doctest::Approx(6.352).epsilon(2e-3));
    CHECK(r4.bottom_sigmas.size() == 10);
    for (std::size_t i = 1; i < r4.bottom_sigmas.size(); ++i)
        CHECK(r4.bottom_sigmas[i - 1] >= r4.bottom_sigmas[i]);
    CHECK(r4.effective_sigma_min > 1e-10 * r4.sigma_max);
}

TEST_CASE("fault injection: wiping a condition block is detected") {
    ModeSystem sys = assemble(3);
    const int nm = sys.mode_count();
    sys.matrix.block(3 * nm, 0, nm, sys.size()).setZero();  // mean-curvature rows
    CHECK(kernel_check(sys).kernel_dim == 37);
}

TEST_CASE("ten kernel directions persist under refinement and match closed forms") {
    CHECK(persistent_kernel_dim(3) == 10);

    ModeSystem sys = assemble(4);
    const Eigen::MatrixXd C = kernel_closed_forms(4);
    REQUIRE(C.cols() == 10);
    CHECK((sys.matrix * C).cwiseAbs().maxCoeff() < 1e-12);

    Eigen::BDCSVD<Eigen::MatrixXd> svd(C);
    CHECK(svd.singularValues()(9) > 1e-2 * svd.singularValues()(0));

    // no lapse-scalar content in any closed form
    const int nm = sys.mode_count();
    CHECK(C.block(9 * nm, 0, nm, 10).cwiseAbs().maxCoeff() == 0.0);
    CHECK(kernel_closed_form_names()[0] == std::string("scalar_pair_00"));
}

TEST_CASE("componentwise harmonic Dirichlet and Neumann value problems") {
    const SolveReport d = harmonic_dirichlet_check(6);
    CHECK(d.kernel_dim == 0);
    CHECK(d.sigma_min == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(d.sigma_max == doctest::Approx(1.0).epsilon(1e-12));

    const SolveReport n = harmonic_dirichlet_check(6, true);
    CHECK(n.kernel_dim == 0);
    CHECK(n.sigma_min == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(n.sigma_max == doctest::Approx(7.0).epsilon(1e-12));
}

TEST_CASE("boundary data validation and solve guards") {
    BoundaryCoefficients data;
    data.lmax = 0;
    for (auto& g : data.gamma_prime) g = {0.0};
    data.H_prime = {0.0};
    data.k_prime = {0.0, 0.0};  // wrong length
    for (auto& t : data.tau_prime) t = {0.0};
    CHECK_THROWS_AS(data.validate(), std::invalid_argument);
    data.k_prime = {0.0};
    CHECK_NOTHROW(data.validate());

    BoundaryCoefficients deep;
    deep.lmax = 3;
    for (auto& g : deep.gamma_prime) g.assign(16, 0.0);
    deep.H_prime.assign(16, 0.0);
    deep.k_prime.assign(16, 0.0);
    for (auto& t : deep.tau_prime) t.assign(16, 0.0);
    CHECK_THROWS_AS(solve(deep, 4), std::invalid_argument);  // needs lmax <= L - 2

    CHECK_THROWS_AS(solve(data, 4, 20260825, 1.0), IllPosedTruncation);
}

TEST_CASE("zero data yields the zero minimum-norm solution") {
    BoundaryCoefficients data;
    data.lmax = 0;
    for (auto& g : data.gamma_prime) g = {0.0};
    data.H_prime = {0.0};
    data.k_prime = {0.0};
    for (auto& t : data.tau_prime) t = {0.0};
    const SolveResult res = solve(data, 3);
    CHECK(res.unknowns.coefficients.cwiseAbs().maxCoeff() == 0.0);
    CHECK(res.report.boundary_residual < 1e-15);
    CHECK(res.report.gauge_residual < 1e-15);
}

TEST_CASE("pure mean-curvature data reproduces the radial closed form") {
    const double eps = 1e-3;
    BoundaryCoefficients data;
    data.lmax = 0;
    for (auto& g : data.gamma_prime) g = {0.0};
    data.H_prime = {2.0 * std::sqrt(kPi) * eps};  // constant field value eps
    data.k_prime = {0.0};
    for (auto& t : data.tau_prime) t = {0.0};

    const SolveResult res = solve(data, 4);
    const LinearizedUnknowns& u = res.unknowns;

    // h_ij = -eps (delta_ij / r + (3 x_i x_j - r^2 delta_ij) / r^5), v = eps / (2r)
    const V3 pts[3] = {{1.2, -0.5, 0.9}, {0.3, 1.4, -0.8}, {-1.0, 0.2, 1.1}};
    for (const V3& x : pts) {
        const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
        int hc = 0;
        for (int i = 0; i < 3; ++i)
            for (int j = i; j < 3; ++j) {
                const double dij = i == j ? 1.0 : 0.0;
                const double expect =
                    -eps * (dij / r + (3.0 * x[i] * x[j] - r * r * dij) / std::pow(r, 5));
                CHECK(std::abs(u.component_value(hc, x) - expect) < 1e-13);
                ++hc;
            }
        CHECK(std::abs(u.component_value(9, x) - eps / (2.0 * r)) < 1e-13);
        for (int c = 6; c <= 8; ++c) CHECK(std::abs(u.component_value(c, x)) < 1e-13);
        CHECK(std::abs(u.component_value(10, x)) < 1e-13);
    }
    CHECK(u.coefficient(9, 0, 0) == doctest::Approx(eps * std::sqrt(kPi)).epsilon(1e-11));
    CHECK(res.report.boundary_residual < 1e-13);
    CHECK(res.report.interior_residual < 1e-12);
    CHECK(res.report.gauge_residual < 1e-13);
    CHECK(res.report.decay_exponents[9] == doctest::Approx(-1.0));
    CHECK(res.report.decay_exponents[10] == 0.0);
}

TEST_CASE("solutions transform equivariantly under rotations, modulo the kernel") {
    const int L = 5;
    const Rotation3 R = mul(rot_z(0.7), rot_x(0.4));
    const Rotation3 Rt = rot_transpose(R);

    // generator: boundary-coupled scalar G with degree <= 1 content
    std::mt19937_64 rng(4242);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::array<double, 4> gcoef{};
    for (double& c : gcoef) c = 1e-3 * gauss(rng);

    ModeSystem sys = assemble(L);
    const int nm = sys.mode_count();
    auto data_from_gcoef = [&](const std::array<double, 4>& gc) {
        Eigen::VectorXd c = Eigen::VectorXd::Zero(sys.size());
        for (int i = 0; i < 4; ++i) c(10 * nm + i) = gc[i];
        const Eigen::VectorXd b = sys.matrix * c;
        BoundaryCoefficients d;
        d.lmax = 3;  // degree-1 scalar source couples at most two degrees up
        const int nd = 16;
        auto grab = [&](std::vector<double>& dst, int fi) {
            dst.resize(nd);
            for (int mi = 0; mi < nd; ++mi) dst[mi] = b(fi * nm + mi);
        };
        for (int fi = 0; fi < 3; ++fi) grab(d.gamma_prime[fi], fi);
        grab(d.H_prime, 3);
        grab(d.k_prime, 4);
        grab(d.tau_prime[0], 5);
        grab(d.tau_prime[1], 6);
        double leak = 0.0;
        for (int fi = 0; fi < kNumDataFamilies; ++fi)
            for (int mi = nd; mi < nm; ++mi) leak = std::max(leak, std::abs(b(fi * nm + mi)));
        REQUIRE(leak < 1e-15);
        return d;
    };

    // rotate the scalar generator by resampling its sphere restriction
    SphereQuadrature q = sphere_quadrature(2 * L + 6, 4 * L + 12);
    std::vector<HarmonicBasisElem> basis;
    for (auto [l, m] : harmonic_modes(L)) basis.emplace_back(l, m);
    std::array<double, 4> gcoef_rot{};
    for (int ri = 0; ri < 4; ++ri) {
        double acc = 0.0;
        for (std::size_t p = 0; p < q.nodes.size(); ++p) {
            const V3 y = rot_apply(Rt, q.nodes[p]);
            double val = 0.0;
            for (int i = 0; i < 4; ++i) val += gcoef[i] * basis[i].value(y);
            acc += q.weights[p] * basis[ri].value(q.nodes[p]) * val;
        }
        gcoef_rot[ri] = acc;
    }

    const SolveResult r1 = solve(data_from_gcoef(gcoef), L);
    const SolveResult r2 = solve(data_from_gcoef(gcoef_rot), L);
    CHECK(r1.report.boundary_residual < 1e-12);
    CHECK(r2.report.boundary_residual < 1e-12);

    // rotate the first solution: conjugate tensor components, resample, project
    Eigen::VectorXd xr = Eigen::VectorXd::Zero(sys.size());
    std::vector<std::array<double, kNumComponents>> rotated(q.nodes.size());
    for (std::size_t p = 0; p < q.nodes.size(); ++p) {
        const V3 y = rot_apply(Rt, q.nodes[p]);
        double h[3][3], hr[3][3]{};
        int hc = 0;
        for (int i = 0; i < 3; ++i)
            for (int j = i; j < 3; ++j) {
                h[i][j] = h[j][i] = r1.unknowns.component_value(hc, y);
                ++hc;
            }
        V3 Yv = {r1.unknowns.component_value(6, y), r1.unknowns.component_value(7, y),
                 r1.unknowns.component_value(8, y)};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k)
                    for (int l = 0; l < 3; ++l) hr[i][j] += R[i][k] * R[j][l] * h[k][l];
        const V3 Yr = rot_apply(R, Yv);
        auto& out = rotated[p];
        hc = 0;
        for (int i = 0; i < 3; ++i)
            for (int j = i; j < 3; ++j) out[hc++] = hr[i][j];
        for (int i = 0; i < 3; ++i) out[6 + i] = Yr[i];
        out[9] = r1.unknowns.component_value(9, y);
        out[10] = r1.unknowns.component_value(10, y);
    }
    for (int ci = 0; ci < kNumComponents; ++ci)
        for (int mi = 0; mi < nm; ++mi) {
            double acc = 0.0;
            for (std::size_t p = 0; p < q.nodes.size(); ++p)
                acc += q.weights[p] * basis[mi].value(q.nodes[p]) * rotated[p][ci];
            xr(ci * nm + mi) = acc;
        }

    const Eigen::MatrixXd K = kernel_basis(sys);
    Eigen::VectorXd d = r2.unknowns.coefficients - xr;
    d -= K * (K.transpose() * d);
    CHECK(d.cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("sample perturbation: deterministic, in range, stable under refinement") {
    const BoundaryCoefficients a = sample_perturbation(20260825);
    const BoundaryCoefficients b = sample_perturbation(20260825);
    const BoundaryCoefficients c = sample_perturbation(7);
    CHECK(a.lmax == 4);
    REQUIRE(a.H_prime.size() == 25);
    CHECK(a.H_prime == b.H_prime);
    CHECK(a.gamma_prime[1] == b.gamma_prime[1]);
    CHECK(a.tau_prime[0] == b.tau_prime[0]);
    CHECK(a.H_prime != c.H_prime);

    double peak = 0.0;
    for (const auto* arr : {&a.gamma_prime[0], &a.gamma_prime[1], &a.gamma_prime[2],
                            &a.H_prime, &a.k_prime, &a.tau_prime[0], &a.tau_prime[1]})
        for (double v : *arr) peak = std::max(peak, std::abs(v));
    CHECK(peak == doctest::Approx(1e-3).epsilon(1e-12));

    const SolveResult r6 = solve(a, 6);
    CHECK(r6.report.boundary_residual < 1e-10);
    CHECK(r6.report.interior_residual < 1e-12);
    CHECK(r6.report.gauge_residual < 1e-10);

    const SolveResult r8 = solve(a, 8);
    CHECK(r8.report.boundary_residual < 1e-10);

    const int nm6 = static_cast<int>(r6.unknowns.modes.size());
    const int nm8 = static_cast<int>(r8.unknowns.modes.size());
    double drift = 0.0;
    for (int ci = 0; ci < kNumComponents; ++ci) {
        for (int mi = 0; mi < nm8; ++mi) {
            const double c6 = mi < nm6 ? r6.unknowns.coefficients(ci * nm6 + mi) : 0.0;
            drift = std::max(drift, std::abs(c6 - r8.unknowns.coefficients(ci * nm8 + mi)));
        }
    }
    CHECK(drift < 1e-10);
}
