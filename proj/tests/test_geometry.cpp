#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <stdexcept>

#include "bbvp/boundary_data.hpp"
#include "bbvp/curvature.hpp"
#include "bbvp/fd.hpp"
#include "bbvp/metric.hpp"

using namespace bbvp;

namespace {

double max_abs_ricci(const Metric4& g, const V3& x, const FdEngine& fd) {
    Mat4 R = curvature(g, x, fd).Ric;
    double m = 0.0;
    for (const auto& row : R)
        for (double v : row) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace

TEST_CASE("differencing engine reproduces analytic derivatives") {
    FdEngine fd;
    ScalarFn f = [](const V3& x) {
        return std::sin(x[0]) * std::exp(0.3 * x[1]) + x[2] * x[2] * x[0];
    };
    V3 x{0.7, -0.4, 1.3};
    double e1 = std::cos(0.7) * std::exp(-0.12);
    CHECK(std::abs(fd.d1(f, x, 0) - (e1 + 1.69)) < 1e-10);
    CHECK(std::abs(fd.d1(f, x, 1) - 0.3 * std::sin(0.7) * std::exp(-0.12)) < 1e-10);
    CHECK(std::abs(fd.d1(f, x, 2) - 2.0 * 1.3 * 0.7) < 1e-10);
    CHECK(std::abs(fd.d2(f, x, 0, 0) - (-std::sin(0.7) * std::exp(-0.12))) < 1e-8);
    CHECK(std::abs(fd.d2(f, x, 0, 1) - 0.3 * e1) < 1e-8);
    CHECK(std::abs(fd.d2(f, x, 2, 0) - 2.6) < 1e-8);
}

TEST_CASE("probe batteries are deterministic and in range") {
    auto a = probe_points(20, 42);
    auto b = probe_points(20, 42);
    auto c = probe_points(20, 43);
    REQUIRE(a.size() == 20);
    CHECK(a == b);
    CHECK(a != c);
    for (const V3& x : a) {
        CHECK(norm3(x) >= 1.1);
        CHECK(norm3(x) <= 5.0);
    }
    for (const V3& x : boundary_points(10, 7))
        CHECK(std::abs(norm3(x) - 1.0) < 1e-14);
}

TEST_CASE("flat spacetime has vanishing curvature and unit-sphere data") {
    FdEngine fd;
    Fixture flat = fixture_minkowski_exterior();
    for (const V3& x : probe_points(5, 1))
        CHECK(max_abs_ricci(flat.metric, x, fd) < 1e-11);
    for (const V3& x : boundary_points(5, 2)) {
        BartnikData bd = bartnik_data(flat.metric, x, fd);
        CHECK(std::abs(bd.H - 2.0) < 1e-9);
        CHECK(std::abs(bd.k) < 1e-12);
        CHECK(norm3(bd.tau) < 1e-12);
        for (int i = 0; i < 3; ++i) CHECK(std::abs(bd.n_up[i] - x[i]) < 1e-9);
    }
}

TEST_CASE("static fixture: closed-form spot values") {
    FdEngine fd;
    Fixture sch = fixture_schwarzschild(1.0);

    BartnikData bd = bartnik_data(sch.metric, {2.0, 0.0, 0.0}, fd);
    CHECK(std::abs(bd.H - 48.0 / 125.0) < 1e-9);
    CHECK(std::abs(bd.k) < 1e-12);
    CHECK(norm3(bd.tau) < 1e-12);

    // Gamma^i_00 = m(1 - m/(2 rho)) / (rho^2 (1 + m/(2 rho))^7) x^i / rho.
    V3 P{1.2, 0.0, 0.9};
    Jet4 J = jet4(sch.metric, P, fd, true);
    double coef = 81.0 / 2048.0;
    CHECK(std::abs(J.G[1][0][0] - coef * 0.8) < 1e-10);
    CHECK(std::abs(J.G[2][0][0]) < 1e-12);
    CHECK(std::abs(J.G[3][0][0] - coef * 0.6) < 1e-10);
    CHECK(std::abs(J.G[0][0][0]) < 1e-12);

    for (const V3& x : probe_points(5, 3))
        CHECK(max_abs_ricci(sch.metric, x, fd) < 1e-7);
}

TEST_CASE("rotating fixture: frozen spot values") {
    FdEngine fd;
    Fixture kerr = fixture_kerr(1.0, 0.5);
    V3 E{2.0, 0.0, 0.0};

    CHECK(kerr.metric(0, 2, E) == doctest::Approx(-16.0 / 99.0).epsilon(1e-14));
    CHECK(kerr.triple.N(E) ==
          doctest::Approx(0.603325084901887387147298722522).epsilon(1e-14));
    CHECK(kerr.projection.u(E) ==
          doctest::Approx(std::sqrt(35.0 / 99.0)).epsilon(1e-14));
    CHECK(kerr.projection.theta(1, E) ==
          doctest::Approx(16.0 / 35.0).epsilon(1e-14));
    CHECK(kerr.projection.theta(0, E) == 0.0);
    CHECK(kerr.projection.theta(2, E) == 0.0);

    BartnikData bd = bartnik_data(kerr.metric, E, fd);
    CHECK(bd.H == doctest::Approx(0.388502621104332443271148673397).epsilon(1e-9));
    CHECK(std::abs(bd.k) < 1e-10);
    CHECK(bd.tau[1] ==
          doctest::Approx(-0.0773949159973301447935094605481).epsilon(1e-9));
    CHECK(std::abs(bd.tau[0]) < 1e-10);
    CHECK(std::abs(bd.tau[2]) < 1e-10);

    V3 P{1.2, 0.0, 0.9};
    BartnikData bp = bartnik_data(kerr.metric, P, fd);
    CHECK(bp.H == doctest::Approx(0.382243662326564800587844592204).epsilon(1e-9));
    CHECK(bp.tau[1] ==
          doctest::Approx(-0.111273545316232486368360080397).epsilon(1e-9));
}

TEST_CASE("rotating fixture is Ricci flat") {
    FdEngine fd;
    Fixture kerr = fixture_kerr(1.0, 0.5);
    std::vector<V3> pts = {{1.1, 0.0, 0.0},  {0.0, 1.5, 0.5}, {1.0, 1.0, 1.0},
                           {-1.25, 1.0 / 3.0, 0.875}, {2.0, 0.0, 0.0},
                           {0.0, 0.0, 2.0}};
    auto probes = probe_points(20, 20260825, 1.2, 5.0);
    pts.insert(pts.end(), probes.begin(), probes.end());
    for (const V3& x : pts) CHECK(max_abs_ricci(kerr.metric, x, fd) < 1e-6);
}

TEST_CASE("rotating fixture degenerates to the static one as a -> 0") {
    Fixture kerr = fixture_kerr(1.0, 1e-8);
    Fixture sch = fixture_schwarzschild(1.0);
    for (const V3& x : probe_points(5, 9)) {
        for (int mu = 0; mu < 4; ++mu)
            for (int nu = mu; nu < 4; ++nu)
                CHECK(std::abs(kerr.metric(mu, nu, x) - sch.metric(mu, nu, x)) < 1e-7);
    }
    CHECK_THROWS_AS(fixture_kerr(1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(fixture_kerr(-1.0, 0.1), std::invalid_argument);
}

TEST_CASE("both assembly routes produce the same spacetime metric") {
    Fixture kerr = fixture_kerr(1.0, 0.5);
    Metric4 via_adm = assemble_adm(kerr.triple);
    Metric4 via_proj = assemble_projection(kerr.projection);
    for (const V3& x : probe_points(8, 11)) {
        for (int mu = 0; mu < 4; ++mu)
            for (int nu = mu; nu < 4; ++nu) {
                double a = via_adm(mu, nu, x);
                double b = via_proj(mu, nu, x);
                CHECK(std::abs(a - b) < 1e-12 * (1.0 + std::abs(a)));
            }
    }
}

TEST_CASE("causality guard accepts the exterior and rejects the ergoregion") {
    Fixture kerr = fixture_kerr(1.0, 0.5);
    CHECK_NOTHROW(check_causal(kerr.metric, {2.0, 0.0, 0.0}));
    CHECK_NOTHROW(check_causal(kerr.metric, {0.0, 0.0, 1.1}));
    CHECK_THROWS_AS(check_causal(kerr.metric, {0.7, 0.0, 0.0}),
                    std::domain_error);
}

TEST_CASE("flat gauge split of a packed deformation") {
    // Packing: h4_00 = -2v, h4_0i = Y_i, h4_ij = h_ij.  The constraint
    // operator then splits exactly into (-div Y, -div h + d(tr h + 2v)/2).
    FdEngine fd;
    Metric4 flat = Metric4::minkowski();
    std::mt19937_64 rng(314159);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    auto pts = probe_points(20, 77);

    double worst = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
        // Smooth decaying component fields with seeded quadratic prefactors.
        std::array<std::array<double, 10>, 10> c{};
        for (auto& row : c)
            for (double& v : row) v = coef(rng);
        auto comp = [&c](int slot, const V3& x) {
            const auto& a = c[slot];
            double q = a[0] + a[1] * x[0] + a[2] * x[1] + a[3] * x[2] +
                       a[4] * x[0] * x[1] + a[5] * x[1] * x[2] +
                       a[6] * x[0] * x[2] + a[7] * x[0] * x[0] +
                       a[8] * x[1] * x[1] + a[9] * x[2] * x[2];
            return q * std::exp(-dot3(x, x) / 8.0);
        };
        // Slots 0..5: h components (11,12,13,22,23,33); 6..8: Y; 9: v.
        auto hsym = [&comp](int i, int j, const V3& x) {
            static const int idx[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};
            return comp(idx[i][j], x);
        };
        Tensor4Fn h4 = [&](int mu, int nu, const V3& x) {
            if (mu > nu) std::swap(mu, nu);
            if (mu == 0 && nu == 0) return -2.0 * comp(9, x);
            if (mu == 0) return comp(5 + nu, x);
            return hsym(mu - 1, nu - 1, x);
        };

        const V3& x = pts[rep];
        Vec4 beta = bianchi(flat, h4, x, fd);

        double dY[3][3], dh[3][6], dv[3];
        for (int k = 0; k < 3; ++k) {
            for (int a = 0; a < 3; ++a)
                dY[k][a] = fd.d1([&](const V3& y) { return comp(6 + a, y); }, x, k);
            for (int s = 0; s < 6; ++s)
                dh[k][s] = fd.d1([&](const V3& y) { return comp(s, y); }, x, k);
            dv[k] = fd.d1([&](const V3& y) { return comp(9, y); }, x, k);
        }
        double expect0 = -(dY[0][0] + dY[1][1] + dY[2][2]);
        worst = std::max(worst, std::abs(beta[0] - expect0));
        static const int idx[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};
        for (int i = 0; i < 3; ++i) {
            double divh = 0.0;
            for (int j = 0; j < 3; ++j) divh += dh[j][idx[j][i]];
            double dtr = dh[i][0] + dh[i][3] + dh[i][5] + 2.0 * dv[i];
            worst = std::max(worst, std::abs(beta[i + 1] - (-divh + 0.5 * dtr)));
        }
    }
    CHECK(worst < 1e-8);
}
