#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "bbvp/adn.hpp"

using namespace bbvp;

TEST_CASE("interior roots form a conjugate pair in the upper half plane") {
    auto samples = sample_batch(50, 20260825);
    for (const auto& s : samples) {
        REQUIRE(admissible(s));
        RootPair rp = interior_roots(s);
        CHECK(rp.z_plus.imag() > 0);
        CHECK(rp.z_minus == std::conj(rp.z_plus));
        CHECK(root_residual(s) < 1e-12);
    }
}

TEST_CASE("zero shift puts the upper root at i|eta|") {
    CoefficientSample s;
    s.N = 1.0;
    s.X = {0.0, 0.0, 0.0};
    s.eta = {1.0, 0.0};
    RootPair rp = interior_roots(s);
    CHECK(rp.z_plus == std::complex<double>(0.0, 1.0));

    s.eta = {3.0, 4.0};
    rp = interior_roots(s);
    CHECK(rp.z_plus.real() == 0.0);
    CHECK(rp.z_plus.imag() == doctest::Approx(5.0).epsilon(1e-15));
}

TEST_CASE("inadmissible coefficients are rejected") {
    CoefficientSample s;
    s.N = 1.0;
    s.X = {1.0, 0.0, 0.0};
    CHECK_THROWS_AS(interior_roots(s), std::invalid_argument);

    s.X = {0.8, 0.7, 0.0};
    CHECK_THROWS_AS(interior_roots(s), std::invalid_argument);

    s.X = {0.0, 0.0, 0.0};
    s.eta = {0.0, 0.0};
    CHECK_THROWS_AS(interior_roots(s), std::invalid_argument);

    s.N = -1.0;
    s.eta = {1.0, 0.0};
    CHECK_THROWS_AS(interior_roots(s), std::invalid_argument);
}

TEST_CASE("proper ellipticity sweep over 200 samples") {
    CheckResult r = proper_ellipticity_check(200, 11);
    CHECK(r.samples == 200);
    CHECK(r.pass);
    CHECK(r.worst_relative_error < 1e-12);
}

TEST_CASE("numeric complementing sweep matches the closed-form root value") {
    CheckResult r = complementing_check_numeric(200, 12);
    CHECK(r.samples == 200);
    CHECK(r.pass);
    CHECK(r.worst_relative_error < 1e-8);
}

TEST_CASE("flat coefficients reproduce the exact root value -1/4") {
    const AdnContext& ctx = adn_context();
    CoefficientSample s;
    s.N = 1.0;
    s.X = {0.0, 0.0, 0.0};
    s.eta = {1.0, 0.0};
    CHECK(complementing_error(ctx, s) < 1e-12);
}

TEST_CASE("determinant is homogeneous of degree 8 in the frequency") {
    CheckResult r = homogeneity_check(50, 13);
    CHECK(r.pass);
    CHECK(r.worst_relative_error < 1e-8);
}

TEST_CASE("LU determinant agrees with the expanded symbolic determinant") {
    CheckResult r = numeric_vs_symbolic_check(50, 14);
    CHECK(r.pass);
    CHECK(r.worst_relative_error < 1e-8);
}

TEST_CASE("symbolic certificate is z-free, shift-free, and matches") {
    SymbolicCertificate c = complementing_check_symbolic();
    CHECK(c.z_free);
    CHECK(c.shift_free);
    CHECK(c.matches_closed_form);
    CHECK(c.certificate.is_poly());
}

TEST_CASE("parallel sweeps reproduce the serial reference bitwise") {
    CheckResult a = proper_ellipticity_check(100, 7, true);
    CheckResult b = proper_ellipticity_check(100, 7, false);
    CHECK(a.worst_relative_error == b.worst_relative_error);

    a = complementing_check_numeric(100, 7, true);
    b = complementing_check_numeric(100, 7, false);
    CHECK(a.worst_relative_error == b.worst_relative_error);

    a = homogeneity_check(30, 7, true);
    b = homogeneity_check(30, 7, false);
    CHECK(a.worst_relative_error == b.worst_relative_error);

    a = numeric_vs_symbolic_check(30, 7, true);
    b = numeric_vs_symbolic_check(30, 7, false);
    CHECK(a.worst_relative_error == b.worst_relative_error);
}
