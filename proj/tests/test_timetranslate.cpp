#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "bbvp/boundary_data.hpp"
#include "bbvp/metric.hpp"

using namespace bbvp;

namespace {

const V3 PB{0.6, 0.0, 0.8};

// f = (rho - 1)(1 + x3 / (2 rho)): generic normal derivative on the sphere.
ScalarField field_generic(double scale = 1.0) {
    ScalarField f;
    f.value = [scale](const V3& x) {
        double r = norm3(x);
        return scale * (r - 1.0) * (1.0 + x[2] / (2.0 * r));
    };
    f.grad = [scale](const V3& x) {
        double r = norm3(x);
        V3 g;
        for (int i = 0; i < 3; ++i) {
            double di3 = i == 2 ? 1.0 : 0.0;
            g[i] = scale * ((x[i] / r) * (1.0 + x[2] / (2.0 * r)) +
                            (r - 1.0) * (di3 / (2.0 * r) -
                                         x[2] * x[i] / (2.0 * r * r * r)));
        }
        return g;
    };
    return f;
}

// f = (rho - 1)^2 (1 + x3 / (3 rho)): gradient vanishes on the unit sphere.
ScalarField field_tangential() {
    ScalarField f;
    f.value = [](const V3& x) {
        double r = norm3(x);
        return (r - 1.0) * (r - 1.0) * (1.0 + x[2] / (3.0 * r));
    };
    f.grad = [](const V3& x) {
        double r = norm3(x);
        V3 g;
        for (int i = 0; i < 3; ++i) {
            double di3 = i == 2 ? 1.0 : 0.0;
            g[i] = 2.0 * (r - 1.0) * (x[i] / r) * (1.0 + x[2] / (3.0 * r)) +
                   (r - 1.0) * (r - 1.0) *
                       (di3 / (3.0 * r) - x[2] * x[i] / (3.0 * r * r * r));
        }
        return g;
    };
    return f;
}

}  // namespace

TEST_CASE("static fixture: frozen boost factors and translated data") {
    FdEngine fd;
    Fixture sch = fixture_schwarzschild(1.0);
    ScalarField f = field_generic();
    TimeTranslation tt = time_translate(sch.metric, f);

    CHECK(tt.a(PB) == doctest::Approx(1.0222287175300740217117947432315).epsilon(1e-13));
    CHECK(tt.b(PB) == doctest::Approx(0.21201780808031164894763150229986).epsilon(1e-13));

    BartnikData B = bartnik_data(sch.metric, PB, fd);
    CHECK(B.H == doctest::Approx(8.0 / 27.0).epsilon(1e-10));
    CHECK(std::abs(B.k) < 1e-11);

    BartnikData Bh = bartnik_data(tt.pulled, PB, fd);
    CHECK(Bh.H == doctest::Approx(0.30288258297187378421090214614266).epsilon(1e-9));
    CHECK(Bh.k == doctest::Approx(0.062820091283055303391890815496255).epsilon(1e-9));
    CHECK(Bh.tau[0] == doctest::Approx(-0.037153832922424172925864342640904).epsilon(1e-8));
    CHECK(std::abs(Bh.tau[1]) < 1e-10);
    CHECK(Bh.tau[2] == doctest::Approx(0.027865374691818129694398256980678).epsilon(1e-8));
}

TEST_CASE("rotating fixture: frozen boost factors and translated data") {
    FdEngine fd;
    Fixture kerr = fixture_kerr(1.0, 0.5);
    ScalarField f = field_generic(0.2);
    TimeTranslation tt = time_translate(kerr.metric, f);

    CHECK(tt.a(PB) == doctest::Approx(1.0010246911607049476640554735579).epsilon(1e-13));
    CHECK(tt.b(PB) == doctest::Approx(0.04528169954169920708532440111445).epsilon(1e-13));

    BartnikData B = bartnik_data(kerr.metric, PB, fd);
    CHECK(B.H == doctest::Approx(0.31666879829502311154573253990922).epsilon(1e-9));
    CHECK(std::abs(B.k) < 1e-10);
    CHECK(B.tau[1] == doctest::Approx(-0.17224838989107204897133594282988).epsilon(1e-9));

    BartnikData Bh = bartnik_data(tt.pulled, PB, fd);
    CHECK(Bh.H == doctest::Approx(0.31699328601350707972976647644883).epsilon(1e-9));
    CHECK(Bh.k == doctest::Approx(0.014339301378626186680133832743826).epsilon(1e-9));
    CHECK(Bh.tau[0] == doctest::Approx(-0.0061553485547164981122104405035247).epsilon(1e-8));
    CHECK(Bh.tau[1] == doctest::Approx(-0.17224838989107204897133594282988).epsilon(1e-9));
    CHECK(Bh.tau[2] == doctest::Approx(0.0077448631959614647673549955982508).epsilon(1e-8));
}

TEST_CASE("transformation laws hold on both curved fixtures") {
    FdEngine fd;
    auto pts = boundary_points(8, 2026);
    {
        Fixture sch = fixture_schwarzschild(1.0);
        auto res = verify_transformation_laws(sch.metric, field_generic(), pts, fd, 1e-5);
        for (const auto& r : res) {
            INFO(r.name, " residual ", r.max_residual);
            CHECK(r.pass);
        }
    }
    {
        Fixture kerr = fixture_kerr(1.0, 0.5);
        auto res = verify_transformation_laws(kerr.metric, field_generic(0.2), pts, fd, 1e-5);
        for (const auto& r : res) {
            INFO(r.name, " residual ", r.max_residual);
            CHECK(r.pass);
        }
    }
}

TEST_CASE("tangential translations leave the data invariant") {
    FdEngine fd;
    auto pts = boundary_points(8, 2027);
    Fixture kerr = fixture_kerr(1.0, 0.5);
    auto res = verify_normal_invariance(kerr.metric, field_tangential(), pts, fd, 1e-6);
    for (const auto& r : res) {
        INFO(r.name, " residual ", r.max_residual);
        CHECK(r.pass);
    }
}

TEST_CASE("zero translation is the identity") {
    FdEngine fd;
    Fixture kerr = fixture_kerr(1.0, 0.5);
    ScalarField zero{[](const V3&) { return 0.0; },
                     [](const V3&) { return V3{}; }};
    TimeTranslation tt = time_translate(kerr.metric, zero);
    for (const V3& x : boundary_points(4, 5)) {
        CHECK(tt.a(x) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(std::abs(tt.b(x)) < 1e-14);
        for (int mu = 0; mu < 4; ++mu)
            for (int nu = mu; nu < 4; ++nu)
                CHECK(tt.pulled(mu, nu, x) == kerr.metric(mu, nu, x));
    }
}
