#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "bbvp/metric.hpp"
#include "bbvp/quotient.hpp"

using namespace bbvp;

namespace {

const V3 P{1.2, 0.0, 0.9};

Vector4Fn field_a() { return decaying_test_fields()[0]; }

}  // namespace

TEST_CASE("quotient jet of the rotating fixture: frozen spot values") {
    FdEngine fd;
    Fixture kerr = fixture_kerr(1.0, 0.5);
    QuotientJet q = quotient_jet(kerr.projection, P, fd, true);

    CHECK(q.u == doctest::Approx(0.49791399399932507298824190760696).epsilon(1e-13));
    CHECK(q.th[1] == doctest::Approx(0.80895630191404839292163235825208).epsilon(1e-13));
    CHECK(q.th[0] == 0.0);
    CHECK(q.th[2] == 0.0);

    CHECK(q.F[0][1] == doctest::Approx(-0.35781385537996710993521760616202).epsilon(1e-9));
    CHECK(std::abs(q.F[0][2]) < 1e-11);
    CHECK(q.F[1][2] == doctest::Approx(1.3730429544141719686864880889266).epsilon(1e-9));

    CHECK(q.gS[0][0] == doctest::Approx(3.1025).epsilon(1e-13));
    CHECK(q.gS[1][1] == doctest::Approx(3.3893327916215240158902130733117).epsilon(1e-13));
    CHECK(q.gS[2][2] == doctest::Approx(3.1025).epsilon(1e-13));
    CHECK(std::abs(q.gS[0][1]) < 1e-14);
    CHECK(std::abs(q.gS[0][2]) < 1e-14);
    CHECK(std::abs(q.gS[1][2]) < 1e-14);

    Mat3 R = q.ric3();
    CHECK(R[0][0] == doctest::Approx(-0.11361791731108370265558792852799).epsilon(1e-8));
    CHECK(R[0][2] == doctest::Approx(-0.31244628397429201325744953435673).epsilon(1e-8));
    CHECK(R[1][1] == doctest::Approx(0.052505204273943044064041841495368).epsilon(1e-8));
    CHECK(R[2][2] == doctest::Approx(-0.15534065663879054991634712690926).epsilon(1e-8));
    CHECK(std::abs(R[0][1]) < 1e-9);
    CHECK(std::abs(R[1][2]) < 1e-9);
}

TEST_CASE("spacetime Christoffel of the assembled projection metric") {
    FdEngine fd;
    Fixture kerr = fixture_kerr(1.0, 0.5);
    Metric4 g4 = assemble_projection(kerr.projection);
    Jet4 J = jet4(g4, P, fd, true);
    CHECK(J.G[1][0][0] == doctest::Approx(0.031320669834905270582285510957589).epsilon(1e-9));
    CHECK(J.G[3][0][0] == doctest::Approx(0.02696313544570198919356055084238).epsilon(1e-9));
    CHECK(std::abs(J.G[0][0][0]) < 1e-10);
    CHECK(std::abs(J.G[2][0][0]) < 1e-10);
}

TEST_CASE("vector splitting and quotient operators: frozen spot values") {
    FdEngine fd;
    Fixture kerr = fixture_kerr(1.0, 0.5);
    Metric4 g4 = assemble_projection(kerr.projection);
    Vector4Fn Ya = field_a();

    SplitVector sv = split_vector(kerr.projection, Ya, P);
    CHECK(sv.perp == doctest::Approx(-0.17703608675531558150693045603803).epsilon(1e-13));
    CHECK(sv.T[0] == doctest::Approx(0.9 / std::pow(1.5, 3)).epsilon(1e-14));

    Mat4 ds = delta_star(g4, Ya, P, fd);
    CHECK(ds[0][0] == doctest::Approx(-0.081681385990271908177091952057901).epsilon(1e-9));
    QuotientJet q = quotient_jet(kerr.projection, P, fd, false);
    V3 expect_mixed{0.03379035226470090826792411535898,
                    0.12380973495728999834301354227609,
                    0.052889247023010117288924702301012};
    for (int k = 0; k < 3; ++k) {
        double got = ds[0][0] * (-q.th[k]) + ds[0][k + 1];
        CHECK(got == doctest::Approx(expect_mixed[k]).epsilon(1e-9));
    }

    Vec4 W = rough_laplacian(g4, Ya, P, fd);
    CHECK(W[1] == doctest::Approx(-0.042078932706386108189353321396315).epsilon(1e-7));
    CHECK(W[2] == doctest::Approx(0.016111574270402151385530766278).epsilon(1e-7));
    CHECK(W[3] == doctest::Approx(0.0004472701180143098226142099758305).epsilon(1e-6));
    double perp_line = -(W[0] + q.th[0] * W[1] + q.th[1] * W[2] + q.th[2] * W[3]);
    CHECK(perp_line == doctest::Approx(-0.17346922593807077159560077933764).epsilon(1e-7));

    LieAlphaBlocks lb = lie_alpha_squared(kerr.projection, Ya, P, fd);
    CHECK(lb.mixed[0] == doctest::Approx(-0.27259259259259259259259259259259).epsilon(1e-9));
    CHECK(lb.mixed[1] == doctest::Approx(-0.99879445990463849150821108969421).epsilon(1e-9));
    CHECK(lb.mixed[2] == doctest::Approx(-0.42666666666666666666666666666667).epsilon(1e-9));
    CHECK(std::abs(lb.tt) < 1e-12);
}

TEST_CASE("identity battery on the flat quotient sits at the noise floor") {
    FdEngine fd;
    Fixture flat = fixture_minkowski_exterior();
    auto pts = probe_points(5, 101);
    auto results = verify_vacuum_projection(flat.projection, pts, fd, 1e-8);
    REQUIRE(!results.empty());
    for (const auto& r : results) {
        INFO(r.name, " residual ", r.max_residual);
        CHECK(r.pass);
    }
}

TEST_CASE("identity battery on the static vacuum quotient") {
    FdEngine fd;
    Fixture sch = fixture_schwarzschild(1.0);
    auto pts = probe_points(6, 102);
    auto results = verify_vacuum_projection(sch.projection, pts, fd, 1e-5);
    for (const auto& r : results) {
        INFO(r.name, " residual ", r.max_residual);
        CHECK(r.pass);
    }
}

TEST_CASE("identity battery on the rotating vacuum quotient") {
    FdEngine fd;
    Fixture kerr = fixture_kerr(1.0, 0.5);
    auto pts = probe_points(8, 103, 1.2, 5.0);
    auto results = verify_vacuum_projection(kerr.projection, pts, fd, 1e-5);
    for (const auto& r : results) {
        INFO(r.name, " residual ", r.max_residual);
        CHECK(r.pass);
    }
}

TEST_CASE("identity battery matches its serial reference") {
    FdEngine fd;
    Fixture kerr = fixture_kerr(1.0, 0.5);
    auto pts = probe_points(4, 104, 1.2, 5.0);
    auto par = verify_vacuum_projection(kerr.projection, pts, fd, 1e-5, true);
    auto ser = verify_vacuum_projection(kerr.projection, pts, fd, 1e-5, false);
    REQUIRE(par.size() == ser.size());
    for (size_t i = 0; i < par.size(); ++i) {
        CHECK(par[i].name == ser[i].name);
        CHECK(par[i].max_residual == ser[i].max_residual);
    }
}

TEST_CASE("twist of the static quotient vanishes") {
    FdEngine fd;
    Fixture sch = fixture_schwarzschild(1.0);
    QuotientJet q = quotient_jet(sch.projection, P, fd, false);
    CHECK(norm3(twist_covector(q)) < 1e-12);
}
