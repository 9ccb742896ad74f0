#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>
#include <string>

#include "bbvp/boundary_symbol.hpp"
#include "bbvp/homotopy_symbol.hpp"

using namespace bbvp;

namespace {

Poly k(long n) { return Poly::constant(n); }

mpq_class q(const char* s) {
    mpq_class v(s);
    v.canonicalize();
    return v;
}

// xi1, xi2, xi3, z, N, X1, X2, X3, t
const std::array<mpq_class, kNumVars> kFlatSpot = {
    2, 1, 1, 0, 1, 0, 0, 0, 0};
const std::array<mpq_class, kNumVars> kGenericSpot = {
    mpq_class(1),      mpq_class(1, 2),  mpq_class(-2, 3),
    mpq_class(0),      mpq_class(3, 2),  mpq_class(1, 4),
    mpq_class(-1, 8),  mpq_class(1, 3),  mpq_class(0)};

}  // namespace

TEST_CASE("interior symbol is the scalar quadratic times the identity") {
    InteriorSymbol in = build_interior_symbol();
    REQUIRE(in.matrix.rows() == 11);
    REQUIRE(in.matrix.cols() == 11);
    for (int i = 0; i < 11; ++i)
        for (int j = 0; j < 11; ++j) {
            if (i == j)
                CHECK(in.matrix.at(i, j) == in.scalar_a);
            else
                CHECK(in.matrix.at(i, j).is_zero());
        }
    // |xi|^2 - S^2/N^2 = 61/36 - 25/46656 at the generic spot.
    mpq_class a = in.scalar_a.eval_exact(kGenericSpot);
    CHECK(a == q("79031/46656"));
    CHECK(det_minor_expansion(in.matrix) == in.scalar_a.pow(11));
}

TEST_CASE("boundary symbol variants differ by the rank-1 gauge-row update") {
    BoundarySymbol b = build_boundary_symbol();
    REQUIRE(b.full.rows() == 11);
    REQUIRE(b.unknown_order.size() == 11);
    REQUIRE(b.row_order.size() == 8);

    // Dirichlet block pins the tangential-tangential metric components.
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 11; ++j) {
            if (j == 8 + i)
                CHECK(b.full.at(i, j) == RationalExpr(k(1)));
            else
                CHECK(b.full.at(i, j).is_zero());
        }
    // The reduced block of the full build is the formula variant.
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            CHECK(b.full.at(3 + i, j) == b.tilde_formula.at(i, j));

    SymMatrix corr = variant_rank1_correction();
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            CHECK(b.tilde_formula.at(i, j) == b.tilde.at(i, j) + corr.at(i, j));
}

TEST_CASE("row factors and the five-stage replay reach the reduced form") {
    BoundarySymbol b = build_boundary_symbol();
    ReduceResult r = reduce_to_bhat(b);
    CHECK(r.checkpoints.size() == 5);
    CHECK(r.det_bhat == det_bhat_closed_form());
    CHECK(r.det_tilde * RationalExpr(k(-32) * Poly::variable(Var::N, 11)) ==
          r.det_bhat);
}

TEST_CASE("tampered transcription is rejected naming the offending entry") {
    BoundarySymbol b = build_boundary_symbol();
    b.tilde.at(0, 6) = b.tilde.at(0, 6) + RationalExpr(k(1));
    try {
        reduce_to_bhat(b);
        FAIL("tampered symbol must not reduce");
    } catch (const std::logic_error& e) {
        std::string msg = e.what();
        CHECK(msg.find("(0,6)") != std::string::npos);
        CHECK(msg.find("row-factor extraction") != std::string::npos);
    }
}

TEST_CASE("full symbol determinant equals the reduced determinant") {
    BoundarySymbol b = build_boundary_symbol();
    RationalExpr d_full = det_minor_expansion(b.full);
    RationalExpr d_formula = det_minor_expansion(b.tilde_formula);
    RationalExpr d_display = det_minor_expansion(b.tilde);
    CHECK(d_full == d_formula);
    CHECK(d_formula == d_display);  // rank-1 update is determinant-neutral
}

TEST_CASE("half-plane certificate is conormal-free, shift-free, explicit") {
    RationalExpr cert = half_plane_certificate(det_bhat_closed_form());
    CHECK_FALSE(cert.num().depends_on(Var::z));
    CHECK_FALSE(cert.den().depends_on(Var::z));
    for (Var v : {Var::X1, Var::X2, Var::X3}) {
        CHECK_FALSE(cert.num().depends_on(v));
        CHECK_FALSE(cert.den().depends_on(v));
    }
    Poly eta2 = Poly::variable(Var::xi2, 2) + Poly::variable(Var::xi3, 2);
    CHECK(cert == RationalExpr(k(8) * Poly::variable(Var::N, 8) * eta2.pow(4)));
}

TEST_CASE("frozen rational spot values of the reduced determinants") {
    BoundarySymbol b = build_boundary_symbol();
    ReduceResult r = reduce_to_bhat(b);
    RationalExpr cert = half_plane_certificate(r.det_bhat);
    RationalExpr d_formula = det_minor_expansion(b.tilde_formula);

    CHECK(r.det_bhat.eval_exact(kFlatSpot) == 512);
    CHECK(r.det_tilde.eval_exact(kFlatSpot) == -16);
    CHECK(d_formula.eval_exact(kFlatSpot) == -16);
    CHECK(cert.eval_exact(kFlatSpot) == 128);

    CHECK(r.det_bhat.eval_exact(kGenericSpot) ==
          q("1359031350625/13759414272"));
    CHECK(r.det_tilde.eval_exact(kGenericSpot) ==
          q("-1359031350625/38084983750656"));
    CHECK(d_formula.eval_exact(kGenericSpot) ==
          q("-1359031350625/38084983750656"));
    CHECK(cert.eval_exact(kGenericSpot) == q("390625/8192"));
}

TEST_CASE("homotopy family: diagonal reconciliation and endpoints") {
    HomotopySymbol hs = build_homotopy_symbol();
    CHECK(det_minor_expansion(hs.diag) == RationalExpr(k(-32)));
    CHECK(hs.prefactor == RationalExpr::constant(-1, 32));

    SymMatrix op = homotopy_operator_rows();
    REQUIRE(op.cols() == 11);
    SymMatrix op8(8, 8);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) op8.at(i, j) = op.at(i, j);
    CHECK(hs.matrix == hs.diag * op8);

    std::map<Var, RationalExpr> at0{{Var::t, RationalExpr(k(0))}};
    std::map<Var, RationalExpr> at1{{Var::t, RationalExpr(k(1))}};
    CHECK(hs.matrix.substitute(at0) == hs.diag * homotopy_flat_endpoint());
    CHECK(hs.matrix.substitute(at1) ==
          hs.diag * homotopy_selfadjoint_endpoint());
}

TEST_CASE("homotopy determinant, certificate, and grid positivity") {
    HomotopySymbol hs = build_homotopy_symbol();
    RationalExpr det = det_minor_expansion(hs.matrix);
    CHECK(det == homotopy_det_closed_form());

    RationalExpr cert = homotopy_certificate(det);
    CHECK_FALSE(cert.num().depends_on(Var::z));
    CHECK(cert == homotopy_certificate_closed_form());

    // Endpoints of the closed form.
    std::map<Var, RationalExpr> at0{{Var::t, RationalExpr(k(0))}};
    std::map<Var, RationalExpr> at1{{Var::t, RationalExpr(k(1))}};
    Poly x1 = Poly::variable(Var::xi1);
    Poly eta2 = Poly::variable(Var::xi2, 2) + Poly::variable(Var::xi3, 2);
    CHECK(det.substitute(at0) == RationalExpr(k(8) * x1.pow(4) * eta2.pow(2)));
    CHECK(det.substitute(at1) == RationalExpr(k(4) * x1.pow(8)));

    // Bracket product positive across the full parameter grid.
    Poly qq = homotopy_bracket_product();
    for (int i = 0; i <= 20; ++i) {
        std::array<mpq_class, kNumVars> pt{};
        pt[static_cast<int>(Var::t)] = mpq_class(i, 20);
        CHECK(qq.eval_exact(pt) > 0);
    }

    // Frozen spots.
    std::array<mpq_class, kNumVars> spot = {2, 1, 1, 0, 0, 0, 0, 0,
                                            mpq_class(1, 4)};
    CHECK(det.eval_exact(spot) == q("833/32"));
    CHECK(cert.eval_exact(spot) == q("10961/128"));

    std::array<mpq_class, kNumVars> tpt{};
    auto qq_at = [&](mpq_class tv) {
        tpt[static_cast<int>(Var::t)] = tv;
        return qq.eval_exact(tpt);
    };
    CHECK(qq_at(0) == 8);
    CHECK(qq_at(mpq_class(1, 2)) == q("117/32"));
    CHECK(qq_at(1) == 4);
}
