#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bbvp/sym_matrix.hpp"

using namespace bbvp;

namespace {

Poly random_poly(std::mt19937_64& rng, int max_terms = 4, int max_deg = 3, int nvars = 4) {
    std::uniform_int_distribution<int> nterms(1, max_terms);
    std::uniform_int_distribution<int> dcoef(-5, 5);
    std::uniform_int_distribution<int> dexp(0, max_deg);
    std::uniform_int_distribution<int> dvar(0, nvars - 1);
    Poly p;
    const int n = nterms(rng);
    for (int t = 0; t < n; ++t) {
        Expo e{};
        int budget = max_deg;
        for (int rep = 0; rep < 2; ++rep) {
            int v = dvar(rng);
            int ex = std::min(budget, dexp(rng));
            e[v] = static_cast<int8_t>(e[v] + ex);
            budget -= ex;
        }
        p.insert_term(e, dcoef(rng));
    }
    return p;
}

}  // namespace

TEST_CASE("difference of squares") {
    Poly x1 = Poly::variable(Var::xi1), x2 = Poly::variable(Var::xi2);
    CHECK((x1 + x2) * (x1 - x2) == x1 * x1 - x2 * x2);
}

TEST_CASE("multiplication by zero annihilates") {
    std::mt19937_64 rng(7);
    Poly a = random_poly(rng);
    CHECK((a * Poly()).is_zero());
    CHECK((a * Poly()).terms().empty());
}

TEST_CASE("ring axioms on random triples") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 100; ++i) {
        Poly a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        CHECK(a + b == b + a);
        CHECK((a + b) + c == a + (b + c));
    }
}

TEST_CASE("exact division round trip") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 50; ++i) {
        Poly a = random_poly(rng), b = random_poly(rng);
        if (b.is_zero()) continue;
        auto q = Poly::divide_exact(a * b, b);
        REQUIRE(q.has_value());
        CHECK(*q == a);
    }
}

TEST_CASE("2x2 determinant is ad - bc") {
    SymMatrix m(2, 2);
    m.at(0, 0) = RationalExpr::variable(Var::N);
    m.at(0, 1) = RationalExpr::variable(Var::X1);
    m.at(1, 0) = RationalExpr::variable(Var::X2);
    m.at(1, 1) = RationalExpr::variable(Var::X3);
    RationalExpr expect = RationalExpr::variable(Var::N) * RationalExpr::variable(Var::X3) -
                          RationalExpr::variable(Var::X1) * RationalExpr::variable(Var::X2);
    CHECK(det_bareiss(m) == expect);
    CHECK(det_cofactor(m) == expect);
    CHECK(det_minor_expansion(m) == expect);
}

TEST_CASE("scalar matrix determinant is the scalar power") {
    Poly a = Poly::variable(Var::xi1, 2) + Poly::variable(Var::xi2, 2) +
             Poly::variable(Var::xi3, 2);
    SymMatrix m(11, 11);
    for (int i = 0; i < 11; ++i) m.at(i, i) = RationalExpr(a);
    CHECK(det_bareiss(m) == RationalExpr(a.pow(11)));
    CHECK(det_minor_expansion(m) == RationalExpr(a.pow(11)));
}

TEST_CASE("Bareiss matches cofactor expansion on random integer matrices") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> dcoef(-9, 9);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 2 + static_cast<int>(trial % 4);  // sizes 2..5
        SymMatrix m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m.at(i, j) = RationalExpr::constant(dcoef(rng));
        CHECK(det_bareiss(m) == det_cofactor(m));
        CHECK(det_minor_expansion(m) == det_cofactor(m));
    }
}

TEST_CASE("Bareiss matches cofactor on random symbolic matrices") {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 10; ++trial) {
        SymMatrix m(3, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m.at(i, j) = RationalExpr(random_poly(rng, 2, 2, 3));
        CHECK(det_bareiss(m) == det_cofactor(m));
        CHECK(det_minor_expansion(m) == det_cofactor(m));
    }
}

TEST_CASE("determinant with rational-function entries") {
    // entries with denominators exercise row clearing
    RationalExpr n2 = RationalExpr::variable(Var::N, 2);
    SymMatrix m(2, 2);
    m.at(0, 0) = RationalExpr::constant(1) / n2;
    m.at(0, 1) = RationalExpr::constant(3);
    m.at(1, 0) = RationalExpr::constant(1);
    m.at(1, 1) = n2;
    CHECK(det_bareiss(m) == RationalExpr::constant(-2));
    CHECK(det_minor_expansion(m) == RationalExpr::constant(-2));
}

TEST_CASE("subset-minor determinant of a singular matrix is zero") {
    SymMatrix m(3, 3);
    m.at(0, 0) = RationalExpr::variable(Var::xi1);
    m.at(0, 2) = RationalExpr::variable(Var::xi2);
    m.at(2, 0) = RationalExpr::variable(Var::xi1);
    m.at(2, 2) = RationalExpr::variable(Var::xi2);  // row 1 zero, rows 0 = 2
    CHECK(det_minor_expansion(m).is_zero());
    CHECK(det_bareiss(m).is_zero());
}

TEST_CASE("remainder: single division step") {
    // z^2 mod (z^2 + xi2^2 + xi3^2) = -(xi2^2 + xi3^2)
    Poly z2 = Poly::variable(Var::z, 2);
    Poly p = z2 + Poly::variable(Var::xi2, 2) + Poly::variable(Var::xi3, 2);
    RationalExpr r = rem_in_z(RationalExpr(z2), p);
    CHECK(r == RationalExpr(-(Poly::variable(Var::xi2, 2) + Poly::variable(Var::xi3, 2))));
}

TEST_CASE("remainder of a power of the modulus is zero") {
    Poly p = Poly::variable(Var::z, 2) + Poly::variable(Var::xi2, 2) +
             Poly::variable(Var::xi3, 2);
    RationalExpr f = RationalExpr(p).pow(11);
    CHECK(rem_in_z(f, p).is_zero());
}

TEST_CASE("remainder reconstruction: f - r divisible by p") {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<int> dcoef(-4, 4);
    for (int trial = 0; trial < 50; ++trial) {
        // random f of degree <= 4 in z with polynomial coefficients
        Poly f;
        for (int k = 0; k <= 4; ++k) {
            Poly ck = random_poly(rng, 2, 2, 3);
            f += ck * Poly::variable(Var::z, k);
        }
        Poly p = Poly::variable(Var::z, 2) +
                 Poly::constant(dcoef(rng)) * Poly::variable(Var::z) +
                 Poly::variable(Var::xi2, 2) + Poly::constant(1);
        RationalExpr r = rem_in_z(RationalExpr(f), p);
        // f - r = q p exactly; the denominator of the difference is z-free,
        // so divisibility of the numerator by p decides
        RationalExpr diff = RationalExpr(f) - r;
        CHECK_FALSE(diff.den().depends_on(Var::z));
        auto q = Poly::divide_exact(diff.num(), p);
        REQUIRE(q.has_value());
        CHECK(r.num().degree_in(Var::z) < 2);
    }
}

TEST_CASE("substitution is a homomorphism") {
    std::mt19937_64 rng(29);
    std::uniform_int_distribution<int> dcoef(-3, 3);
    for (int trial = 0; trial < 50; ++trial) {
        Poly a = random_poly(rng), b = random_poly(rng);
        std::map<Var, RationalExpr> bind{
            {Var::xi1, RationalExpr::variable(Var::z) + RationalExpr::constant(dcoef(rng))},
            {Var::xi2, RationalExpr::constant(dcoef(rng), 3)},
        };
        RationalExpr lhs = RationalExpr(a * b).substitute(bind);
        RationalExpr rhs = RationalExpr(a).substitute(bind) * RationalExpr(b).substitute(bind);
        CHECK(lhs == rhs);
        RationalExpr lhs2 = RationalExpr(a + b).substitute(bind);
        RationalExpr rhs2 = RationalExpr(a).substitute(bind) + RationalExpr(b).substitute(bind);
        CHECK(lhs2 == rhs2);
    }
}

TEST_CASE("empty substitution is identity") {
    std::mt19937_64 rng(31);
    Poly a = random_poly(rng);
    CHECK(RationalExpr(a).substitute({}) == RationalExpr(a));
}

TEST_CASE("canonical serialization is deterministic and ordered") {
    Poly p = Poly::variable(Var::xi1, 2) - Poly::constant(1, 2) +
             Poly::constant(3) * Poly::variable(Var::N) * Poly::variable(Var::xi2);
    CHECK(p.str() == "xi1^2 + 3*xi2*N - 1/2");
    CHECK(Poly().str() == "0");
    RationalExpr r(Poly::variable(Var::xi1), Poly::constant(2) * Poly::variable(Var::N, 2));
    CHECK(r.str() == "(1/2*xi1) / (N^2)");
}

TEST_CASE("equality by cross multiplication, not representation") {
    // (xi1^2 - xi2^2)/(xi1 - xi2) == (xi1 + xi2)/1
    Poly x1 = Poly::variable(Var::xi1), x2 = Poly::variable(Var::xi2);
    RationalExpr a(x1 * x1 - x2 * x2, x1 - x2);
    RationalExpr b(x1 + x2);
    CHECK(a == b);
}

TEST_CASE("exact rational evaluation") {
    Poly a = Poly::variable(Var::xi1, 2) + Poly::variable(Var::N);
    std::array<mpq_class, kNumVars> x{};
    x[static_cast<int>(Var::xi1)] = mpq_class(1, 2);
    x[static_cast<int>(Var::N)] = mpq_class(3);
    CHECK(a.eval_exact(x) == mpq_class(13, 4));
}
