#pragma once

#include <array>
#include <cstdint>
#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace bbvp {

// Fixed indeterminate universe for all symbol work. The boundary-normal
// direction is index 1 of xi; eta lives in xi2, xi3.
enum class Var : int { xi1 = 0, xi2, xi3, z, N, X1, X2, X3, t };
inline constexpr int kNumVars = 9;
extern const std::array<const char*, kNumVars> kVarNames;

using Expo = std::array<int8_t, kNumVars>;

// Graded-lexicographic order: total degree first, then lexicographic in the
// fixed variable order. Deterministic term order for printing and goldens.
struct GradedLex {
    bool operator()(const Expo& a, const Expo& b) const;
};

// Sparse multivariate polynomial with exact rational coefficients.
// Invariant: no zero coefficients stored.
class Poly {
  public:
    using TermMap = std::map<Expo, mpq_class, GradedLex>;

    Poly() = default;
    explicit Poly(const mpq_class& c);
    static Poly variable(Var v, int exponent = 1);
    static Poly constant(long num, long den = 1);

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    mpq_class constant_value() const;  // requires is_constant()

    Poly operator-() const;
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    bool operator==(const Poly& o) const { return terms_ == o.terms_; }

    Poly pow(int e) const;

    int degree_in(Var v) const;
    int total_degree() const;
    bool depends_on(Var v) const { return degree_in(v) > 0; }

    // Coefficient of v^k, a polynomial in the remaining variables.
    Poly coeff_of(Var v, int k) const;

    // Leading term data under graded-lex.
    const Expo& leading_expo() const;
    const mpq_class& leading_coeff() const;

    // Exact division: returns quotient iff divisor divides exactly.
    static std::optional<Poly> divide_exact(const Poly& f, const Poly& g);

    // Substitute a subset of variables by exact rationals.
    Poly eval_partial(const std::map<Var, mpq_class>& bind) const;
    // Full numeric evaluation.
    std::complex<double> eval(const std::array<std::complex<double>, kNumVars>& x) const;
    mpq_class eval_exact(const std::array<mpq_class, kNumVars>& x) const;

    // Canonical text form, graded-lex descending, e.g. "3*xi1^2*N - 1/2".
    std::string str() const;

    void insert_term(const Expo& e, const mpq_class& c);  // accumulate, prune zeros

  private:
    TermMap terms_;
};

Poly operator*(const mpq_class& c, const Poly& p);

}  // namespace bbvp
