#pragma once

#include "bbvp/poly.hpp"

namespace bbvp {

// Exact rational function num/den. Equality is by cross-multiplication;
// gcd reduction is not required for correctness. Normalized so that the
// denominator's leading coefficient is positive, with cheap opportunistic
// cancellations (exact-division probe, rational content).
class RationalExpr {
  public:
    RationalExpr() : num_(), den_(Poly::constant(1)) {}
    RationalExpr(const Poly& p) : num_(p), den_(Poly::constant(1)) {}  // NOLINT
    RationalExpr(Poly num, Poly den);
    static RationalExpr constant(long n, long d = 1);
    static RationalExpr variable(Var v, int e = 1);

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_poly() const;  // denominator constant

    RationalExpr operator-() const;
    RationalExpr operator+(const RationalExpr& o) const;
    RationalExpr operator-(const RationalExpr& o) const;
    RationalExpr operator*(const RationalExpr& o) const;
    RationalExpr operator/(const RationalExpr& o) const;
    bool operator==(const RationalExpr& o) const;
    bool operator!=(const RationalExpr& o) const { return !(*this == o); }

    RationalExpr pow(int e) const;

    // Substitute variables by rational expressions (exact).
    RationalExpr substitute(const std::map<Var, RationalExpr>& bind) const;

    std::complex<double> eval(const std::array<std::complex<double>, kNumVars>& x) const;
    mpq_class eval_exact(const std::array<mpq_class, kNumVars>& x) const;

    std::string str() const;

  private:
    void normalize();
    Poly num_, den_;
};

}  // namespace bbvp
