#include "bbvp/rational_expr.hpp"

#include <stdexcept>

namespace bbvp {
namespace {

// gcd of coefficient numerators over lcm of coefficient denominators,
// signed so that content * primitive has positive leading coefficient.
mpq_class content(const Poly& p) {
    if (p.is_zero()) return 1;
    mpz_class g = 0, l = 1;
    for (const auto& [e, c] : p.terms()) {
        mpz_class n = abs(c.get_num());
        mpz_class d = c.get_den();
        mpz_class tmp;
        mpz_gcd(tmp.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
        g = tmp;
        mpz_lcm(tmp.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
        l = tmp;
    }
    mpq_class c(g, l);
    c.canonicalize();
    if (p.leading_coeff() < 0) c = -c;
    return c;
}

Poly scale(const Poly& p, const mpq_class& s) {
    return s * p;
}

}  // namespace

RationalExpr::RationalExpr(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    normalize();
}

RationalExpr RationalExpr::constant(long n, long d) {
    return RationalExpr(Poly::constant(n, d));
}

RationalExpr RationalExpr::variable(Var v, int e) {
    return RationalExpr(Poly::variable(v, e));
}

bool RationalExpr::is_poly() const {
    return den_.is_constant();
}

void RationalExpr::normalize() {
    if (den_.is_zero()) throw std::domain_error("zero denominator");
    if (num_.is_zero()) {
        den_ = Poly::constant(1);
        return;
    }
    if (auto q = Poly::divide_exact(num_, den_)) {
        num_ = *q;
        den_ = Poly::constant(1);
        return;
    }
    // make the denominator primitive with positive leading coefficient
    mpq_class cd = content(den_);
    num_ = scale(num_, mpq_class(1) / cd);
    den_ = scale(den_, mpq_class(1) / cd);
}

RationalExpr RationalExpr::operator-() const {
    RationalExpr r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

RationalExpr RationalExpr::operator+(const RationalExpr& o) const {
    if (den_ == o.den_) return RationalExpr(num_ + o.num_, den_);
    return RationalExpr(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RationalExpr RationalExpr::operator-(const RationalExpr& o) const {
    if (den_ == o.den_) return RationalExpr(num_ - o.num_, den_);
    return RationalExpr(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RationalExpr RationalExpr::operator*(const RationalExpr& o) const {
    return RationalExpr(num_ * o.num_, den_ * o.den_);
}

RationalExpr RationalExpr::operator/(const RationalExpr& o) const {
    if (o.num_.is_zero()) throw std::domain_error("division by zero expression");
    return RationalExpr(num_ * o.den_, den_ * o.num_);
}

bool RationalExpr::operator==(const RationalExpr& o) const {
    return num_ * o.den_ == o.num_ * den_;
}

RationalExpr RationalExpr::pow(int e) const {
    if (e < 0) return RationalExpr(den_, num_).pow(-e);
    RationalExpr r = RationalExpr(Poly::constant(1));
    r.num_ = num_.pow(e);
    r.den_ = den_.pow(e);
    r.normalize();
    return r;
}

namespace {

RationalExpr substitute_poly(const Poly& p, const std::map<Var, RationalExpr>& bind) {
    RationalExpr acc;
    for (const auto& [e, c] : p.terms()) {
        RationalExpr term{Poly(c)};
        Expo eu{};
        bool any_unbound = false;
        for (int i = 0; i < kNumVars; ++i) {
            if (e[i] == 0) continue;
            auto it = bind.find(static_cast<Var>(i));
            if (it == bind.end()) {
                eu[i] = e[i];
                any_unbound = true;
            } else {
                term = term * it->second.pow(e[i]);
            }
        }
        if (any_unbound) {
            Poly mono;
            mono.insert_term(eu, 1);
            term = term * RationalExpr(mono);
        }
        acc = acc + term;
    }
    return acc;
}

}  // namespace

RationalExpr RationalExpr::substitute(const std::map<Var, RationalExpr>& bind) const {
    RationalExpr n = substitute_poly(num_, bind);
    RationalExpr d = substitute_poly(den_, bind);
    if (d.is_zero()) throw std::domain_error("denominator vanishes after substitution");
    return n / d;
}

std::complex<double> RationalExpr::eval(
    const std::array<std::complex<double>, kNumVars>& x) const {
    return num_.eval(x) / den_.eval(x);
}

mpq_class RationalExpr::eval_exact(const std::array<mpq_class, kNumVars>& x) const {
    mpq_class d = den_.eval_exact(x);
    if (d == 0) throw std::domain_error("denominator vanishes at evaluation point");
    return num_.eval_exact(x) / d;
}

std::string RationalExpr::str() const {
    if (den_.is_constant() && den_.constant_value() == 1) return num_.str();
    return "(" + num_.str() + ") / (" + den_.str() + ")";
}

}  // namespace bbvp
