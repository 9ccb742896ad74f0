#include "bbvp/poly.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace bbvp {

const std::array<const char*, kNumVars> kVarNames = {
    "xi1", "xi2", "xi3", "z", "N", "X1", "X2", "X3", "t"};

bool GradedLex::operator()(const Expo& a, const Expo& b) const {
    int da = 0, db = 0;
    for (int i = 0; i < kNumVars; ++i) {
        da += a[i];
        db += b[i];
    }
    if (da != db) return da < db;
    return a < b;  // lexicographic tie-break
}

Poly::Poly(const mpq_class& c) {
    if (c != 0) terms_[Expo{}] = c;
}

Poly Poly::variable(Var v, int exponent) {
    Poly p;
    if (exponent < 0) throw std::invalid_argument("negative exponent");
    Expo e{};
    e[static_cast<int>(v)] = static_cast<int8_t>(exponent);
    p.terms_[e] = 1;
    return p;
}

Poly Poly::constant(long num, long den) {
    mpq_class q(num, den);
    q.canonicalize();
    return Poly(q);
}

bool Poly::is_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && terms_.begin()->first == Expo{};
}

mpq_class Poly::constant_value() const {
    if (terms_.empty()) return 0;
    if (!is_constant()) throw std::logic_error("not a constant polynomial");
    return terms_.begin()->second;
}

void Poly::insert_term(const Expo& e, const mpq_class& c) {
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Poly Poly::operator-() const {
    Poly r;
    for (const auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
}

Poly Poly::operator+(const Poly& o) const {
    Poly r = *this;
    r += o;
    return r;
}

Poly Poly::operator-(const Poly& o) const {
    Poly r = *this;
    r -= o;
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    for (const auto& [e, c] : o.terms_) insert_term(e, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    for (const auto& [e, c] : o.terms_) insert_term(e, -c);
    return *this;
}

Poly Poly::operator*(const Poly& o) const {
    Poly r;
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            Expo e;
            for (int i = 0; i < kNumVars; ++i) e[i] = static_cast<int8_t>(ea[i] + eb[i]);
            r.insert_term(e, ca * cb);
        }
    }
    return r;
}

Poly operator*(const mpq_class& c, const Poly& p) {
    Poly r;
    if (c == 0) return r;
    for (const auto& [e, pc] : p.terms()) r.insert_term(e, c * pc);
    return r;
}

Poly Poly::pow(int e) const {
    if (e < 0) throw std::invalid_argument("negative power");
    Poly r = Poly::constant(1);
    Poly base = *this;
    while (e > 0) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

int Poly::degree_in(Var v) const {
    int d = 0;
    const int vi = static_cast<int>(v);
    for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e[vi]));
    return d;
}

int Poly::total_degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_) {
        int s = 0;
        for (int i = 0; i < kNumVars; ++i) s += e[i];
        d = std::max(d, s);
    }
    return d;
}

Poly Poly::coeff_of(Var v, int k) const {
    Poly r;
    const int vi = static_cast<int>(v);
    for (const auto& [e, c] : terms_) {
        if (e[vi] == k) {
            Expo e2 = e;
            e2[vi] = 0;
            r.insert_term(e2, c);
        }
    }
    return r;
}

const Expo& Poly::leading_expo() const {
    if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
    return terms_.rbegin()->first;
}

const mpq_class& Poly::leading_coeff() const {
    if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
    return terms_.rbegin()->second;
}

std::optional<Poly> Poly::divide_exact(const Poly& f, const Poly& g) {
    if (g.is_zero()) return std::nullopt;
    Poly rem = f;
    Poly quot;
    const Expo& ge = g.leading_expo();
    const mpq_class& gc = g.leading_coeff();
    while (!rem.is_zero()) {
        const Expo& re = rem.leading_expo();
        Expo qe;
        for (int i = 0; i < kNumVars; ++i) {
            int d = re[i] - ge[i];
            if (d < 0) return std::nullopt;  // leading term not divisible
            qe[i] = static_cast<int8_t>(d);
        }
        mpq_class qc = rem.leading_coeff() / gc;
        Poly mono;
        mono.insert_term(qe, qc);
        quot += mono;
        rem -= mono * g;
    }
    return quot;
}

Poly Poly::eval_partial(const std::map<Var, mpq_class>& bind) const {
    Poly r;
    for (const auto& [e, c] : terms_) {
        mpq_class coeff = c;
        Expo e2 = e;
        for (const auto& [v, val] : bind) {
            const int vi = static_cast<int>(v);
            for (int k = 0; k < e[vi]; ++k) coeff *= val;
            e2[vi] = 0;
        }
        r.insert_term(e2, coeff);
    }
    return r;
}

std::complex<double> Poly::eval(const std::array<std::complex<double>, kNumVars>& x) const {
    std::complex<double> acc = 0.0;
    for (const auto& [e, c] : terms_) {
        std::complex<double> term = c.get_d();
        for (int i = 0; i < kNumVars; ++i)
            for (int k = 0; k < e[i]; ++k) term *= x[i];
        acc += term;
    }
    return acc;
}

mpq_class Poly::eval_exact(const std::array<mpq_class, kNumVars>& x) const {
    mpq_class acc = 0;
    for (const auto& [e, c] : terms_) {
        mpq_class term = c;
        for (int i = 0; i < kNumVars; ++i)
            for (int k = 0; k < e[i]; ++k) term *= x[i];
        acc += term;
    }
    return acc;
}

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // graded-lex descending
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        mpq_class a = c;
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        bool is_const_term = (e == Expo{});
        bool unit = (a == 1);
        if (!unit || is_const_term) os << a.get_str();
        bool printed = !unit || is_const_term;
        for (int i = 0; i < kNumVars; ++i) {
            if (e[i] == 0) continue;
            if (printed) os << "*";
            os << kVarNames[i];
            if (e[i] > 1) os << "^" << static_cast<int>(e[i]);
            printed = true;
        }
    }
    return os.str();
}

}  // namespace bbvp
