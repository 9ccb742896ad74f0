#include <bbvp/solid_harmonics.hpp>

#include <array>
#include <cmath>
#include <map>
#include <stdexcept>

#include <gmpxx.h>

namespace bbvp {

namespace {

constexpr int kMaxDegree = 30;

using Key = std::array<int, 3>;
using PolyMap = std::map<Key, mpq_class>;

// coefficients of the Legendre polynomial P_l in powers of t
std::vector<mpq_class> legendre_coeffs(int l) {
    std::vector<mpq_class> prev{1};
    if (l == 0) return prev;
    std::vector<mpq_class> cur{0, 1};
    for (int n = 2; n <= l; ++n) {
        std::vector<mpq_class> next(n + 1, 0);
        for (std::size_t j = 0; j < cur.size(); ++j)
            next[j + 1] += mpq_class(2 * n - 1, n) * cur[j];
        for (std::size_t j = 0; j < prev.size(); ++j)
            next[j] -= mpq_class(n - 1, n) * prev[j];
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

// Re or Im of (x + i y)^am as a polynomial in (x, y)
PolyMap azimuthal_factor(int am, bool want_real) {
    PolyMap out;
    mpz_class binom = 1;
    for (int j = 0; j <= am; ++j) {
        if ((j % 2 == 0) == want_real) {
            const int sgn = (j % 4 <= 1) ? 1 : -1;
            out[{am - j, j, 0}] += mpq_class(sgn * binom);
        }
        binom = binom * (am - j) / (j + 1);
    }
    return out;
}

// homogenization of d^am/dt^am P_l: sum_k a_k z^k (x^2+y^2+z^2)^((l-am-k)/2)
PolyMap radial_factor(int l, int am) {
    const auto P = legendre_coeffs(l);
    PolyMap out;
    for (int k = 0; k + am <= l; ++k) {
        mpq_class a = P[k + am];
        if (a == 0) continue;
        for (int j = k + 1; j <= k + am; ++j) a *= j;
        const int e = (l - am - k) / 2;
        if ((l - am - k) % 2 != 0)
            throw std::logic_error("Legendre parity violated");
        std::map<std::pair<int, int>, mpz_class> tri{{{0, 0}, 1}};
        // (x^2 + y^2 + z^2)^e by repeated multiplication over (i1, i2)
        for (int step = 0; step < e; ++step) {
            std::map<std::pair<int, int>, mpz_class> next;
            for (const auto& [ij, c] : tri) {
                next[{ij.first + 1, ij.second}] += c;
                next[{ij.first, ij.second + 1}] += c;
                next[ij] += c;
            }
            tri = std::move(next);
        }
        for (const auto& [ij, c] : tri) {
            const int i1 = ij.first, i2 = ij.second;
            const int i3 = e - i1 - i2;
            out[{2 * i1, 2 * i2, 2 * i3 + k}] += a * c;
        }
    }
    return out;
}

} // namespace

HarmonicBasisElem::HarmonicBasisElem(int l, int m) : l_(l), m_(m) {
    if (l < 0 || l > kMaxDegree || std::abs(m) > l)
        throw std::invalid_argument("harmonic basis: order out of range");
    const int am = std::abs(m);
    const PolyMap rad = radial_factor(l, am);
    PolyMap full;
    if (m == 0) {
        full = rad;
    } else {
        const PolyMap az = azimuthal_factor(am, m > 0);
        for (const auto& [ka, ca] : az)
            for (const auto& [kr, cr] : rad)
                full[{ka[0] + kr[0], ka[1] + kr[1], ka[2] + kr[2]}] += ca * cr;
    }
    // normalization: sqrt((2l+1)(l-|m|)! (2 - delta_m0) / (4 pi (l+|m|)!))
    mpq_class rat(2 * l + 1, 4);
    for (int j = l - am + 1; j <= l + am; ++j) rat /= j;
    if (m != 0) rat *= 2;
    const double scale = std::sqrt(rat.get_d() / std::acos(-1.0));
    numerator_.reserve(full.size());
    for (const auto& [k, c] : full) {
        const double cd = c.get_d() * scale;
        if (cd != 0.0) numerator_.push_back({k[0], k[1], k[2], cd});
    }
}

HarmonicJet HarmonicBasisElem::jet(const V3& x) const {
    const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    const double r = std::sqrt(r2);
    if (r < 1.0 - 1e-12)
        throw std::domain_error("solid harmonic evaluated inside the unit ball");

    std::array<std::array<double, kMaxDegree + 1>, 3> pw{};
    for (int i = 0; i < 3; ++i) {
        pw[i][0] = 1.0;
        for (int p = 1; p <= l_; ++p) pw[i][p] = pw[i][p - 1] * x[i];
    }
    double p = 0.0;
    V3 dp{};
    double ddp[3][3]{};
    for (const auto& mn : numerator_) {
        const int e[3] = {mn.px, mn.py, mn.pz};
        const double mono = pw[0][e[0]] * pw[1][e[1]] * pw[2][e[2]];
        p += mn.c * mono;
        double d1[3];
        for (int i = 0; i < 3; ++i) {
            d1[i] = e[i] > 0
                        ? mn.c * e[i] * (i == 0 ? pw[0][e[0] - 1] * pw[1][e[1]] * pw[2][e[2]]
                           : i == 1 ? pw[0][e[0]] * pw[1][e[1] - 1] * pw[2][e[2]]
                                    : pw[0][e[0]] * pw[1][e[1]] * pw[2][e[2] - 1])
                        : 0.0;
            dp[i] += d1[i];
        }
        for (int i = 0; i < 3; ++i)
            for (int j = i; j < 3; ++j) {
                double term = 0.0;
                if (i == j) {
                    if (e[i] > 1) {
                        int f[3] = {e[0], e[1], e[2]};
                        f[i] -= 2;
                        term = mn.c * e[i] * (e[i] - 1) * pw[0][f[0]] * pw[1][f[1]] * pw[2][f[2]];
                    }
                } else if (e[i] > 0 && e[j] > 0) {
                    int f[3] = {e[0], e[1], e[2]};
                    f[i] -= 1;
                    f[j] -= 1;
                    term = mn.c * e[i] * e[j] * pw[0][f[0]] * pw[1][f[1]] * pw[2][f[2]];
                }
                ddp[i][j] += term;
            }
    }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < i; ++j) ddp[i][j] = ddp[j][i];

    double rpow = r;  // r^(2l+1)
    for (int i = 0; i < l_; ++i) rpow *= r2;
    const double a = -(2.0 * l_ + 1.0);
    const double ra = 1.0 / rpow;
    const double ram2 = ra / r2;
    const double ram4 = ram2 / r2;

    HarmonicJet out;
    out.val = p * ra;
    for (int i = 0; i < 3; ++i) out.grad[i] = dp[i] * ra + a * p * x[i] * ram2;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            out.hess[i][j] = ddp[i][j] * ra
                             + a * (dp[i] * x[j] + dp[j] * x[i] + p * (i == j ? 1.0 : 0.0)) * ram2
                             + a * (a - 2.0) * p * x[i] * x[j] * ram4;
    return out;
}

double HarmonicBasisElem::value(const V3& x) const { return jet(x).val; }

std::vector<std::pair<int, int>> harmonic_modes(int L) {
    std::vector<std::pair<int, int>> out;
    out.reserve((L + 1) * (L + 1));
    for (int l = 0; l <= L; ++l)
        for (int m = -l; m <= l; ++m) out.emplace_back(l, m);
    return out;
}

} // namespace bbvp
