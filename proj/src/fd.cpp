#include "bbvp/fd.hpp"

#include <stdexcept>

namespace bbvp {
namespace {

// One Richardson pass per level: estimates carry even-order error terms, so
// level j removes the h^(2j) contribution.
double extrapolate(std::array<double, 8>& t, int n) {
    for (int lev = 1; lev < n; ++lev) {
        const double w = std::pow(4.0, lev);
        for (int i = 0; i + lev < n; ++i)
            t[i] = (w * t[i + 1] - t[i]) / (w - 1.0);
    }
    return t[0];
}

}  // namespace

FdEngine::FdEngine(double base_step, int levels)
    : base_step_(base_step), levels_(levels) {
    if (base_step <= 0.0 || levels < 0 || levels > 6)
        throw std::invalid_argument("FdEngine: bad step or level count");
}

double FdEngine::d1(const ScalarFn& f, const V3& x, int k) const {
    const double h0 = step(x);
    const int n = levels_ + 1;
    std::array<double, 8> t{};
    for (int i = 0; i < n; ++i) {
        const double h = h0 / double(1 << i);
        V3 xp = x, xm = x;
        xp[k] += h;
        xm[k] -= h;
        t[i] = (f(xp) - f(xm)) / (2.0 * h);
    }
    return extrapolate(t, n);
}

double FdEngine::d2(const ScalarFn& f, const V3& x, int k, int l) const {
    const double h0 = step(x);
    const int n = levels_ + 1;
    std::array<double, 8> t{};
    if (k == l) {
        const double f0 = f(x);
        for (int i = 0; i < n; ++i) {
            const double h = h0 / double(1 << i);
            V3 xp = x, xm = x;
            xp[k] += h;
            xm[k] -= h;
            t[i] = (f(xp) - 2.0 * f0 + f(xm)) / (h * h);
        }
    } else {
        for (int i = 0; i < n; ++i) {
            const double h = h0 / double(1 << i);
            V3 xpp = x, xpm = x, xmp = x, xmm = x;
            xpp[k] += h;
            xpp[l] += h;
            xpm[k] += h;
            xpm[l] -= h;
            xmp[k] -= h;
            xmp[l] += h;
            xmm[k] -= h;
            xmm[l] -= h;
            t[i] = (f(xpp) - f(xpm) - f(xmp) + f(xmm)) / (4.0 * h * h);
        }
    }
    return extrapolate(t, n);
}

}  // namespace bbvp
