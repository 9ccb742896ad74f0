#pragma once

#include <array>
#include <cmath>
#include <functional>

namespace bbvp {

using V3 = std::array<double, 3>;
using ScalarFn = std::function<double(const V3&)>;

inline double norm3(const V3& x) {
    return std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
}

inline double dot3(const V3& a, const V3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

// Central finite differences with Richardson extrapolation.  The base step
// scales with the distance from the origin so that probes far out on the
// annulus keep comparable relative resolution.
class FdEngine {
public:
    explicit FdEngine(double base_step = 1e-3, int levels = 2);

    double step(const V3& x) const { return base_step_ * (1.0 + norm3(x)); }
    int levels() const { return levels_; }

    // d/dx_k f at x, k in {0,1,2}.
    double d1(const ScalarFn& f, const V3& x, int k) const;

    // d^2/dx_k dx_l f at x.
    double d2(const ScalarFn& f, const V3& x, int k, int l) const;

private:
    double base_step_;
    int levels_;
};

}  // namespace bbvp
