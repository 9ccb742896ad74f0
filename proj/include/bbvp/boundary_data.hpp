#pragma once

#include <vector>

#include "bbvp/check.hpp"
#include "bbvp/curvature.hpp"

namespace bbvp {

// Geometric boundary data of a coordinate sphere inside the time-zero slice:
// projected induced metric, mean curvature, tangential trace of the second
// fundamental form of the slice, and its tangential normal-contraction.
struct BartnikData {
    double gamma[3][3];
    double H = 0.0;
    double k = 0.0;
    V3 tau{};  // tangential covector, ambient components
    V3 n_up{};
    V3 n_low{};
};

BartnikData bartnik_data(const Metric4& g, const V3& x, const FdEngine& fd);

// Scalar field with an analytic gradient (keeps nested differencing out of
// the pulled-back metric components).
struct ScalarField {
    ScalarFn value;
    std::function<V3(const V3&)> grad;
};

// Pullback of the metric under (t, x) -> (t + f(x), x) together with the
// boost factors of the slice normal.
struct TimeTranslation {
    Metric4 pulled;
    ScalarFn a;
    ScalarFn b;
    ScalarFn b_over_a;
};

TimeTranslation time_translate(const Metric4& g, const ScalarField& f);

// Laws relating boundary data before and after a time translation,
// contracted against sphere-tangential directions only.
std::vector<IdentityResult> verify_transformation_laws(
    const Metric4& g, const ScalarField& f, const std::vector<V3>& pts,
    const FdEngine& fd, double tol = 1e-5);

// With n(f) = 0 on the sphere the data itself is unchanged.
std::vector<IdentityResult> verify_normal_invariance(
    const Metric4& g, const ScalarField& f_tangential,
    const std::vector<V3>& pts, const FdEngine& fd, double tol = 1e-6);

}  // namespace bbvp
