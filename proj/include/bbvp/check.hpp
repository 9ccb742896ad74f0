#pragma once

#include <string>
#include <vector>

namespace bbvp {

// Outcome of one pointwise identity verified over a probe battery.
struct IdentityResult {
    std::string name;
    int n_points = 0;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

inline IdentityResult make_result(std::string name, int n_points,
                                  double max_residual, double tolerance) {
    return {std::move(name), n_points, max_residual, tolerance,
            max_residual < tolerance};
}

inline bool all_pass(const std::vector<IdentityResult>& rs) {
    for (const auto& r : rs)
        if (!r.pass) return false;
    return true;
}

}  // namespace bbvp
