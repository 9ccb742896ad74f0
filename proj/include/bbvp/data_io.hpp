#pragma once

#include <string>

#include <bbvp/mode_system.hpp>

namespace bbvp {

// JSON shape: {"lmax": n, "gamma_prime": [[..],[..],[..]], "H_prime": [..],
// "k_prime": [..], "tau_prime": [[..],[..]]}, arrays of length (lmax+1)^2 in
// lexicographic (l, m) order.  Throws std::runtime_error on malformed files
// and std::invalid_argument on shape violations.
BoundaryCoefficients read_boundary_coefficients(const std::string& path);
void write_boundary_coefficients(const BoundaryCoefficients& data, const std::string& path);

} // namespace bbvp
