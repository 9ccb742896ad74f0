#pragma once

#include <utility>
#include <vector>

#include <bbvp/fd.hpp>

namespace bbvp {

// Decaying real solid harmonic S_lm(x) = Y_lm(x/|x|) / |x|^(l+1).
// Real basis without Condon-Shortley phase: m > 0 couples to cos(m phi),
// m < 0 to sin(|m| phi).  Restricted to the unit sphere the family is
// orthonormal; off the sphere each element is exactly harmonic.
struct HarmonicJet {
    double val = 0.0;
    V3 grad{};
    double hess[3][3]{};
};

class HarmonicBasisElem {
public:
    HarmonicBasisElem(int l, int m);

    int l() const noexcept { return l_; }
    int m() const noexcept { return m_; }

    // value, gradient and Hessian at |x| >= 1; throws std::domain_error
    // for points inside the unit ball where the decaying branch blows up.
    HarmonicJet jet(const V3& x) const;
    double value(const V3& x) const;

private:
    struct Monomial {
        int px, py, pz;
        double c;
    };

    int l_ = 0, m_ = 0;
    std::vector<Monomial> numerator_;  // coefficients of r^l Y_lm
};

// All (l, m) with l <= L, l ascending, m = -l..l.
std::vector<std::pair<int, int>> harmonic_modes(int L);

} // namespace bbvp
