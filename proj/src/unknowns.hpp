#pragma once

// Internal helpers shared by the symbol builders: the indeterminate bundle
// and linear forms over the 11 linearized unknowns
//   (G, h00, h01, h02, h03, h11, h12, h13, h22, h23, h33).
// Index 1 is the outward normal direction, 2 and 3 tangential, 0 stationary.

#include <array>
#include <utility>

#include "bbvp/rational_expr.hpp"

namespace bbvp::detail {

inline Poly k(long n) { return Poly::constant(n); }

struct Vars {
    Poly xi1, xi2, xi3, N, X1, X2, X3, S, N2;
    std::array<Poly, 4> xi, X;  // 1-based
    Vars()
        : xi1(Poly::variable(Var::xi1)),
          xi2(Poly::variable(Var::xi2)),
          xi3(Poly::variable(Var::xi3)),
          N(Poly::variable(Var::N)),
          X1(Poly::variable(Var::X1)),
          X2(Poly::variable(Var::X2)),
          X3(Poly::variable(Var::X3)) {
        S = xi1 * X1 + xi2 * X2 + xi3 * X3;
        N2 = N * N;
        xi = {Poly{}, xi1, xi2, xi3};
        X = {Poly{}, X1, X2, X3};
    }
};

inline constexpr int kUnknowns = 11;

inline int hindex(int a, int b) {
    if (a > b) std::swap(a, b);
    constexpr int diag[4] = {1, 5, 8, 10};
    return diag[a] + (b - a);
}

// Linear form in the unknowns with rational-function coefficients.
struct LinForm {
    std::array<RationalExpr, kUnknowns> c{};
};

inline LinForm operator+(LinForm a, const LinForm& b) {
    for (int i = 0; i < kUnknowns; ++i) a.c[i] = a.c[i] + b.c[i];
    return a;
}
inline LinForm operator-(LinForm a, const LinForm& b) {
    for (int i = 0; i < kUnknowns; ++i) a.c[i] = a.c[i] - b.c[i];
    return a;
}
inline LinForm operator-(LinForm a) {
    for (auto& e : a.c) e = -e;
    return a;
}
inline LinForm operator*(const RationalExpr& s, LinForm f) {
    for (auto& e : f.c) e = s * e;
    return f;
}

inline LinForm uh(int a, int b) {
    LinForm f;
    f.c[hindex(a, b)] = RationalExpr(Poly::constant(1));
    return f;
}
inline LinForm uG() {
    LinForm f;
    f.c[0] = RationalExpr(Poly::constant(1));
    return f;
}

}  // namespace bbvp::detail
