#pragma once

#include <array>

#include "bbvp/fd.hpp"
#include "bbvp/metric.hpp"

namespace bbvp {

using Mat4 = std::array<std::array<double, 4>, 4>;
using Vec4 = std::array<double, 4>;

// Symmetric 4-tensor field and index-up 4-vector field on the quotient;
// nothing depends on t, so index 0 derivatives vanish.
using Tensor4Fn = std::function<double(int, int, const V3&)>;
using Vector4Fn = std::function<double(int, const V3&)>;

// Metric 2-jet at a point.  Derivative slots are coordinate indices with
// the 0 slot identically zero.
struct Jet4 {
    double g[4][4];
    double gi[4][4];
    double dg[4][4][4];      // dg[k][mu][nu] = d_k g_{mu nu}
    double ddg[4][4][4][4];  // ddg[k][l][mu][nu]
    double G[4][4][4];       // G[lam][mu][nu] = Gamma^lam_{mu nu}
    double dG[4][4][4][4];   // dG[k][lam][mu][nu] = d_k Gamma^lam_{mu nu}
};

Jet4 jet4(const Metric4& g, const V3& x, const FdEngine& fd,
          bool second_order = true);

struct Curvature {
    double Gamma[4][4][4];
    Mat4 Ric;
};

Mat4 ricci(const Jet4& J);
Curvature curvature(const Metric4& g, const V3& x, const FdEngine& fd);

// Linearized-constraint operator beta(h) = delta h + d(tr h)/2 with
// delta = -trace of the covariant derivative; returns a covector.
Vec4 bianchi(const Metric4& g, const Tensor4Fn& h, const V3& x,
             const FdEngine& fd);

// Killing operator (delta* Y)_{mu nu} = (L_Y g)_{mu nu} / 2.
Mat4 delta_star(const Metric4& g, const Vector4Fn& Y, const V3& x,
                const FdEngine& fd);

// Connection rough Laplacian (nabla* nabla Y)^mu = -g^{ab} (nabla^2 Y)^mu_{ab}.
Vec4 rough_laplacian(const Metric4& g, const Vector4Fn& Y, const V3& x,
                     const FdEngine& fd);

}  // namespace bbvp
