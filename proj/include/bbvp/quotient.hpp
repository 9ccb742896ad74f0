#pragma once

#include <vector>

#include "bbvp/check.hpp"
#include "bbvp/curvature.hpp"

namespace bbvp {

using Mat3 = std::array<std::array<double, 3>, 3>;

// Two-jet of the quotient data (u, theta, g_S) at a point.  First-order
// slots are always filled; second-order slots only when requested.
struct QuotientJet {
    double u;
    V3 du;
    double ddu[3][3];
    V3 th;
    double dth[3][3];      // dth[i][j] = d_i theta_j
    double ddth[3][3][3];  // ddth[a][b][j] = d_a d_b theta_j
    double gS[3][3];
    double gSi[3][3];
    double dgS[3][3][3];  // dgS[k][i][j]
    double ddgS[3][3][3][3];
    double GS[3][3][3];  // quotient Christoffel symbols
    double dGS[3][3][3][3];
    double F[3][3];      // F_ij = d_i theta_j - d_j theta_i
    double dF[3][3][3];  // dF[k][i][j]
    bool second_order = false;

    V3 grad(const V3& dlow) const;  // raise a covector
    Mat3 hess_scalar(const V3& d, const double dd[3][3]) const;
    Mat3 ric3() const;
    // (dtheta(v))^i = g_S^{ij} F_{lj} v^l for an index-up v.
    V3 dtheta_vec(const V3& v) const;
    double fdotf() const;  // F_ij F^{ij}
    double det_gS() const;
};

QuotientJet quotient_jet(const ProjectionTriple& p, const V3& x,
                         const FdEngine& fd, bool second_order = true);

// Twist one-form: -(u^3/2) times the quotient Hodge star of dtheta.
V3 twist_covector(const QuotientJet& q);

// Decomposition of an index-up stationary 4-vector field into its quotient
// part and the scaled vertical component u^{-1} <Y, Killing>.
struct SplitVector {
    V3 T;
    double perp;
};
SplitVector split_vector(const ProjectionTriple& p, const Vector4Fn& Y,
                         const V3& x);

// Quotient form of the rough Laplacian acting on a stationary vector field:
// the tangential line and the scaled vertical line.
struct QuotientBianchiRhs {
    V3 T;
    double perp;
};
QuotientBianchiRhs quotient_bianchi_rhs(const ProjectionTriple& p,
                                        const Vector4Fn& Y, const V3& x,
                                        const FdEngine& fd);

// Blocks of L_Y(alpha tensor alpha) for the connection form alpha, taken
// against the Killing direction and horizontal lifts.
struct LieAlphaBlocks {
    double tt;
    V3 mixed;
    Mat3 TT;
};
LieAlphaBlocks lie_alpha_squared(const ProjectionTriple& p, const Vector4Fn& Y,
                                 const V3& x, const FdEngine& fd);

// Smooth decaying 4-vector fields used by the identity batteries.
std::vector<Vector4Fn> decaying_test_fields();

// Pointwise identity battery for a vacuum quotient triple.
std::vector<IdentityResult> verify_vacuum_projection(
    const ProjectionTriple& p, const std::vector<V3>& pts, const FdEngine& fd,
    double tol = 1e-5, bool parallel = true);

}  // namespace bbvp
