#pragma once

#include <string>
#include <vector>

#include "bbvp/sym_matrix.hpp"

namespace bbvp {

// Interior principal symbol: a(xi) * I_{11}, with
// a(xi) = xi1^2 + xi2^2 + xi3^2 - (X.xi)^2 / N^2.
struct InteriorSymbol {
    SymMatrix matrix;     // 11x11
    RationalExpr scalar_a;
};
InteriorSymbol build_interior_symbol();

// Boundary principal symbol. Unknown order:
//   (G, h00, h01, h02, h03, h11, h12, h13, h22, h23, h33);
// row order of the reduced block:
//   (H', (tr K)', omega'_2, omega'_3, beta_1, beta_2, beta_3, beta_0).
// `tilde` is the hand transcription (prefactor -1/(2N^2) applied);
// `tilde_formula` is built from the operator row formulas and differs from
// `tilde` by a determinant-neutral rank-1 update in the gauge rows.
struct BoundarySymbol {
    SymMatrix full;           // 11x11, Dirichlet block on top
    SymMatrix tilde;          // 8x8 transcription
    SymMatrix tilde_formula;  // 8x8 first-principles
    std::vector<std::string> unknown_order;
    std::vector<std::string> row_order;
};
BoundarySymbol build_boundary_symbol();

// Row-factor extraction and five-stage elementary replay. Throws
// std::logic_error naming the first mismatching entry if a replay checkpoint
// differs from its transcription.
struct ReduceResult {
    SymMatrix bhat;                     // row-factored reduced matrix
    std::vector<SymMatrix> checkpoints; // matrices after stages 1..5
    RationalExpr det_tilde;             // det of the transcription block
    RationalExpr det_bhat;
};
ReduceResult reduce_to_bhat(const BoundarySymbol& b);

// Verified closed form 8 N^4 (N^2 xi1^2 - S^2)^2 (xi2^2 + xi3^2)^2.
RationalExpr det_bhat_closed_form();

// The rank-1 matrix -(1/(2N^2)) v w^T with v = (0,0,0,0,xi1,xi2,xi3,0) and
// w = (0,0,0,0,0,0,X1 X2,X1 X3); tilde_formula = tilde + this, so the two
// variants share every minor that matters for the determinant.
SymMatrix variant_rank1_correction();

// Interior quadratic with the conormal slot replaced by z, cleared of the
// z-free 1/N^2 factor (clearing leaves remainders unchanged):
//   N^2 (z^2 + xi2^2 + xi3^2) - (z X1 + xi2 X2 + xi3 X3)^2.
Poly interior_quadratic_in_z();

// Remainder of det (xi1 -> z) modulo the interior quadratic. For the reduced
// boundary symbol this is the half-plane certificate 8 N^8 (xi2^2+xi3^2)^4;
// it must involve neither z nor the shift.
RationalExpr half_plane_certificate(const RationalExpr& det);

}  // namespace bbvp
