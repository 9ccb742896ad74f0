#pragma once

#include "bbvp/sym_matrix.hpp"

namespace bbvp {

// Interpolating boundary family over the flat exterior model (unit lapse,
// zero shift), connecting the geometric boundary conditions (t = 0) to a
// formally self-adjoint set (t = 1). `matrix` is the printed 8x8 family in
// (xi, t); the operator-normalized rows are diag^{-1} * matrix with
// diag = (1,-1,-2,-2,-2,-2,-2,-1), and prefactor = 1/det(diag) = -1/32
// converts printed determinant data to operator-normalized data.
struct HomotopySymbol {
    SymMatrix matrix;
    SymMatrix diag;
    RationalExpr prefactor;
};
HomotopySymbol build_homotopy_symbol();

// Operator rows of the interpolated boundary conditions over the 11
// unknowns; the first 8 columns reproduce `matrix` up to `diag`.
SymMatrix homotopy_operator_rows();

// Endpoint blocks: t = 0 is the flat reduced boundary symbol (display
// scaled by -1/2), t = 1 the self-adjoint rows. Both satisfy
// matrix(t = i) = diag * endpoint.
SymMatrix homotopy_flat_endpoint();
SymMatrix homotopy_selfadjoint_endpoint();

// det(matrix) = -(b1)(b2) with
//   b1 = t xi1^4 - (2+t)(1-t)^2 xi1^2 (xi2^2+xi3^2),
//   b2 = 2 (2+t)(1-t)^2 (xi2^2+xi3^2) xi1^2 - 4 t xi1^4.
RationalExpr homotopy_det_closed_form();

// Remainder of det(matrix) (xi1 -> z) modulo z^2 + xi2^2 + xi3^2.
RationalExpr homotopy_certificate(const RationalExpr& det);

// Closed form of that remainder:
//   [t + (2+t)(1-t)^2] [2(2+t)(1-t)^2 + 4t] (xi2^2+xi3^2)^4.
RationalExpr homotopy_certificate_closed_form();

// Bracket product q1 q2 = 2 (t^3 - 2t + 2)(t^3 - t + 2), positive on [0,1];
// the operator-normalized root value is -(q1 q2)/32 * (xi2^2+xi3^2)^4.
Poly homotopy_bracket_product();

}  // namespace bbvp
