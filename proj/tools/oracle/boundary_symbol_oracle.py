#!/usr/bin/env python3
"""Independent oracle for the reduced boundary symbol.

Cross-checks, with exact sympy arithmetic, everything the C++ symbols module
hardcodes or claims:

  1. the first-principles row build of the 11x11 boundary symbol from the
     linearized boundary operators (mean curvature, trace of the second
     fundamental form, connection 1-form, spacetime gauge 1-form),
  2. the hand transcription of the 8x8 reduced block and its relation to the
     first-principles build (they differ by a rank-1 correction in the
     mixed-column entries of the gauge rows),
  3. the row-factor extraction and the five-stage elementary reduction replay,
  4. closed-form determinants for both variants,
  5. the half-plane certificate: remainder of det w.r.t. the interior symbol
     as a quadratic in the conormal variable, which must be free of both the
     conormal variable and the shift vector,
  6. exact rational spot values frozen into the C++ golden tests.

Exit status is nonzero if any check fails.  Run from anywhere:
    python3 tools/oracle/boundary_symbol_oracle.py
"""

import sys

import sympy as sp

xi1, xi2, xi3, N, X1, X2, X3, z = sp.symbols("xi1 xi2 xi3 N X1 X2 X3 z")
S = xi1 * X1 + xi2 * X2 + xi3 * X3

failures = []


def check(name, ok):
    status = "ok" if ok else "FAIL"
    print(f"[{status}] {name}")
    if not ok:
        failures.append(name)


# ---------------------------------------------------------------------------
# First-principles build: symbols of the 8 boundary rows as linear forms in
# the 11 unknowns u = (G, h00, h01, h02, h03, h11, h12, h13, h22, h23, h33).
# Index 1 is the outward normal direction, 2 and 3 are tangential, 0 is the
# stationary (time) direction.  d_i -> xi_i, d_X -> S.
# ---------------------------------------------------------------------------

G, h00, h01, h02, h03, h11, h12, h13, h22, h23, h33 = sp.symbols(
    "G h00 h01 h02 h03 h11 h12 h13 h22 h23 h33"
)
unknowns = [G, h00, h01, h02, h03, h11, h12, h13, h22, h23, h33]


def h(a, b):
    key = (min(a, b), max(a, b))
    return {
        (0, 0): h00, (0, 1): h01, (0, 2): h02, (0, 3): h03,
        (1, 1): h11, (1, 2): h12, (1, 3): h13,
        (2, 2): h22, (2, 3): h23, (3, 3): h33,
    }[key]


xi = {1: xi1, 2: xi2, 3: xi3}
X = {1: X1, 2: X2, 3: X3}

# Mean curvature row:  2 H' = -2 xi_2 h12 - 2 xi_3 h13 + xi_1 (h22 + h33).
row_H = sp.Rational(1, 2) * (
    -2 * xi2 * h12 - 2 * xi3 * h13 + xi1 * (h22 + h33)
)

# Trace of the linearized second fundamental form:
# (tr K)' = -(1/2N) [ 2 xi_2 h02 + 2 xi_3 h03 + S (h22 + h33)
#                     - X^l (2 xi_2 h_{2l} + 2 xi_3 h_{3l}) ].
row_trK = (
    -1 / (2 * N)
    * (
        2 * xi2 * h02
        + 2 * xi3 * h03
        + S * (h22 + h33)
        - sum(X[l] * (2 * xi2 * h(2, l) + 2 * xi3 * h(3, l)) for l in (1, 2, 3))
    )
)


# Connection 1-form rows (i = 2, 3), including the normal-derivative coupling
# to the extra scalar unknown:  omega'_i + N xi_i G.
def row_omega(i):
    return (
        -1 / (2 * N)
        * (
            xi1 * h(0, i)
            + xi[i] * h01
            + S * h(1, i)
            - sum(X[l] * (xi1 * h(i, l) + xi[i] * h(1, l)) for l in (1, 2, 3))
        )
        + N * xi[i] * G
    )


# Spacetime gauge rows.  The trace of the deformation w.r.t. the stationary
# metric is
#   tr h = -(1/N^2) (h00 + X^i X^j h_ij - 2 X^l h_0l) + h11 + h22 + h33,
# where the double sum X^i X^j h_ij counts each off-diagonal term twice.
trh_double = (
    -1 / N**2
    * (
        h00
        + sum(X[i] * X[j] * h(i, j) for i in (1, 2, 3) for j in (1, 2, 3))
        - 2 * sum(X[l] * h(0, l) for l in (1, 2, 3))
    )
    + h11 + h22 + h33
)


def row_beta_spatial(i, trh):
    return (
        -1 / (2 * N**2)
        * (
            xi[i] * h00
            + sum(X[k] * X[j] * xi[i] * h(k, j) for k in (1, 2, 3) for j in (1, 2, 3))
            - 2 * sum(X[l] * xi[i] * h(0, l) for l in (1, 2, 3))
        )
        + sp.Rational(1, 2) * xi[i] * (h11 + h22 + h33)
        - 1 / N**2 * (S * h(0, i) - sum(X[k] * S * h(k, i) for k in (1, 2, 3)))
        - sum(xi[k] * h(k, i) for k in (1, 2, 3))
    )


row_beta_time = (
    -1 / N**2 * (S * h00 - sum(X[k] * S * h(k, 0) for k in (1, 2, 3)))
    - sum(xi[k] * h(k, 0) for k in (1, 2, 3))
)


def rows_to_matrix(rows):
    return sp.Matrix([[sp.expand(r).coeff(u) for u in unknowns] for r in rows])


formula_rows = [
    row_H,
    row_trK,
    row_omega(2),
    row_omega(3),
    row_beta_spatial(1, trh_double),
    row_beta_spatial(2, trh_double),
    row_beta_spatial(3, trh_double),
    row_beta_time,
]
B_full_formula = rows_to_matrix(formula_rows)
Bt_formula = B_full_formula[:, :8]  # reduced block: columns G, h00, h0i, h1i

# Full 11x11: three Dirichlet rows (h22, h23, h33) on top.
dirichlet = sp.zeros(3, 11)
dirichlet[0, 8] = 1
dirichlet[1, 9] = 1
dirichlet[2, 10] = 1
B11_formula = sp.Matrix.vstack(dirichlet, B_full_formula)

# ---------------------------------------------------------------------------
# Hand transcription of the reduced block: Bt_display = -(1/(2N^2)) * M.
# ---------------------------------------------------------------------------

M_display = sp.Matrix([
    [0, 0, 0, 0, 0, 0, 2*N**2*xi2, 2*N**2*xi3],
    [0, 0, 0, 2*N*xi2, 2*N*xi3, 0, -2*N*xi2*X1, -2*N*xi3*X1],
    [-2*N**3*xi2, 0, N*xi2, N*xi1, 0, -N*xi2*X1, N*xi3*X3, -N*xi2*X3],
    [-2*N**3*xi3, 0, N*xi3, 0, N*xi1, -N*xi3*X1, -N*xi3*X2, N*xi2*X2],
    [0, xi1, 2*S - 2*xi1*X1, -2*xi1*X2, -2*xi1*X3,
     xi1*X1*X1 + N**2*xi1 - 2*S*X1,
     xi1*X1*X2 - 2*S*X2 + 2*N**2*xi2,
     xi1*X1*X3 - 2*S*X3 + 2*N**2*xi3],
    [0, xi2, -2*xi2*X1, 2*S - 2*xi2*X2, -2*xi2*X3,
     xi2*X1*X1 - N**2*xi2,
     xi2*X1*X2 - 2*S*X1 + 2*N**2*xi1,
     xi2*X1*X3],
    [0, xi3, -2*xi3*X1, -2*xi3*X2, 2*S - 2*xi3*X3,
     xi3*X1*X1 - N**2*xi3,
     xi3*X1*X2,
     xi3*X1*X3 - 2*S*X1 + 2*N**2*xi1],
    [0, 2*S, 2*(N**2*xi1 - S*X1), 2*(N**2*xi2 - S*X2), 2*(N**2*xi3 - S*X3),
     0, 0, 0],
])
Bt_display = -1 / (2 * N**2) * M_display

# The two variants must agree except for a rank-1 correction: the gauge rows
# double the mixed-column entries (columns h12, h13) relative to the
# transcription.
v = sp.Matrix([0, 0, 0, 0, xi1, xi2, xi3, 0])
w = sp.Matrix([0, 0, 0, 0, 0, 0, X1 * X2, X1 * X3])
rank1_diff = sp.simplify(Bt_formula - (Bt_display + (-1 / (2 * N**2)) * v * w.T))
check("variant difference is the expected rank-1 correction",
      rank1_diff == sp.zeros(8, 8))
if rank1_diff != sp.zeros(8, 8):
    print("    unexplained difference:")
    sp.pprint(rank1_diff)

# ---------------------------------------------------------------------------
# Row-factor extraction:  det Bt = -(1 / (32 N^11)) det Bhat.
# ---------------------------------------------------------------------------

factors = [-2 * N**2, 2 * N, N, N, 1, 1, 1, 2]
Bhat = sp.Matrix([[sp.cancel(M_display[i, j] / factors[i]) for j in range(8)]
                  for i in range(8)])

Bhat_expected = sp.Matrix([
    [0, 0, 0, 0, 0, 0, -xi2, -xi3],
    [0, 0, 0, xi2, xi3, 0, -xi2*X1, -xi3*X1],
    [-2*N**2*xi2, 0, xi2, xi1, 0, -xi2*X1, xi3*X3, -xi2*X3],
    [-2*N**2*xi3, 0, xi3, 0, xi1, -xi3*X1, -xi3*X2, xi2*X2],
    [0, xi1, 2*S - 2*xi1*X1, -2*xi1*X2, -2*xi1*X3,
     xi1*X1*X1 + N**2*xi1 - 2*S*X1,
     xi1*X1*X2 - 2*S*X2 + 2*N**2*xi2,
     xi1*X1*X3 - 2*S*X3 + 2*N**2*xi3],
    [0, xi2, -2*xi2*X1, 2*S - 2*xi2*X2, -2*xi2*X3,
     xi2*X1*X1 - N**2*xi2,
     xi2*X1*X2 - 2*S*X1 + 2*N**2*xi1,
     xi2*X1*X3],
    [0, xi3, -2*xi3*X1, -2*xi3*X2, 2*S - 2*xi3*X3,
     xi3*X1*X1 - N**2*xi3,
     xi3*X1*X2,
     xi3*X1*X3 - 2*S*X1 + 2*N**2*xi1],
    [0, S, N**2*xi1 - S*X1, N**2*xi2 - S*X2, N**2*xi3 - S*X3, 0, 0, 0],
])
check("row-factor extraction matches the reduced transcription",
      sp.expand(Bhat - Bhat_expected) == sp.zeros(8, 8))

prod_factors = sp.prod(factors)  # = -8 N^5
det_relation = sp.simplify(
    (-1 / (2 * N**2)) ** 8 * prod_factors - (-1 / (32 * N**11))
)
check("scalar bookkeeping: det Bt = -(1/(32 N^11)) det Bhat",
      det_relation == 0)

# ---------------------------------------------------------------------------
# Five-stage elementary replay (row/column additions only, det preserved).
# ---------------------------------------------------------------------------


def add_row(mat, dst, src, coeff):
    out = mat.copy()
    out[dst, :] = sp.expand(out[dst, :] + coeff * out[src, :])
    return out


def add_col(mat, dst, src, coeff):
    out = mat.copy()
    out[:, dst] = sp.expand(out[:, dst] + coeff * out[:, src])
    return out


stage = Bhat
# stage 1
stage = add_row(stage, 1, 0, -X1)
stage = add_row(stage, 4, 0, 2 * N**2)
B1 = stage
# stage 2
stage = add_row(stage, 7, 1, -N**2)
B2 = stage
# stage 3
stage = add_col(stage, 5, 1, N**2)
stage = add_col(stage, 2, 1, X1)
stage = add_col(stage, 3, 1, X2)
stage = add_col(stage, 4, 1, X3)
B3 = stage
# stage 4
stage = add_col(stage, 5, 2, X1)
stage = add_col(stage, 6, 3, X1)
stage = add_col(stage, 7, 4, X1)
B4 = stage
# stage 5
stage = add_col(stage, 2, 1, X1)
stage = add_col(stage, 3, 1, X2)
stage = add_col(stage, 4, 1, X3)
stage = add_col(stage, 2, 0, 1 / (2 * N**2))
stage = add_row(stage, 1, 0, X1)
B5 = stage

B5_expected = sp.Matrix([
    [0, 0, 0, 0, 0, 0, -xi2, -xi3],
    [0, 0, 0, xi2, xi3, 0, 0, 0],
    [-2*N**2*xi2, 0, 0, xi1, 0, 0, xi3*X3 + xi1*X1, -xi2*X3],
    [-2*N**2*xi3, 0, 0, 0, xi1, 0, -xi3*X2, xi2*X2 + xi1*X1],
    [0, xi1, 2*S, 0, 0, 2*N**2*xi1, -2*S*X2, -2*S*X3],
    [0, xi2, 0, 2*S, 0, 0, 2*N**2*xi1, 0],
    [0, xi3, 0, 0, 2*S, 0, 0, 2*N**2*xi1],
    [0, S, N**2*xi1 + S*X1, S*X2, S*X3, N**2*S + N**2*xi1*X1, 0, 0],
])
check("replay endpoint matches the fully reduced transcription",
      sp.expand(B5 - B5_expected) == sp.zeros(8, 8))

B1_expected = Bhat_expected.copy()
B1_expected[1, :] = sp.Matrix([[0, 0, 0, xi2, xi3, 0, 0, 0]])
B1_expected[4, 6] = xi1*X1*X2 - 2*S*X2
B1_expected[4, 7] = xi1*X1*X3 - 2*S*X3
check("replay stage-1 checkpoint", sp.expand(B1 - B1_expected) == sp.zeros(8, 8))

B2_expected = B1_expected.copy()
B2_expected[7, 3] = -S*X2
B2_expected[7, 4] = -S*X3
check("replay stage-2 checkpoint", sp.expand(B2 - B2_expected) == sp.zeros(8, 8))

B3_expected = sp.Matrix([
    [0, 0, 0, 0, 0, 0, -xi2, -xi3],
    [0, 0, 0, xi2, xi3, 0, 0, 0],
    [-2*N**2*xi2, 0, xi2, xi1, 0, -xi2*X1, xi3*X3, -xi2*X3],
    [-2*N**2*xi3, 0, xi3, 0, xi1, -xi3*X1, -xi3*X2, xi2*X2],
    [0, xi1, 2*S - xi1*X1, -xi1*X2, -xi1*X3,
     xi1*X1*X1 + 2*N**2*xi1 - 2*S*X1, xi1*X1*X2 - 2*S*X2, xi1*X1*X3 - 2*S*X3],
    [0, xi2, -xi2*X1, 2*S - xi2*X2, -xi2*X3,
     xi2*X1*X1, xi2*X1*X2 - 2*S*X1 + 2*N**2*xi1, xi2*X1*X3],
    [0, xi3, -xi3*X1, -xi3*X2, 2*S - xi3*X3,
     xi3*X1*X1, xi3*X1*X2, xi3*X1*X3 - 2*S*X1 + 2*N**2*xi1],
    [0, S, N**2*xi1, 0, 0, N**2*S, 0, 0],
])
check("replay stage-3 checkpoint", sp.expand(B3 - B3_expected) == sp.zeros(8, 8))

B4_expected = sp.Matrix([
    [0, 0, 0, 0, 0, 0, -xi2, -xi3],
    [0, 0, 0, xi2, xi3, 0, xi2*X1, xi3*X1],
    [-2*N**2*xi2, 0, xi2, xi1, 0, 0, xi3*X3 + xi1*X1, -xi2*X3],
    [-2*N**2*xi3, 0, xi3, 0, xi1, 0, -xi3*X2, xi2*X2 + xi1*X1],
    [0, xi1, 2*S - xi1*X1, -xi1*X2, -xi1*X3, 2*N**2*xi1, -2*S*X2, -2*S*X3],
    [0, xi2, -xi2*X1, 2*S - xi2*X2, -xi2*X3, 0, 2*N**2*xi1, 0],
    [0, xi3, -xi3*X1, -xi3*X2, 2*S - xi3*X3, 0, 0, 2*N**2*xi1],
    [0, S, N**2*xi1, 0, 0, N**2*S + N**2*xi1*X1, 0, 0],
])
check("replay stage-4 checkpoint", sp.expand(B4 - B4_expected) == sp.zeros(8, 8))

check("replay preserves the determinant",
      sp.simplify(B5.det() - Bhat.det()) == 0)

# ---------------------------------------------------------------------------
# Closed-form determinants.
# ---------------------------------------------------------------------------

det_Bhat = sp.factor(Bhat.det())
closed_display = 8 * N**4 * (N**2 * xi1**2 - S**2) ** 2 * (xi2**2 + xi3**2) ** 2
check("det Bhat (transcription) = 8 N^4 (N^2 xi1^2 - S^2)^2 (xi2^2 + xi3^2)^2",
      sp.simplify(det_Bhat - closed_display) == 0)
print("    det Bhat (transcription) =", det_Bhat)

det_Bt_display = sp.factor(sp.simplify(Bt_display.det()))
check("det Bt (transcription) matches -(1/(32 N^11)) det Bhat",
      sp.simplify(det_Bt_display + closed_display / (32 * N**11)) == 0)

det_Bt_formula = sp.factor(sp.simplify(Bt_formula.det()))
print("    det Bt (first-principles) =", det_Bt_formula)

det_B11_formula = sp.simplify(B11_formula.det())
check("11x11 block determinant equals the reduced determinant (first-principles)",
      sp.simplify(det_B11_formula - det_Bt_formula) == 0)

# ---------------------------------------------------------------------------
# Half-plane certificate.  Interior symbol (conormal variable in slot 1):
#   a(xi) = |xi|^2 - S^2 / N^2.
# Substitute xi1 -> z; the remainder of the determinant as a polynomial in z
# modulo a must be free of z and of the shift vector.
# ---------------------------------------------------------------------------

a_sym = (z**2 + xi2**2 + xi3**2
         - (z * X1 + xi2 * X2 + xi3 * X3) ** 2 / N**2)


def certificate(det_expr, label):
    det_z = det_expr.subs(xi1, z)
    rem = sp.simplify(sp.rem(sp.together(det_z), sp.together(a_sym), z))
    zfree = rem.diff(z) == 0
    xfree = all(sp.simplify(rem.diff(Xi)) == 0 for Xi in (X1, X2, X3))
    print(f"    remainder[{label}] =", sp.factor(rem))
    return rem, zfree, xfree


rem_disp, zf_d, xf_d = certificate(closed_display, "det Bhat, transcription")
check("certificate (transcription): z-free", zf_d)
check("certificate (transcription): shift-free", xf_d)
check("certificate (transcription) = 8 N^8 (xi2^2 + xi3^2)^4",
      sp.simplify(rem_disp - 8 * N**8 * (xi2**2 + xi3**2) ** 4) == 0)

det_formula_scaled = sp.simplify(det_Bt_formula * (-32 * N**11))
rem_form, zf_f, xf_f = certificate(det_formula_scaled, "det Bhat, first-principles")
check("certificate (first-principles): z-free", zf_f)
check("certificate (first-principles): shift-free", xf_f)

# Value of det Bt at the upper root of a (degenerate quadratic handled by the
# closed form): det Bt at root = -(xi2^2 + xi3^2)^4 / (4 N^3).
root_value = sp.simplify(-rem_disp / (32 * N**11))
check("det Bt at the upper root = -(xi2^2+xi3^2)^4 / (4 N^3)",
      sp.simplify(root_value + (xi2**2 + xi3**2) ** 4 / (4 * N**3)) == 0)

# ---------------------------------------------------------------------------
# Frozen rational spot values for the C++ golden tests.
# ---------------------------------------------------------------------------

spots = [
    {"name": "flat", "subs": {N: 1, X1: 0, X2: 0, X3: 0,
                              xi1: 2, xi2: 1, xi3: 1}},
    {"name": "generic", "subs": {N: sp.Rational(3, 2), X1: sp.Rational(1, 4),
                                 X2: sp.Rational(-1, 8), X3: sp.Rational(1, 3),
                                 xi1: 1, xi2: sp.Rational(1, 2),
                                 xi3: sp.Rational(-2, 3)}},
]
print()
print("frozen spot values (exact rationals):")
for spot in spots:
    sub = spot["subs"]
    dhat = sp.nsimplify(closed_display.subs(sub))
    dt_disp = sp.Rational(sp.nsimplify(sp.simplify(det_Bt_display.subs(sub))))
    dt_form = sp.Rational(sp.nsimplify(sp.simplify(det_Bt_formula.subs(sub))))
    rem_val = sp.nsimplify(rem_disp.subs(sub))
    print(f"  point '{spot['name']}': {sub}")
    print(f"    det Bhat                 = {dhat}")
    print(f"    det Bt (transcription)   = {dt_disp}")
    print(f"    det Bt (first-principles)= {dt_form}")
    print(f"    certificate remainder    = {rem_val}")

print()
if failures:
    print("FAILED:", ", ".join(failures))
    sys.exit(1)
print("all boundary-symbol oracle checks passed")
