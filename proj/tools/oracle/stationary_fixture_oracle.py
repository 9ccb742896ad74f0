#!/usr/bin/env python3
"""Independent oracle for the stationary vacuum fixtures.

Validates the closed-form 4-metrics that the C++ geometry module ships as
fixtures, using exact symbolic differentiation (no finite differences):

  1. the rotating fixture in quasi-isotropic Cartesian coordinates is Ricci
     flat at sample points (including on the rotation axis) outside its
     ergoregion,
  2. it degenerates to the conformally flat static fixture when the spin is
     zero, and the static fixture to the flat exterior when the mass is zero,
  3. lapse/shift readoffs and the ergoregion/horizon radii used to justify
     the probe annulus,
  4. frozen boundary-data spot values (mean curvature of coordinate spheres,
     trace of the second fundamental form, twist covector) computed here with
     symbolic derivatives, consumed by the C++ golden tests,
  5. sanity anchors: unit sphere in the flat exterior has mean curvature 2;
     the static fixture sphere of radius 2 at unit mass has 48/125.

Exit status is nonzero if any check fails.
"""

import sys

import sympy as sp

failures = []


def check(name, ok):
    status = "ok" if ok else "FAIL"
    print(f"[{status}] {name}")
    if not ok:
        failures.append(name)


x1, x2, x3 = sp.symbols("x1 x2 x3", real=True)
coords = (x1, x2, x3)
rho = sp.sqrt(x1**2 + x2**2 + x3**2)
q = (-x2, x1, sp.Integer(0))


def rotating_scalars(m, a):
    """Spatial metric alpha*delta + beta*q(x)q, shift covector, and time-time
    component of the rotating fixture in quasi-isotropic Cartesian
    coordinates.  The beta coefficient uses the identity
    (A - Sigma^2)/sin^2(theta) = a^2 (Sigma + 2 m r), so every expression is
    regular on the rotation axis."""
    r = rho + m + (m**2 - a**2) / (4 * rho)
    Sigma = r**2 + a**2 * x3**2 / rho**2
    alpha = Sigma / rho**2
    beta = a**2 * (Sigma + 2 * m * r) / (Sigma * rho**4)
    Xcov = [-(2 * m * a * r / (Sigma * rho**2)) * q[i] for i in range(3)]
    g00 = -(1 - 2 * m * r / Sigma)
    return alpha, beta, Xcov, g00


def static_scalars(m):
    psi = 1 + m / (2 * rho)
    alpha = psi**4
    g00 = -((1 - m / (2 * rho)) / psi) ** 2
    return alpha, sp.Integer(0), [sp.Integer(0)] * 3, g00


def metric4(scalars):
    alpha, beta, Xcov, g00 = scalars
    g = sp.zeros(4, 4)
    g[0, 0] = g00
    for i in range(3):
        g[0, i + 1] = g[i + 1, 0] = Xcov[i]
        for j in range(3):
            g[i + 1, j + 1] = alpha * sp.eye(3)[i, j] + beta * q[i] * q[j]
    return g


def ricci_at(g, point, prec=30):
    """Ricci tensor of a stationary 4-metric at a spatial point, by exact
    symbolic derivatives evaluated numerically."""
    subs = dict(zip(coords, point))

    def ev(e):
        return sp.N(e.subs(subs), prec)

    g0 = sp.Matrix(4, 4, lambda i, j: ev(g[i, j]))
    ginv = g0.inv()
    dg = [sp.zeros(4, 4)] + [
        sp.Matrix(4, 4, lambda i, j: ev(sp.diff(g[i, j], c))) for c in coords
    ]
    ddg = [[sp.zeros(4, 4)] * 4 for _ in range(4)]
    for ci in range(1, 4):
        for cj in range(ci, 4):
            m2 = sp.Matrix(
                4, 4,
                lambda i, j: ev(sp.diff(g[i, j], coords[ci - 1], coords[cj - 1])),
            )
            ddg[ci][cj] = m2
            ddg[cj][ci] = m2

    def Gamma(l, mu, nu):
        return sum(
            ginv[l, s] * (dg[mu][s, nu] + dg[nu][s, mu] - dg[s][mu, nu])
            for s in range(4)
        ) / 2

    def dGamma(k, l, mu, nu):
        # derivative of Gamma^l_{mu nu} along coordinate k (k >= 1)
        dginv = -ginv * dg[k] * ginv
        total = sum(
            dginv[l, s] * (dg[mu][s, nu] + dg[nu][s, mu] - dg[s][mu, nu])
            for s in range(4)
        )
        total += sum(
            ginv[l, s]
            * (ddg[k][mu][s, nu] + ddg[k][nu][s, mu] - ddg[k][s][mu, nu])
            for s in range(4)
        )
        return total / 2

    ric = sp.zeros(4, 4)
    for mu in range(4):
        for nu in range(mu, 4):
            val = sp.Integer(0)
            for l in range(1, 4):
                val += dGamma(l, l, mu, nu)
            if nu >= 1:
                val -= sum(dGamma(nu, l, mu, l) for l in range(4))
            for l in range(4):
                for s in range(4):
                    val += Gamma(l, l, s) * Gamma(s, mu, nu)
                    val -= Gamma(l, nu, s) * Gamma(s, mu, l)
            ric[mu, nu] = ric[nu, mu] = val
    return ric


def max_abs(mat):
    return max(abs(mat[i, j]) for i in range(mat.rows) for j in range(mat.cols))


m_val = sp.Integer(1)
a_val = sp.Rational(1, 2)
rot = rotating_scalars(m_val, a_val)
g_rot = metric4(rot)

# Horizon and ergoregion radii for unit mass, spin 1/2.
rho_h = sp.sqrt(m_val**2 - a_val**2) / 2
check("coordinate horizon radius = sqrt(3)/4 ~ 0.433",
      sp.simplify(rho_h - sp.sqrt(3) / 4) == 0)
rho_ergo_eq = (m_val + a_val) / 2
check("equatorial ergoregion radius = 3/4", rho_ergo_eq == sp.Rational(3, 4))

points = [
    (sp.Rational(11, 10), 0, 0),
    (0, sp.Rational(3, 2), sp.Rational(1, 2)),
    (1, 1, 1),
    (sp.Rational(-5, 4), sp.Rational(1, 3), sp.Rational(7, 8)),
    (2, 0, 0),
    (0, 0, 2),
]
worst = 0
for p in points:
    worst = max(worst, max_abs(ricci_at(g_rot, p)))
print(f"    max |Ric| over rotating-fixture sample points = {sp.N(worst, 3)}")
check("rotating fixture is Ricci flat at sample points", worst < sp.Float("1e-20"))

g_stat = metric4(static_scalars(m_val))
diff = sp.simplify(metric4(rotating_scalars(m_val, 0)) - g_stat)
check("zero spin degenerates to the static fixture", diff == sp.zeros(4, 4))
flat_diff = sp.simplify(metric4(static_scalars(0)) - sp.diag(-1, 1, 1, 1))
check("zero mass degenerates to the flat exterior", flat_diff == sp.zeros(4, 4))
worst_s = max_abs(ricci_at(g_stat, (sp.Rational(3, 2), sp.Rational(-1, 2), 1)))
check("static fixture is Ricci flat at a sample point",
      worst_s < sp.Float("1e-20"))

# ---------------------------------------------------------------------------
# Lapse and shift readoffs: X_i = g_{0i}, N^2 = -g_00 + g^{ij} X_i X_j
# (spatial inverse), future unit normal (d_t - X)/N.
# ---------------------------------------------------------------------------


def spatial_inverse(alpha, beta):
    """(alpha*delta + beta*qq)^{-1} via the rank-1 update formula."""
    q2 = x1**2 + x2**2
    coeff = beta / (alpha * (alpha + beta * q2))
    return sp.Matrix(
        3, 3, lambda i, j: sp.eye(3)[i, j] / alpha - coeff * q[i] * q[j]
    )


def adm(scalars, point):
    alpha, beta, Xcov_sym, g00 = scalars
    subs = dict(zip(coords, point))
    gs = sp.Matrix(3, 3, lambda i, j: sp.nsimplify(
        (alpha * sp.eye(3)[i, j] + beta * q[i] * q[j]).subs(subs)))
    Xc = sp.Matrix([sp.nsimplify(e.subs(subs)) for e in Xcov_sym])
    Xv = gs.inv() * Xc
    N2 = -sp.nsimplify(g00.subs(subs)) + (Xc.T * Xv)[0, 0]
    return gs, sp.sqrt(N2), Xv, Xc


p_eq = (2, 0, 0)
gs, Nval, Xvec, Xcov = adm(rot, p_eq)
check("shift at (2,0,0) is azimuthal", Xcov[0] == 0 and Xcov[2] == 0)
u2 = sp.simplify(Nval**2 - (Xcov.T * Xvec)[0, 0])
check("projection norm u^2 > 0 outside the ergoregion (point (2,0,0))", u2 > 0)

# ---------------------------------------------------------------------------
# Boundary data of coordinate spheres: mean curvature H = div(n) of the
# outward unit normal foliation, trace of the second fundamental form
# k = tr_gamma K with K = -(1/2N) L_X g, twist covector tau = K(n, .)^T.
# All computed from the spatial metric with symbolic derivatives.
# ---------------------------------------------------------------------------


def sphere_data(scalars, point, prec=40):
    alpha, beta, Xcov_sym, g00 = scalars
    subs = dict(zip(coords, point))

    def ev(e):
        return sp.N(e.subs(subs), prec)

    gs_sym = sp.Matrix(3, 3, lambda i, j: alpha * sp.eye(3)[i, j]
                       + beta * q[i] * q[j])
    gs_inv_sym = spatial_inverse(alpha, beta)
    lvl = [sp.diff(rho, c) for c in coords]  # d(rho), outward co-normal

    norm2 = sum(
        gs_inv_sym[i, j] * lvl[i] * lvl[j] for i in range(3) for j in range(3)
    )
    n_sym = [
        sum(gs_inv_sym[i, j] * lvl[j] for j in range(3)) / sp.sqrt(norm2)
        for i in range(3)
    ]

    # det(alpha*delta + beta*qq) = alpha^2 (alpha + beta |q|^2)
    detg = alpha**2 * (alpha + beta * (x1**2 + x2**2))
    H = sum(
        sp.diff(sp.sqrt(detg) * n_sym[i], coords[i]) for i in range(3)
    ) / sp.sqrt(detg)
    Hval = ev(H)

    # second fundamental form of the time slice
    Xvec_sym = [
        sum(gs_inv_sym[i, j] * Xcov_sym[j] for j in range(3)) for i in range(3)
    ]
    N2_sym = -g00 + sum(Xcov_sym[i] * Xvec_sym[i] for i in range(3))
    LXg = sp.Matrix(
        3, 3,
        lambda i, j: sum(Xvec_sym[k] * sp.diff(gs_sym[i, j], coords[k])
                         for k in range(3))
        + sum(gs_sym[k, j] * sp.diff(Xvec_sym[k], coords[i]) for k in range(3))
        + sum(gs_sym[i, k] * sp.diff(Xvec_sym[k], coords[j]) for k in range(3)),
    )
    K_sym = -LXg / (2 * sp.sqrt(N2_sym))
    Kval = sp.Matrix(3, 3, lambda i, j: ev(K_sym[i, j]))
    gs_num = sp.Matrix(3, 3, lambda i, j: ev(gs_sym[i, j]))
    nval = sp.Matrix([ev(e) for e in n_sym])
    ncov = gs_num * nval

    proj = sp.eye(3) - nval * ncov.T  # tangential projector (mixed indices)
    Ktan = proj.T * Kval * proj
    kval = sum((gs_num.inv() * Ktan)[i, i] for i in range(3))
    Kn = Kval * nval
    tau = proj.T * Kn  # tangential covector components
    return Hval, kval, tau


# Anchors.
H_unit, k_unit, tau_unit = sphere_data(static_scalars(0), (0, 0, 1))
check("flat exterior: unit sphere mean curvature = 2",
      abs(H_unit - 2) < sp.Float("1e-30"))
check("flat exterior: sphere data (k, tau) vanish",
      abs(k_unit) < sp.Float("1e-30") and max_abs(tau_unit) < sp.Float("1e-30"))

H_s, k_s, tau_s = sphere_data(static_scalars(m_val), (0, 2, 0))
check("static fixture: H(rho=2, m=1) = 48/125",
      abs(H_s - sp.Rational(48, 125)) < sp.Float("1e-30"))
check("static fixture: k = 0 and tau = 0",
      abs(k_s) < sp.Float("1e-30") and max_abs(tau_s) < sp.Float("1e-30"))

print()
print("frozen spot values (30 significant digits):")
for p in [(2, 0, 0), (sp.Rational(6, 5), 0, sp.Rational(9, 10))]:
    Hv, kv, tauv = sphere_data(rot, p)
    print(f"  rotating fixture (m=1, a=1/2), point {tuple(map(str, p))}:")
    print(f"    H   = {sp.N(Hv, 30)}")
    print(f"    k   = {sp.N(kv, 30)}")
    print(f"    tau = ({sp.N(tauv[0], 30)}, {sp.N(tauv[1], 30)}, {sp.N(tauv[2], 30)})")
gs2, N2v, Xv2, Xc2 = adm(rot, (2, 0, 0))
print(f"  lapse N at (2,0,0)      = {sp.N(N2v, 30)}")
print(f"  shift covector at (2,0,0) = (0, {sp.N(Xc2[1], 30)}, 0)")

print()
if failures:
    print("FAILED:", ", ".join(failures))
    sys.exit(1)
print("all stationary-fixture oracle checks passed")
