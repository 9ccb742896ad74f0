#!/usr/bin/env python3
"""Oracle for the quotient (projection) formalism identities on the Kerr fixture.

Pins every slot/sign convention used by the geometry module and freezes
high-precision spot values for the C++ tests:

  * connection identities for the stationary Killing field,
  * the Lie/deformation decompositions of alpha^2 = (dt+theta)^2 and delta*Y,
  * the Bianchi-free property of alpha^2,
  * the quotient vacuum system (Ricci / twist / lapse equations),
  * the decomposition of the rough Laplacian of a t-independent vector field,
    including adjudication of its relation to the Bianchi-gauge operator.

All derivatives are exact (sympy); evaluation uses mpmath at 50 digits.
Residuals of true identities land near 1e-40; the pass threshold is 1e-30.
"""

import sympy as sp
from sympy import Rational as R
import mpmath as mp

mp.mp.dps = 50

x1, x2, x3 = sp.symbols('x1 x2 x3', real=True)
XS = (x1, x2, x3)

# ---------------------------------------------------------------- fixture
# Kerr, quasi-isotropic spatial coordinates, m = 1, a = 1/2.
m = sp.Integer(1)
a = R(1, 2)
rho = sp.sqrt(x1 * x1 + x2 * x2 + x3 * x3)
r_bl = rho + m + (m * m - a * a) / (4 * rho)
Sigma = r_bl * r_bl + a * a * x3 * x3 / (rho * rho)
q = (-x2, x1, sp.Integer(0))

g4s = sp.zeros(4, 4)
g4s[0, 0] = -(1 - 2 * m * r_bl / Sigma)
for i in range(3):
    g4s[0, i + 1] = g4s[i + 1, 0] = -(2 * m * a * r_bl / (Sigma * rho ** 2)) * q[i]
for i in range(3):
    for j in range(3):
        g4s[i + 1, j + 1] = (Sigma / rho ** 2) * (1 if i == j else 0) \
            + (a * a * (Sigma + 2 * m * r_bl) / (Sigma * rho ** 4)) * q[i] * q[j]

# projection split: g4 = -u^2 (dt+theta)^2 + g_S
u2s = -g4s[0, 0]
us = sp.sqrt(u2s)
thetas = [g4s[0, i + 1] / g4s[0, 0] for i in range(3)]
gSs = sp.zeros(3, 3)
for i in range(3):
    for j in range(3):
        gSs[i, j] = g4s[i + 1, j + 1] - g4s[0, i + 1] * g4s[0, j + 1] / g4s[0, 0]

# t-independent test vector fields (4D components, decaying rational in x)
Ya = (x1 / rho ** 3, x3 / rho ** 3, x1 * x2 / rho ** 4, 1 / rho)
Yb = (x3 / rho ** 2, x2 / rho ** 3, 1 / rho, x1 * x3 / rho ** 4)
Yc = (x2 / rho ** 3, 1 / rho, x3 / rho ** 2, x2 * x3 / rho ** 4)

def perp_of(Y):
    """Y_perp = u^{-1} <Y, dt> (4D inner product against the Killing field)."""
    e = g4s[0, 0] * Y[0]
    for i in range(3):
        e += g4s[0, i + 1] * Y[i + 1]
    return e / us

# ------------------------------------------------------- lambdified fields
FUN = {}

def reg_scalar(name, expr, order=2):
    FUN[name] = sp.lambdify(XS, expr, modules='mpmath')
    if order >= 1:
        for k in range(3):
            FUN[f'{name}_d{k}'] = sp.lambdify(XS, sp.diff(expr, XS[k]), modules='mpmath')
    if order >= 2:
        for aa in range(3):
            for bb in range(aa, 3):
                FUN[f'{name}_dd{aa}{bb}'] = sp.lambdify(
                    XS, sp.diff(expr, XS[aa], XS[bb]), modules='mpmath')

print('[setup] differentiating and compiling field tables ...')
reg_scalar('u', us)
for i in range(3):
    reg_scalar(f'th{i}', thetas[i])
for i in range(3):
    for j in range(i, 3):
        reg_scalar(f'gS{i}{j}', gSs[i, j])
for mu in range(4):
    for nu in range(mu, 4):
        reg_scalar(f'g4{mu}{nu}', g4s[mu, nu])
for tag, Y in (('Ya', Ya), ('Yb', Yb), ('Yc', Yc)):
    for mu in range(4):
        reg_scalar(f'{tag}{mu}', Y[mu])
    reg_scalar(f'{tag}perp', perp_of(Y))
print('[setup] done')

def F(name, P):
    return FUN[name](*P)

def Fd(name, k, P):
    return FUN[f'{name}_d{k}'](*P)

def Fdd(name, aa, bb, P):
    if aa > bb:
        aa, bb = bb, aa
    return FUN[f'{name}_dd{aa}{bb}'](*P)

def minv(M):
    n = len(M)
    A = mp.matrix(M)
    B = A ** -1
    return [[B[i, j] for j in range(n)] for i in range(n)]

# --------------------------------------------------------- numeric snapshot
class Snap:
    """All geometric data of the fixture at one point, numeric, exact-derivative."""

    def __init__(self, P):
        self.P = P
        self.u = F('u', P)
        self.du = [Fd('u', k, P) for k in range(3)]
        self.ddu = [[Fdd('u', aa, bb, P) for bb in range(3)] for aa in range(3)]
        self.th = [F(f'th{j}', P) for j in range(3)]
        # dth[i][j] = partial_i theta_j
        self.dth = [[Fd(f'th{j}', i, P) for j in range(3)] for i in range(3)]
        self.ddth = [[[Fdd(f'th{j}', aa, bb, P) for j in range(3)]
                      for bb in range(3)] for aa in range(3)]

        def sym3(name):
            return [[F(f'{name}{min(i, j)}{max(i, j)}', P) for j in range(3)] for i in range(3)]

        self.gS = sym3('gS')
        self.dgS = [[[Fd(f'gS{min(i, j)}{max(i, j)}', k, P) for j in range(3)]
                     for i in range(3)] for k in range(3)]
        self.ddgS = [[[[Fdd(f'gS{min(i, j)}{max(i, j)}', aa, bb, P) for j in range(3)]
                       for i in range(3)] for bb in range(3)] for aa in range(3)]
        self.gSi = minv(self.gS)

        self.g4 = [[F(f'g4{min(mu, nu)}{max(mu, nu)}', P) for nu in range(4)] for mu in range(4)]
        # 4D partials: index 0 is t (stationary => zero)
        z4 = [[mp.mpf(0)] * 4 for _ in range(4)]
        self.dg4 = [z4] + [
            [[Fd(f'g4{min(mu, nu)}{max(mu, nu)}', k, P) for nu in range(4)] for mu in range(4)]
            for k in range(3)]
        z44 = [z4]
        self.ddg4 = [[None] * 4 for _ in range(4)]
        for al in range(4):
            for be in range(4):
                if al == 0 or be == 0:
                    self.ddg4[al][be] = z4
                else:
                    self.ddg4[al][be] = [
                        [Fdd(f'g4{min(mu, nu)}{max(mu, nu)}', al - 1, be - 1, P)
                         for nu in range(4)] for mu in range(4)]
        self.g4i = minv(self.g4)

        self.GS = self.christoffel3(self.gSi, self.dgS)
        self.dGS = self.dchristoffel3()
        self.G4 = self.christoffel4(self.g4i, self.dg4)
        self.dG4 = self.dchristoffel4()

        # twist 2-form F_ij = (d theta)_ij = partial_i theta_j - partial_j theta_i
        self.Fth = [[self.dth[i][j] - self.dth[j][i] for j in range(3)] for i in range(3)]
        self.dFth = [[[self.ddth[k][i][j] - self.ddth[k][j][i] for j in range(3)]
                      for i in range(3)] for k in range(3)]

    # ---- 3D machinery
    def christoffel3(self, gi, dg):
        G = [[[mp.mpf(0)] * 3 for _ in range(3)] for _ in range(3)]
        for i in range(3):
            for j in range(3):
                for k in range(3):
                    s = mp.mpf(0)
                    for l in range(3):
                        s += gi[i][l] * (dg[j][l][k] + dg[k][l][j] - dg[l][j][k])
                    G[i][j][k] = s / 2
        return G

    def dchristoffel3(self):
        gi, dg, ddg = self.gSi, self.dgS, self.ddgS
        dgi = []
        for k in range(3):
            M = [[mp.mpf(0)] * 3 for _ in range(3)]
            for i in range(3):
                for j in range(3):
                    s = mp.mpf(0)
                    for aa in range(3):
                        for bb in range(3):
                            s -= gi[i][aa] * dg[k][aa][bb] * gi[bb][j]
                    M[i][j] = s
            dgi.append(M)
        dG = [[[[mp.mpf(0)] * 3 for _ in range(3)] for _ in range(3)] for _ in range(3)]
        for mme in range(3):
            for i in range(3):
                for j in range(3):
                    for k in range(3):
                        s = mp.mpf(0)
                        for l in range(3):
                            s += dgi[mme][i][l] * (dg[j][l][k] + dg[k][l][j] - dg[l][j][k])
                            s += gi[i][l] * (ddg[mme][j][l][k] + ddg[mme][k][l][j]
                                             - ddg[mme][l][j][k])
                        dG[mme][i][j][k] = s / 2
        return dG

    def ric3(self):
        G, dG = self.GS, self.dGS
        Ric = [[mp.mpf(0)] * 3 for _ in range(3)]
        for j in range(3):
            for k in range(3):
                s = mp.mpf(0)
                for i in range(3):
                    s += dG[i][i][j][k] - dG[j][i][i][k]
                    for l in range(3):
                        s += G[i][i][l] * G[l][j][k] - G[i][j][l] * G[l][i][k]
                Ric[j][k] = s
        return Ric

    def hess_scalar(self, val_d, val_dd):
        return [[val_dd[i][j] - sum(self.GS[l][i][j] * val_d[l] for l in range(3))
                 for j in range(3)] for i in range(3)]

    def grad(self, d):
        return [sum(self.gSi[i][j] * d[j] for j in range(3)) for i in range(3)]

    # ---- 4D machinery
    def christoffel4(self, gi, dg):
        G = [[[mp.mpf(0)] * 4 for _ in range(4)] for _ in range(4)]
        for mu in range(4):
            for al in range(4):
                for be in range(4):
                    s = mp.mpf(0)
                    for lam in range(4):
                        s += gi[mu][lam] * (dg[al][lam][be] + dg[be][lam][al]
                                            - dg[lam][al][be])
                    G[mu][al][be] = s / 2
        return G

    def dchristoffel4(self):
        gi, dg, ddg = self.g4i, self.dg4, self.ddg4
        dgi = [[[mp.mpf(0)] * 4 for _ in range(4)] for _ in range(4)]
        for k in range(1, 4):
            for i in range(4):
                for j in range(4):
                    s = mp.mpf(0)
                    for aa in range(4):
                        for bb in range(4):
                            s -= gi[i][aa] * dg[k][aa][bb] * gi[bb][j]
                    dgi[k][i][j] = s
        dG = [[[[mp.mpf(0)] * 4 for _ in range(4)] for _ in range(4)] for _ in range(4)]
        for kk in range(1, 4):
            for mu in range(4):
                for al in range(4):
                    for be in range(4):
                        s = mp.mpf(0)
                        for lam in range(4):
                            s += dgi[kk][mu][lam] * (dg[al][lam][be] + dg[be][lam][al]
                                                     - dg[lam][al][be])
                            s += gi[mu][lam] * (ddg[kk][al][lam][be] + ddg[kk][be][lam][al]
                                                - ddg[kk][lam][al][be])
                        dG[kk][mu][al][be] = s / 2
        return dG

    def lift(self, v):
        """Horizontal lift of a vector v on S: t-component is -theta(v)."""
        return [-sum(self.th[i] * v[i] for i in range(3))] + list(v)

    def inner4(self, Z, W):
        return sum(self.g4[mu][nu] * Z[mu] * W[nu] for mu in range(4) for nu in range(4))

class VField:
    """Numeric data of a t-independent 4D vector field at a point."""

    def __init__(self, tag, P):
        self.Y = [F(f'{tag}{mu}', P) for mu in range(4)]
        z = [mp.mpf(0)] * 4
        self.dY = [z] + [[Fd(f'{tag}{mu}', k, P) for mu in range(4)] for k in range(3)]
        self.ddY = [[None] * 4 for _ in range(4)]
        for al in range(4):
            for be in range(4):
                if al == 0 or be == 0:
                    self.ddY[al][be] = z
                else:
                    self.ddY[al][be] = [Fdd(f'{tag}{mu}', al - 1, be - 1, P) for mu in range(4)]
        self.perp = F(f'{tag}perp', P)
        self.dperp = [Fd(f'{tag}perp', k, P) for k in range(3)]
        self.ddperp = [[Fdd(f'{tag}perp', aa, bb, P) for bb in range(3)] for aa in range(3)]
        self.T = self.Y[1:4]
        self.dT = [[self.dY[k + 1][i + 1] for i in range(3)] for k in range(3)]
        self.ddT = [[[self.ddY[aa + 1][bb + 1][i + 1] for i in range(3)]
                     for bb in range(3)] for aa in range(3)]

PTS = [(R(6, 5), R(0), R(9, 10)),
       (R(2, 3), R(4, 3), R(4, 3)),
       (R(7, 5), R(-3, 5), R(1, 2))]
PTS_MP = [tuple(mp.mpf(p.p) / mp.mpf(p.q) for p in pt) for pt in PTS]

results = []

def report(name, res, tol=mp.mpf('1e-30'), note=''):
    ok = res < tol
    results.append((name, ok))
    print(f'[{"PASS" if ok else "FAIL"}] {name:46s} max|res| = {mp.nstr(res, 3):12s} {note}')

def amax(vals):
    return max(abs(v) for v in vals) if vals else mp.mpf(0)

snaps = [Snap(P) for P in PTS_MP]
print('[setup] snapshots ready')

# ------------------------------------------------ basic split consistency
res = []
for s in snaps:
    alpha = [mp.mpf(1)] + s.th
    tr = sum(s.g4i[mu][nu] * alpha[mu] * alpha[nu] for mu in range(4) for nu in range(4))
    res.append(tr + 1 / s.u ** 2)
report('tr_g alpha^2 = -u^-2', amax(res))

# ------------------------------------------------ Killing-field connection
res = []
for s in snaps:
    gu = s.grad(s.du)
    rhs = [c * s.u for c in s.lift(gu)]
    res += [s.G4[mu][0][0] - rhs[mu] for mu in range(4)]
report('nabla_t dt = u grad u (lifted)', amax(res))

def dtheta_vec(s, v, variant):
    """Vector action of dtheta: variant +1 raises F(v, .), -1 raises F(., v)."""
    out = []
    for i in range(3):
        sacc = mp.mpf(0)
        for jj in range(3):
            for ll in range(3):
                sacc += s.gSi[i][jj] * s.Fth[ll][jj] * v[ll]
        out.append(variant * sacc)
    return out

pin_vec = None
for variant in (+1, -1):
    res = []
    for s in snaps:
        for k in range(3):
            lhs = [s.G4[mu][k + 1][0] - s.th[k] * s.G4[mu][0][0] for mu in range(4)]
            w = dtheta_vec(s, [mp.mpf(1) if i == k else mp.mpf(0) for i in range(3)], variant)
            rhs = [c * (-s.u ** 2 / 2) for c in s.lift(w)]
            rhs[0] += s.du[k] / s.u
            res += [lhs[mu] - rhs[mu] for mu in range(4)]
    if amax(res) < mp.mpf('1e-30'):
        pin_vec = variant
        report('nabla_v dt = -1/2 u^2 dth(v) + u^-1 v(u) dt', amax(res),
               note=f'[pinned: dth(v) raises F(v,.), variant {variant:+d}]')
        break
assert pin_vec is not None, 'no dtheta vector-action variant matched (7.19)'

pin_21 = None
for variant in (+1, -1):
    res = []
    for s in snaps:
        for j in range(3):
            for k in range(3):
                vj = s.lift([mp.mpf(1) if i == j else mp.mpf(0) for i in range(3)])
                cov = [sum(vj[al] * s.G4[mu][al][k + 1] for al in range(4)) for mu in range(4)]
                for mu in range(4):
                    cov[mu] -= s.th[k] * sum(vj[al] * s.G4[mu][al][0] for al in range(4))
                cov[0] -= s.dth[j][k]
                tang = [cov[i + 1] - s.GS[i][j][k] for i in range(3)]
                perp = s.inner4(cov, [1, 0, 0, 0]) - variant * (-s.u ** 2 / 2) * s.Fth[k][j]
                res += tang + [perp]
    if amax(res) < mp.mpf('1e-30'):
        pin_21 = variant
        report('nabla_v w = nabla^S_v w + 1/2 dth(w,v) dt', amax(res),
               note=f'[pinned: dth(w,v) = F_[w][v] slot order, variant {variant:+d}]')
        break
assert pin_21 is not None, 'no slot variant matched (7.21)'

# ------------------------------------------------ Lie derivative of alpha^2
def lie_T(s, vf, Tval, dT):
    """(L_Y T)_{mu nu} for a (0,2) tensor with numeric value/partials."""
    out = [[mp.mpf(0)] * 4 for _ in range(4)]
    for mu in range(4):
        for nu in range(4):
            sacc = mp.mpf(0)
            for lam in range(4):
                sacc += vf.Y[lam] * dT[lam][mu][nu]
                sacc += Tval[lam][nu] * vf.dY[mu][lam]
                sacc += Tval[mu][lam] * vf.dY[nu][lam]
            out[mu][nu] = sacc
    return out

def alpha_sq(s):
    alpha = [mp.mpf(1)] + s.th
    T = [[alpha[mu] * alpha[nu] for nu in range(4)] for mu in range(4)]
    z = [[mp.mpf(0)] * 4 for _ in range(4)]
    dT = [z]
    for k in range(3):
        da = [mp.mpf(0)] + [s.dth[k][i] for i in range(3)]
        dT.append([[da[mu] * alpha[nu] + alpha[mu] * da[nu] for nu in range(4)]
                   for mu in range(4)])
    return T, dT

pin_512 = None
for variant in (+1, -1):
    res = []
    for s, P in zip(snaps, PTS_MP):
        for tag in ('Ya', 'Yb'):
            vf = VField(tag, P)
            T, dT = alpha_sq(s)
            L = lie_T(s, vf, T, dT)
            res.append(L[0][0])
            sv = vf.perp / s.u
            dsv = [(vf.dperp[k] - sv * s.du[k]) / s.u for k in range(3)]
            for k in range(3):
                ek = s.lift([mp.mpf(1) if i == k else mp.mpf(0) for i in range(3)])
                mixed = sum(L[0][mu] * ek[mu] for mu in range(4))
                rhs = variant * sum(s.Fth[ll][k] * vf.T[ll] for ll in range(3)) - dsv[k]
                res.append(mixed - rhs)
                for jj in range(3):
                    ej = s.lift([mp.mpf(1) if i == jj else mp.mpf(0) for i in range(3)])
                    res.append(sum(L[mu][nu] * ej[mu] * ek[nu]
                                   for mu in range(4) for nu in range(4)))
    if amax(res) < mp.mpf('1e-30'):
        pin_512 = variant
        report('L_Y alpha^2 blocks (0, dth(Y^T)-d(Yp/u), 0)', amax(res),
               note=f'[pinned: dth(Y^T) is F(Y^T, .), variant {variant:+d}]')
        break
assert pin_512 is not None, 'no variant matched the mixed block decomposition'

# ------------------------------------------------ deformation tensor blocks
res = []
for s, P in zip(snaps, PTS_MP):
    for tag in ('Ya', 'Yb'):
        vf = VField(tag, P)
        L = lie_T(s, vf, s.g4, s.dg4)
        ds = [[L[mu][nu] / 2 for nu in range(4)] for mu in range(4)]
        res.append(ds[0][0] - (-s.u * sum(vf.T[i] * s.du[i] for i in range(3))))
        sv = vf.perp / s.u
        dsv = [(vf.dperp[k] - sv * s.du[k]) / s.u for k in range(3)]
        for k in range(3):
            ek = s.lift([mp.mpf(1) if i == k else mp.mpf(0) for i in range(3)])
            mixed = sum(ds[0][mu] * ek[mu] for mu in range(4))
            rhs = -(s.u ** 2 / 2) * pin_512 * sum(s.Fth[ll][k] * vf.T[ll] for ll in range(3)) \
                + (s.u ** 2 / 2) * dsv[k]
            res.append(mixed - rhs)
        covT = [[sum(s.gS[i][ll] * (vf.dT[jj][ll] + sum(s.GS[ll][jj][cc] * vf.T[cc]
                                                        for cc in range(3)))
                     for ll in range(3)) for jj in range(3)] for i in range(3)]
        for jj in range(3):
            for k in range(3):
                ej = s.lift([mp.mpf(1) if i == jj else mp.mpf(0) for i in range(3)])
                ek = s.lift([mp.mpf(1) if i == k else mp.mpf(0) for i in range(3)])
                tt = sum(ds[mu][nu] * ej[mu] * ek[nu] for mu in range(4) for nu in range(4))
                res.append(tt - (covT[jj][k] + covT[k][jj]) / 2)
report('delta*Y blocks match quotient formulas', amax(res))

# ------------------------------------------------ Bianchi-free alpha^2
def bianchi_of(s, Tval, dT):
    dgi = [[[mp.mpf(0)] * 4 for _ in range(4)] for _ in range(4)]
    for k in range(1, 4):
        for i in range(4):
            for j in range(4):
                dgi[k][i][j] = -sum(s.g4i[i][aa] * s.dg4[k][aa][bb] * s.g4i[bb][j]
                                    for aa in range(4) for bb in range(4))
    out = []
    for nu in range(4):
        sacc = mp.mpf(0)
        for al in range(4):
            for be in range(4):
                cov = dT[al][be][nu]
                for lam in range(4):
                    cov -= s.G4[lam][al][be] * Tval[lam][nu]
                    cov -= s.G4[lam][al][nu] * Tval[be][lam]
                sacc -= s.g4i[al][be] * cov
        half = mp.mpf(0)
        if nu >= 1:
            half = sum(dgi[nu][al][be] * Tval[al][be] + s.g4i[al][be] * dT[nu][al][be]
                       for al in range(4) for be in range(4)) / 2
        out.append(sacc + half)
    return out

res = []
for s in snaps:
    T, dT = alpha_sq(s)
    res += bianchi_of(s, T, dT)
report('beta_g(alpha^2) = 0 (Bianchi-free)', amax(res))

# ------------------------------------------------ quotient vacuum system
def twist_data(s):
    detg = mp.det(mp.matrix(s.gS))
    sq = mp.sqrt(detg)
    eps = [[[mp.mpf(0)] * 3 for _ in range(3)] for _ in range(3)]
    from itertools import permutations
    for perm in permutations(range(3)):
        sign = mp.mpf(1)
        pl = list(perm)
        for i in range(3):
            for j in range(i + 1, 3):
                if pl[i] > pl[j]:
                    sign = -sign
        eps[perm[0]][perm[1]][perm[2]] = sign * sq
    Fup = [[sum(s.gSi[i][aa] * s.gSi[j][bb] * s.Fth[aa][bb]
                for aa in range(3) for bb in range(3)) for j in range(3)] for i in range(3)]
    om = [-(s.u ** 3 / 2) * sum(eps[i][jj][kk] * Fup[jj][kk]
                                for jj in range(3) for kk in range(3)) / 2 for i in range(3)]
    return om, eps, Fup

def dtwist(s):
    """partial_k omega_i by the chain rule through (u, gS, F)."""
    detg = mp.det(mp.matrix(s.gS))
    sq = mp.sqrt(detg)
    dgi = []
    for k in range(3):
        M = [[-sum(s.gSi[i][aa] * s.dgS[k][aa][bb] * s.gSi[bb][j]
                   for aa in range(3) for bb in range(3)) for j in range(3)] for i in range(3)]
        dgi.append(M)
    dsq = [sq * sum(s.gSi[aa][bb] * s.dgS[k][aa][bb] for aa in range(3) for bb in range(3)) / 2
           for k in range(3)]
    from itertools import permutations
    sgn = {}
    for perm in permutations(range(3)):
        sign = 1
        pl = list(perm)
        for i in range(3):
            for j in range(i + 1, 3):
                if pl[i] > pl[j]:
                    sign = -sign
        sgn[perm] = sign
    out = [[mp.mpf(0)] * 3 for _ in range(3)]
    for k in range(3):
        for i in range(3):
            sacc = mp.mpf(0)
            for perm, sign in sgn.items():
                if perm[0] != i:
                    continue
                jj, kk = perm[1], perm[2]
                Fup = sum(s.gSi[jj][aa] * s.gSi[kk][bb] * s.Fth[aa][bb]
                          for aa in range(3) for bb in range(3))
                dFup = sum(dgi[k][jj][aa] * s.gSi[kk][bb] * s.Fth[aa][bb]
                           + s.gSi[jj][aa] * dgi[k][kk][bb] * s.Fth[aa][bb]
                           + s.gSi[jj][aa] * s.gSi[kk][bb] * s.dFth[k][aa][bb]
                           for aa in range(3) for bb in range(3))
                core = sign * (dsq[k] * Fup + sq * dFup)
                sacc += core
            pref = -(s.u ** 3 / 2) / 2
            dpref = -(3 * s.u ** 2 * s.du[k] / 2) / 2
            base = mp.mpf(0)
            for perm, sign in sgn.items():
                if perm[0] != i:
                    continue
                jj, kk = perm[1], perm[2]
                Fup = sum(s.gSi[jj][aa] * s.gSi[kk][bb] * s.Fth[aa][bb]
                          for aa in range(3) for bb in range(3))
                base += sign * sq * Fup
            out[k][i] = pref * sacc + dpref * base
    return out

res_ric, res_lap, res_div, res_closed = [], [], [], []
pin_lap = None
for s in snaps:
    om, eps, Fup = twist_data(s)
    dom = dtwist(s)
    Ric = s.ric3()
    Hu = s.hess_scalar(s.du, s.ddu)
    om2 = sum(s.gSi[i][j] * om[i] * om[j] for i in range(3) for j in range(3))
    for i in range(3):
        for j in range(3):
            rhs = Hu[i][j] / s.u + 2 * s.u ** -4 * (om[i] * om[j] - om2 * s.gS[i][j])
            res_ric.append(Ric[i][j] - rhs)
    trH = sum(s.gSi[i][j] * Hu[i][j] for i in range(3) for j in range(3))
    res_lap.append((trH, 2 * s.u ** -3 * om2))
    divom = sum(s.gSi[i][j] * (dom[i][j] - sum(s.GS[l][i][j] * om[l] for l in range(3)))
                for i in range(3) for j in range(3))
    res_div.append((divom, 3 * sum(s.grad(s.du)[i] * om[i] for i in range(3)) / s.u))
    res_closed += [dom[i][j] - dom[j][i] for i in range(3) for j in range(3)]

report('Ric_gS = u^-1 Hess u + 2u^-4(w w - |w|^2 gS)', amax(res_ric))
plus = amax([t - r for (t, r) in res_lap])
minus = amax([-t - r for (t, r) in res_lap])
if plus < mp.mpf('1e-30'):
    pin_lap = +1
    report('Lap u = 2 u^-3 |w|^2', plus, note='[pinned: Lap = +tr Hess (div grad)]')
else:
    pin_lap = -1
    report('Lap u = 2 u^-3 |w|^2', minus, note='[pinned: Lap = -tr Hess]')
div_minus = amax([-d + c for (d, c) in res_div])
div_plus = amax([d + c for (d, c) in res_div])
if div_minus < mp.mpf('1e-30'):
    report('div w + 3u^-1 <du,w> = 0', div_minus, note='[pinned: delta = -div on 1-forms]')
    pin_div = -1
else:
    report('div w + 3u^-1 <du,w> = 0', div_plus, note='[pinned: delta = +div on 1-forms]')
    pin_div = +1
report('d w = 0 (twist 1-form closed)', amax(res_closed))

pin_713 = None
for variant in (+1, -1):
    res = []
    for s in snaps:
        dF = s.dFth
        for j in range(3):
            covdiv = mp.mpf(0)
            for k in range(3):
                for i in range(3):
                    cov = dF[k][i][j]
                    for l in range(3):
                        cov -= s.GS[l][k][i] * s.Fth[l][j]
                        cov -= s.GS[l][k][j] * s.Fth[i][l]
                    covdiv += s.gSi[k][i] * cov
            lhs = -s.u * covdiv
            gu = s.grad(s.du)
            rhs = 3 * variant * sum(s.Fth[i][j] * gu[i] for i in range(3))
            res.append(lhs - rhs)
    if amax(res) < mp.mpf('1e-30'):
        pin_713 = variant
        report('u delta dth = 3 dth(grad u)', amax(res),
               note=f'[pinned: delta F = -div(first slot), dth(grad u) = F(grad u, .),'
                    f' variant {variant:+d}]')
        break
assert pin_713 is not None, 'twist divergence identity matched no variant'

res = []
for s in snaps:
    Hu = s.hess_scalar(s.du, s.ddu)
    trH = sum(s.gSi[i][j] * Hu[i][j] for i in range(3) for j in range(3))
    F2 = sum(s.Fth[i][j] * sum(s.gSi[i][aa] * s.gSi[j][bb] * s.Fth[aa][bb]
                               for aa in range(3) for bb in range(3))
             for i in range(3) for j in range(3))
    res.append(pin_lap * trH - (s.u ** 3 / 2) * (F2 / 2))
report('Lap u = 1/2 u^3 |dth|^2 (|.|^2 = 1/2 F.F)', amax(res))

# ------------------------------------------------ rough Laplacian split
def rough4(s, vf):
    DY = [[vf.dY[be][mu] + sum(s.G4[mu][be][lam] * vf.Y[lam] for lam in range(4))
           for mu in range(4)] for be in range(4)]
    out = []
    for mu in range(4):
        sacc = mp.mpf(0)
        for al in range(4):
            for be in range(4):
                term = vf.ddY[al][be][mu] if (al and be) else mp.mpf(0)
                term += sum((s.dG4[al][mu][be][lam] if al else mp.mpf(0)) * vf.Y[lam]
                            for lam in range(4))
                term += sum(s.G4[mu][be][lam] * vf.dY[al][lam] for lam in range(4))
                term += sum(s.G4[mu][al][lam] * DY[be][lam] for lam in range(4))
                term -= sum(s.G4[lam][al][be] * DY[lam][mu] for lam in range(4))
                sacc -= s.g4i[al][be] * term
        out.append(sacc)
    return out

def rough3(s, vf):
    DT = [[vf.dT[b][i] + sum(s.GS[i][b][c] * vf.T[c] for c in range(3))
           for i in range(3)] for b in range(3)]
    out = []
    for i in range(3):
        sacc = mp.mpf(0)
        for aa in range(3):
            for bb in range(3):
                term = vf.ddT[aa][bb][i]
                term += sum(s.dGS[aa][i][bb][c] * vf.T[c] for c in range(3))
                term += sum(s.GS[i][bb][c] * vf.dT[aa][c] for c in range(3))
                term += sum(s.GS[i][aa][c] * DT[bb][c] for c in range(3))
                term -= sum(s.GS[c][aa][bb] * DT[c][i] for c in range(3))
                sacc -= s.gSi[aa][bb] * term
        out.append(sacc)
    return out

print()
print('--- rough-Laplacian decomposition and gauge-operator factor ---')
resT, resP = [], []
factor_probe = []
for s, P in zip(snaps, PTS_MP):
    for tag in ('Ya', 'Yb', 'Yc'):
        vf = VField(tag, P)
        W = rough4(s, vf)
        WT = W[1:4]
        Wperp_line = sum(s.g4[mu][0] * W[mu] for mu in range(4)) / s.u ** 2

        sv = vf.perp / s.u
        dsv = [(vf.dperp[k] - sv * s.du[k]) / s.u for k in range(3)]
        ddsv = [[(vf.ddperp[aa][bb]
                  - dsv[aa] * s.du[bb] - dsv[bb] * s.du[aa] - sv * s.ddu[aa][bb]) / s.u
                 for bb in range(3)] for aa in range(3)]

        gu = s.grad(s.du)
        t1 = rough3(s, vf)
        t2 = [vf.T[i] * 0 for i in range(3)]
        YTu = sum(vf.T[i] * s.du[i] for i in range(3))
        t2 = [YTu * gu[i] / s.u ** 2 for i in range(3)]
        DT = [[vf.dT[b][i] + sum(s.GS[i][b][c] * vf.T[c] for c in range(3))
               for i in range(3)] for b in range(3)]
        t3 = [-sum(gu[b] * DT[b][i] for b in range(3)) / s.u for i in range(3)]
        E1 = dtheta_vec(s, vf.T, pin_vec)
        t4 = [(s.u ** 2 / 2) * c for c in dtheta_vec(s, E1, pin_vec)]
        gsv = s.grad(dsv)
        t5 = [-s.u ** 2 * c for c in dtheta_vec(s, gsv, pin_vec)]
        rhsT = [t1[i] + t2[i] + t3[i] + t4[i] + t5[i] for i in range(3)]
        resT += [WT[i] - rhsT[i] for i in range(3)]

        Hsv = s.hess_scalar(dsv, ddsv)
        lap_sv = pin_lap * sum(s.gSi[i][j] * Hsv[i][j] for i in range(3) for j in range(3))
        c2 = -3 * sum(s.gSi[i][j] * dsv[i] * s.du[j] for i in range(3) for j in range(3)) / s.u
        F2 = sum(s.Fth[i][j] * sum(s.gSi[i][aa] * s.gSi[j][bb] * s.Fth[aa][bb]
                                   for aa in range(3) for bb in range(3))
                 for i in range(3) for j in range(3))
        c3 = (s.u / 4) * vf.perp * (F2 / 2)
        covDY = [[sum(s.gS[j][c] * DT[i][c] for c in range(3)) for j in range(3)]
                 for i in range(3)]
        pairing = sum(sum(s.gSi[i][aa] * s.gSi[j][bb] * s.Fth[aa][bb]
                          for aa in range(3) for bb in range(3)) * covDY[i][j]
                      for i in range(3) for j in range(3))
        c5 = sum(s.Fth[i][j] * gu[i] * vf.T[j] for i in range(3) for j in range(3)) / s.u
        # candidate basis for the perp line; coefficients discovered exactly below
        factor_probe.append((Wperp_line,
                             [lap_sv,
                              sum(s.gSi[i][j] * dsv[i] * s.du[j]
                                  for i in range(3) for j in range(3)) / s.u,
                              s.u * vf.perp * F2,
                              pairing,
                              c5]))

report('[rough Lap Y]^T = quotient T-line RHS', amax(resT))
A = mp.matrix([row for (_, row) in factor_probe])
bvec = mp.matrix([lhs for (lhs, _) in factor_probe])
coef = mp.lu_solve(A.T * A, A.T * bvec)
fitres = A * coef - bvec
names = ['Lap(Yp/u)', 'u^-1<grad(Yp/u),grad u>', 'u Yp F.F', 'F^{ij} nab_i Y_j',
         'u^-1 F(grad u, Y^T)']
print('       perp-line exact coefficient fit:')
for nm, c in zip(names, coef):
    print(f'         {nm:26s} {mp.nstr(c, 20)}')
resP = [abs(v) for v in fitres]
report('<rough Lap Y, u^-2 dt> = fitted perp RHS', amax(resP))
last = factor_probe[-1][1]
print(f'       zero-coefficient term magnitudes at last sample: '
      f'uYpF.F/8 = {mp.nstr(abs(last[2]) / 8, 3)}, '
      f'u^-1F(grad u,Y^T) = {mp.nstr(abs(last[4]), 3)}')

# factor adjudication: rough Laplacian vs Bianchi-gauge composition
res1, res2 = [], []
for s, P in zip(snaps, PTS_MP):
    for tag in ('Ya', 'Yb'):
        vf = VField(tag, P)
        W = rough4(s, vf)
        L = lie_T(s, vf, s.g4, s.dg4)
        ds = [[L[mu][nu] / 2 for nu in range(4)] for mu in range(4)]
        dds_full = [[[mp.mpf(0)] * 4 for _ in range(4)]]
        for k in range(1, 4):
            M = [[mp.mpf(0)] * 4 for _ in range(4)]
            for mu in range(4):
                for nu in range(4):
                    sacc = mp.mpf(0)
                    for lam in range(4):
                        sacc += vf.dY[k][lam] * s.dg4[lam][mu][nu]
                        sacc += vf.Y[lam] * (s.ddg4[k][lam][mu][nu])
                        sacc += s.dg4[k][lam][nu] * vf.dY[mu][lam] \
                            + s.g4[lam][nu] * (vf.ddY[k][mu][lam] if mu else mp.mpf(0))
                        sacc += s.dg4[k][mu][lam] * vf.dY[nu][lam] \
                            + s.g4[mu][lam] * (vf.ddY[k][nu][lam] if nu else mp.mpf(0))
                    M[mu][nu] = sacc / 2
            dds_full.append(M)
        bz = bianchi_of(s, ds, dds_full)
        blow = [sum(s.g4i[mu][nu] * bz[nu] for nu in range(4)) for mu in range(4)]
        for mu in range(4):
            res1.append(W[mu] - 2 * blow[mu])
            res2.append(W[mu] - blow[mu])
report('rough Lap Y = 2 beta delta* Y (vacuum)', amax(res1))
print(f'       (factor-1 alternative residual: {mp.nstr(amax(res2), 3)};'
      ' the printed gauge-operator label carries the factor-2 slip)')

# ------------------------------------------------ frozen spot values (P2)
print()
print('--- frozen spot values at P = (6/5, 0, 9/10), Kerr m=1 a=1/2 ---')
s = snaps[0]
P = PTS_MP[0]
def pr(label, v):
    print(f'  {label:34s} = {mp.nstr(v, 32)}')
pr('u', s.u)
for i in range(3):
    pr(f'theta[{i}]', s.th[i])
for i in range(3):
    for j in range(i + 1, 3):
        pr(f'dtheta[{i}{j}]', s.Fth[i][j])
for i in range(3):
    for j in range(i, 3):
        pr(f'gS[{i}{j}]', s.gS[i][j])
Ric = s.ric3()
for i in range(3):
    for j in range(i, 3):
        pr(f'Ric_gS[{i}{j}]', Ric[i][j])
for mu in range(4):
    pr(f'Gamma4[{mu}][0][0]', s.G4[mu][0][0])
vf = VField('Ya', P)
L = lie_T(s, vf, s.g4, s.dg4)
pr('deltastar_tt (Ya)', L[0][0] / 2)
for k in range(3):
    ek = s.lift([mp.mpf(1) if i == k else mp.mpf(0) for i in range(3)])
    pr(f'deltastar_mixed[{k}] (Ya)', sum(L[0][mu] * ek[mu] for mu in range(4)) / 2)
W = rough4(s, vf)
for i in range(3):
    pr(f'roughlap_T[{i}] (Ya)', W[i + 1])
pr('roughlap_perp_line (Ya)', sum(s.g4[mu][0] * W[mu] for mu in range(4)) / s.u ** 2)
pr('Yperp (Ya)', vf.perp)
T, dT = alpha_sq(s)
LA = lie_T(s, vf, T, dT)
for k in range(3):
    ek = s.lift([mp.mpf(1) if i == k else mp.mpf(0) for i in range(3)])
    pr(f'lie_alpha2_mixed[{k}] (Ya)', sum(LA[0][mu] * ek[mu] for mu in range(4)))

# exact rationals at (2,0,0)
u2e = sp.simplify(u2s.subs({x1: 2, x2: 0, x3: 0}))
the = [sp.simplify(t.subs({x1: 2, x2: 0, x3: 0})) for t in thetas]
print(f'  u^2(2,0,0) exact                  = {u2e}')
print(f'  theta(2,0,0) exact                = ({the[0]}, {the[1]}, {the[2]})')

print()
fails = [n for (n, ok) in results if not ok]
if fails:
    print('FAILED:', fails)
    raise SystemExit(1)
print(f'all {len(results)} projection-identity checks passed')
