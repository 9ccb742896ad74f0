#!/usr/bin/env python3
"""Oracle for time translations of stationary metrics and their boundary data.

For Phi_f(t,x) = (t + f(x), x) acting on a stationary metric:
  * pullback component algebra and the induced-3-metric formula,
  * the (a, b) boundary coefficients, a^2 - b^2 = 1,
  * the transformation laws of (H, tr K, omega_n) under the pullback,
  * invariance of the full data set when n(f) = 0 on the boundary,
  * the closed-form radial connection coefficient of the static fixture.

Fixtures: Schwarzschild m=1 (isotropic) and Kerr m=1, a=1/2 (quasi-isotropic).
Symbolic derivatives, mpmath evaluation at 50 digits; boundary = unit sphere.
"""

import sympy as sp
from sympy import Rational as R
import mpmath as mp

mp.mp.dps = 50

x1, x2, x3 = sp.symbols('x1 x2 x3', real=True)
XS = (x1, x2, x3)
rho = sp.sqrt(x1 * x1 + x2 * x2 + x3 * x3)

def schwarzschild(mm):
    A = 1 + mm / (2 * rho)
    B = 1 - mm / (2 * rho)
    g = sp.zeros(4, 4)
    g[0, 0] = -B * B / (A * A)
    for i in range(3):
        g[i + 1, i + 1] = A ** 4
    return g

def kerr(mm, aa):
    r_bl = rho + mm + (mm * mm - aa * aa) / (4 * rho)
    Sigma = r_bl * r_bl + aa * aa * x3 * x3 / (rho * rho)
    q = (-x2, x1, sp.Integer(0))
    g = sp.zeros(4, 4)
    g[0, 0] = -(1 - 2 * mm * r_bl / Sigma)
    for i in range(3):
        g[0, i + 1] = g[i + 1, 0] = -(2 * mm * aa * r_bl / (Sigma * rho ** 2)) * q[i]
    for i in range(3):
        for j in range(3):
            g[i + 1, j + 1] = (Sigma / rho ** 2) * (1 if i == j else 0) \
                + (aa * aa * (Sigma + 2 * mm * r_bl) / (Sigma * rho ** 4)) * q[i] * q[j]
    return g

def pull_back(g, f):
    """Phi_f(t,x) = (t+f, x): hat g_mn = g_ab dPhi^a_m dPhi^b_n, t-independent."""
    df = [sp.diff(f, v) for v in XS]
    gh = sp.zeros(4, 4)
    gh[0, 0] = g[0, 0]
    for i in range(3):
        gh[0, i + 1] = gh[i + 1, 0] = g[0, i + 1] + g[0, 0] * df[i]
    for i in range(3):
        for j in range(3):
            gh[i + 1, j + 1] = g[i + 1, j + 1] + g[0, i + 1] * df[j] \
                + g[0, j + 1] * df[i] + g[0, 0] * df[i] * df[j]
    return gh

# --------------------------------------------------------- numeric pipeline
class MetricPack:
    """Lambdified spatial data of a stationary 4-metric: 3-metric, shift, lapse."""

    def __init__(self, g4):
        self.fZ = {}
        for i in range(3):
            for j in range(i, 3):
                self._reg(f'g{i}{j}', g4[i + 1, j + 1])
        for i in range(3):
            self._reg(f'X{i}', g4[0, i + 1])
        self._reg('gtt', g4[0, 0])

    def _reg(self, name, expr):
        self.fZ[name] = sp.lambdify(XS, expr, modules='mpmath')
        for k in range(3):
            self.fZ[f'{name}_d{k}'] = sp.lambdify(XS, sp.diff(expr, XS[k]),
                                                  modules='mpmath')

    def at(self, P):
        V = lambda n: self.fZ[n](*P)
        d = {}
        d['g'] = [[V(f'g{min(i, j)}{max(i, j)}') for j in range(3)] for i in range(3)]
        d['dg'] = [[[V(f'g{min(i, j)}{max(i, j)}_d{k}') for j in range(3)]
                    for i in range(3)] for k in range(3)]
        d['X'] = [V(f'X{i}') for i in range(3)]
        d['dX'] = [[V(f'X{i}_d{k}') for i in range(3)] for k in range(3)]
        d['g00'] = V('gtt')
        d['dg00'] = [V(f'gtt_d{k}') for k in range(3)]
        gm = mp.matrix(d['g'])
        gi = gm ** -1
        d['gi'] = [[gi[i, j] for j in range(3)] for i in range(3)]
        X2 = sum(d['gi'][i][j] * d['X'][i] * d['X'][j] for i in range(3) for j in range(3))
        d['N'] = mp.sqrt(-d['g00'] + X2)
        return d

def boundary_data(d, P):
    """(H, k, tau) of the unit coordinate sphere, outward normal, K = -L_X g/(2N)."""
    g, gi, dg = d['g'], d['gi'], d['dg']
    rr = mp.sqrt(sum(p * p for p in P))
    drho = [p / rr for p in P]
    ddrho = [[(1 if i == j else 0) / rr - P[i] * P[j] / rr ** 3 for j in range(3)]
             for i in range(3)]
    dgi = []
    for k in range(3):
        dgi.append([[-sum(gi[i][aa] * dg[k][aa][bb] * gi[bb][j]
                          for aa in range(3) for bb in range(3))
                     for j in range(3)] for i in range(3)])
    lam2 = sum(gi[i][j] * drho[i] * drho[j] for i in range(3) for j in range(3))
    lam = mp.sqrt(lam2)
    dlam = [sum(dgi[k][i][j] * drho[i] * drho[j]
                + 2 * gi[i][j] * ddrho[k][i] * drho[j]
                for i in range(3) for j in range(3)) / (2 * lam) for k in range(3)]
    nlow = [drho[i] / lam for i in range(3)]
    dnlow = [[ddrho[k][i] / lam - drho[i] * dlam[k] / lam2 for i in range(3)]
             for k in range(3)]
    nup = [sum(gi[i][j] * nlow[j] for j in range(3)) for i in range(3)]
    G = [[[sum(gi[i][l] * (dg[j][l][k] + dg[k][l][j] - dg[l][j][k]) for l in range(3)) / 2
           for k in range(3)] for j in range(3)] for i in range(3)]
    covn = [[dnlow[i][j] - sum(G[l][i][j] * nlow[l] for l in range(3)) for j in range(3)]
            for i in range(3)]
    H = sum((gi[i][j] - nup[i] * nup[j]) * covn[i][j] for i in range(3) for j in range(3))
    Xup = [sum(gi[i][j] * d['X'][j] for j in range(3)) for i in range(3)]
    dXup = [[sum(dgi[k][i][j] * d['X'][j] + gi[i][j] * d['dX'][k][j] for j in range(3))
             for i in range(3)] for k in range(3)]
    LX = [[sum(Xup[l] * dg[l][i][j] + g[l][j] * dXup[i][l] + g[i][l] * dXup[j][l]
               for l in range(3)) for j in range(3)] for i in range(3)]
    K = [[-LX[i][j] / (2 * d['N']) for j in range(3)] for i in range(3)]
    k_tr = sum((gi[i][j] - nup[i] * nup[j]) * K[i][j] for i in range(3) for j in range(3))
    Kn = [sum(K[i][j] * nup[j] for j in range(3)) for i in range(3)]
    tau = [Kn[i] - nlow[i] * sum(Kn[j] * nup[j] for j in range(3)) for i in range(3)]
    return H, k_tr, tau, nup, nlow, lam

def ba_differential(d, P, dfv, ddfv):
    """d_k of b/a = N n(f) / (1 + <X,n> n(f)) by the chain rule, plus the value."""
    g, gi, dg = d['g'], d['gi'], d['dg']
    rr = mp.sqrt(sum(p * p for p in P))
    drho = [p / rr for p in P]
    ddrho = [[(1 if i == j else 0) / rr - P[i] * P[j] / rr ** 3 for j in range(3)]
             for i in range(3)]
    dgi = [[[-sum(gi[i][aa] * dg[k][aa][bb] * gi[bb][j]
                  for aa in range(3) for bb in range(3)) for j in range(3)]
            for i in range(3)] for k in range(3)]
    lam2 = sum(gi[i][j] * drho[i] * drho[j] for i in range(3) for j in range(3))
    lam = mp.sqrt(lam2)
    dlam = [sum(dgi[k][i][j] * drho[i] * drho[j] + 2 * gi[i][j] * ddrho[k][i] * drho[j]
                for i in range(3) for j in range(3)) / (2 * lam) for k in range(3)]
    nup = [sum(gi[i][j] * drho[j] for j in range(3)) / lam for i in range(3)]
    dnup = [[(sum(dgi[k][i][j] * drho[j] + gi[i][j] * ddrho[k][j] for j in range(3))
              - nup[i] * dlam[k]) / lam for i in range(3)] for k in range(3)]
    nf = sum(nup[i] * dfv[i] for i in range(3))
    dnf = [sum(dnup[k][i] * dfv[i] + nup[i] * ddfv[k][i] for i in range(3))
           for k in range(3)]
    Xn = sum(d['X'][i] * nup[i] for i in range(3))
    dXn = [sum(d['dX'][k][i] * nup[i] + d['X'][i] * dnup[k][i] for i in range(3))
           for k in range(3)]
    X2 = sum(gi[i][j] * d['X'][i] * d['X'][j] for i in range(3) for j in range(3))
    N = mp.sqrt(-d['g00'] + X2)
    dN = [(-d['dg00'][k] + sum(dgi[k][i][j] * d['X'][i] * d['X'][j]
                               + 2 * gi[i][j] * d['dX'][k][i] * d['X'][j]
                               for i in range(3) for j in range(3))) / (2 * N)
          for k in range(3)]
    den = 1 + Xn * nf
    ba = N * nf / den
    dba = [(dN[k] * nf + N * dnf[k]) / den
           - N * nf * (dXn[k] * nf + Xn * dnf[k]) / den ** 2 for k in range(3)]
    nlow = [drho[i] / lam for i in range(3)]
    proj_nf = sum(dba[i] * nup[i] for i in range(3))
    tang = [dba[i] - nlow[i] * proj_nf for i in range(3)]
    return ba, tang

results = []

def report(name, res, tol=mp.mpf('1e-30'), note=''):
    ok = res < tol
    results.append((name, ok))
    print(f'[{"PASS" if ok else "FAIL"}] {name:52s} max|res| = {mp.nstr(res, 3):12s} {note}')

def amax(vals):
    return max(abs(v) for v in vals) if vals else mp.mpf(0)

PB = tuple(mp.mpf(v.p) / mp.mpf(v.q) for v in (R(3, 5), R(0), R(4, 5)))

def run_case(label, g4s, fsym, freeze=False):
    print(f'--- {label} ---')
    gh = pull_back(g4s, fsym)
    pack = MetricPack(g4s)
    packh = MetricPack(gh)
    d = pack.at(PB)
    dh = packh.at(PB)

    # induced-3-metric formula: hat g_ij = g_ij + X_i f_j + X_j f_i + g00 f_i f_j
    dfl = [sp.lambdify(XS, sp.diff(fsym, v), modules='mpmath') for v in XS]
    dfv = [fn(*PB) for fn in dfl]
    res = []
    for i in range(3):
        for j in range(3):
            res.append(dh['g'][i][j] - (d['g'][i][j] + d['X'][i] * dfv[j]
                                        + d['X'][j] * dfv[i] + d['g00'] * dfv[i] * dfv[j]))
    report(f'{label}: induced metric = g + X sym df + g00 df df', amax(res))

    H, ktr, tau, nup, nlow, lam = boundary_data(d, PB)
    Hh, ktrh, tauh, _, _, _ = boundary_data(dh, PB)

    nf = sum(nup[i] * dfv[i] for i in range(3))
    Xn = sum(d['X'][i] * nup[i] for i in range(3))
    base = 1 + Xn * nf
    den = mp.sqrt(base ** 2 - d['N'] ** 2 * nf ** 2)
    a_c = base / den
    b_c = d['N'] * nf / den
    report(f'{label}: a^2 - b^2 = 1', abs(a_c ** 2 - b_c ** 2 - 1))
    report(f'{label}: hat H = b k + a H', abs(Hh - (b_c * ktr + a_c * H)))
    report(f'{label}: hat k = a k + b H', abs(ktrh - (a_c * ktr + b_c * H)))

    # tau law: hat tau = a^2 d_tang(b/a) + tau
    ddfl = {(k, i): sp.lambdify(XS, sp.diff(fsym, XS[k], XS[i]), modules='mpmath')
            for k in range(3) for i in range(3)}
    ddfv = [[ddfl[(k, i)](*PB) for i in range(3)] for k in range(3)]
    ba_val, tang = ba_differential(d, PB, dfv, ddfv)
    report(f'{label}: b/a field value consistent', abs(ba_val - b_c / a_c))
    # the law is an identity of 1-forms restricted to T(boundary); contract with
    # coordinate-sphere tangent vectors (metric independent) rather than comparing
    # ambient components, whose normal parts live along different unit normals
    tangents = [(mp.mpf(4) / 5, mp.mpf(0), mp.mpf(-3) / 5),
                (mp.mpf(0), mp.mpf(1), mp.mpf(0))]
    res = []
    for v in tangents:
        lhs = sum(tauh[i] * v[i] for i in range(3))
        rhs = a_c ** 2 * sum(tang[i] * v[i] for i in range(3)) \
            + sum(tau[i] * v[i] for i in range(3))
        res.append(lhs - rhs)
    report(f'{label}: hat tau(v) = a^2 v(b/a) + tau(v)', amax(res))

    if freeze:
        print('  frozen spots at (3/5, 0, 4/5):')
        for nm, v in [('a', a_c), ('b', b_c), ('H', H), ('k', ktr),
                      ('hatH', Hh), ('hatk', ktrh)]:
            print(f'    {nm:6s} = {mp.nstr(v, 32)}')
        for i in range(3):
            print(f'    tau[{i}]  = {mp.nstr(tau[i], 32)}')
        for i in range(3):
            print(f'    hattau[{i}] = {mp.nstr(tauh[i], 32)}')

    # Remark-2.3 case: n(f) = 0 on the boundary leaves all data unchanged
    f2 = (rho - 1) ** 2 * (1 + x3 / (3 * rho))
    gh2 = pull_back(g4s, f2)
    dh2 = MetricPack(gh2).at(PB)
    H2, k2, tau2, _, _, _ = boundary_data(dh2, PB)
    res = [H2 - H, k2 - ktr] + [tau2[i] - tau[i] for i in range(3)]
    report(f'{label}: n(f)=0 leaves (H,k,tau) unchanged', amax(res))

fS = (rho - 1) * (1 + x3 / (2 * rho))
run_case('schwarzschild m=1', schwarzschild(sp.Integer(1)), fS, freeze=True)
fK = (rho - 1) * (1 + x3 / (2 * rho)) / 5
run_case('kerr m=1 a=1/2', kerr(sp.Integer(1), R(1, 2)), fK, freeze=True)

# ---------------------------------------------- static radial connection
print('--- static fixture connection coefficient ---')
mm = sp.Integer(1)
gs = schwarzschild(mm)
A = 1 + mm / (2 * rho)
B = 1 - mm / (2 * rho)
closed = mm * B / (rho ** 2 * A ** 7)
P = (R(6, 5), R(0), R(9, 10))
Pm = tuple(mp.mpf(v.p) / mp.mpf(v.q) for v in P)
gi00 = 1 / gs[1 + 0, 1 + 0]
res = []
for i in range(3):
    Gam = -sp.diff(gs[0, 0], XS[i]) / (2 * gs[i + 1, i + 1])
    rad = closed * XS[i] / rho
    res.append(mp.mpf(str(sp.N((Gam - rad).subs({x1: P[0], x2: P[1], x3: P[2]}), 40))))
report('Gamma^i_tt = m(1-m/2rho)/(rho^2(1+m/2rho)^7) x^i/rho', amax(res))
val = sp.N(closed.subs({x1: P[0], x2: P[1], x3: P[2]}), 32)
print(f'  Gamma_radial(rho=3/2, m=1) = {val}')
print(f'  exact at rho=3/2: {sp.nsimplify(sp.simplify(closed.subs({x1: R(3,2), x2: 0, x3: 0})))}')

print()
fails = [n for (n, ok) in results if not ok]
if fails:
    print('FAILED:', fails)
    raise SystemExit(1)
print(f'all {len(results)} time-translation checks passed')
