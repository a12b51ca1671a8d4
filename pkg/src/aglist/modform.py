"""Module-basis interpolation backend.

The valid interpolation polynomials Q = sum Q_u z^(p^e u) form an
F_q[x]-module of rank mu*(ell+1) (coordinates: y-power b < mu per z-block).
This backend writes down an explicit square generating matrix over F_q[x],
runs a weighted weak-Popov row reduction on it, and reads off a row of
minimal weighted degree.  Same Q-contract as interp.solve_Q, different
linear algebra.

Generators: with R any function interpolating the received word and
h = x^q - x (vanishing at every affine place),

    (z - R)^(p^e j) * h^(p^e (s-j)) * y^b      j = 0..s
    (z - R)^(p^e s) * z^(p^e (j-s)) * y^b      j = s+1..ell

for b = 0..mu-1.  The inner powers expand by Freshman's dream,
(z - R)^(p^e j) = (z^(p^e) - R^(p^e))^j, so only z-exponents divisible by
p^e ever appear.

Note h vanishes at the reserved place(s) too, so every row also satisfies
interpolation constraints there; the row space is the constraint module of
the code extended by those places with received value R(P).  This costs a
sliver of existence margin at the very edge of the radius (see
tests/test_modform.py for a frozen instance) but never admits a bad Q.
"""

from dataclasses import dataclass
from functools import lru_cache
from math import floor

import numpy as np

from . import curve as cv
from .errors import NoSmallElement
from .gf import SolveCache
from .interp import QPoly


@dataclass
class RInterpolant:
    """A function through all (P_i, r_i), pole order <= n + 2g - 1."""

    R: cv.FuncElem


@lru_cache(maxsize=64)
def _eval_solver(curve, places, dmax):
    """Pre-factored evaluation system of L(dmax*P_inf) at the given places."""
    ctx = curve.field
    monos = cv.basis_monomials(curve, dmax)
    M = np.zeros((len(places), len(monos)), dtype=np.int64)
    for i, P in enumerate(places):
        yv = 0 if P.y is None else P.y
        for k, (a, b) in enumerate(monos):
            v = ctx.pow(P.x, a)
            if b:
                v = ctx.mul(v, ctx.pow(yv, b))
            M[i, k] = v
    return SolveCache(ctx, M), monos


def build_R(code, received):
    """Interpolate the received word by a single function.

    Solves the n x (n+g) evaluation system over the monomial basis of
    L((n + 2g - 1)*P_inf); that map is onto, so a solution always exists,
    and pinning free variables to zero makes it deterministic.
    """
    curve = code.curve
    dmax = code.n + 2 * curve.genus - 1
    solver, monos = _eval_solver(curve, tuple(code.places), dmax)
    x = solver.solve(np.asarray(received, dtype=np.int64))
    assert x is not None, "evaluation map must be surjective at this degree"
    R = cv.FuncElem.from_basis(curve, monos, [int(v) for v in x])
    return RInterpolant(R)


def _trim(arr):
    """Strip trailing zeros; all-zero polynomials become None."""
    nz = np.nonzero(arr)[0]
    if len(nz) == 0:
        return None
    return arr[: nz[-1] + 1]


def _coords(curve, F):
    """F_q[x]-coordinates of a (y-reduced) function over the basis 1..y^(mu-1)."""
    mu = curve.mu
    deg = [-1] * mu
    for (a, b), _ in F.terms.items():
        if a > deg[b]:
            deg[b] = a
    out = [None] * mu
    for b in range(mu):
        if deg[b] >= 0:
            out[b] = np.zeros(deg[b] + 1, dtype=np.int64)
    for (a, b), c in F.terms.items():
        out[b][a] = c
    return out


@dataclass
class ModuleMatrix:
    """Square F_q[x] matrix whose row space is the interpolation module.

    Column (u, b) <-> coefficient of x^deg y^b z^(p^e u); its weight
    p^e*u*m + delta(y^b) - alpha makes  mu*deg + weight  the pole order
    delta(Q) - alpha of the corresponding term, so a row of value <= 0 is
    exactly a Q with every Q_u in L((alpha - p^e u m)*P_inf).
    """

    curve: object
    s: int
    ell: int
    e: int
    alpha: int
    m: int
    rows: list
    weights: list

    @property
    def mu(self):
        return self.curve.mu

    def entry_value(self, row_idx, col):
        p = self.rows[row_idx][col]
        if p is None:
            return None
        return self.mu * (len(p) - 1) + self.weights[col]

    def pivot(self, row_idx):
        """(value, column) of the weighted-leading entry; ties take the
        rightmost column."""
        best = None
        for col, p in enumerate(self.rows[row_idx]):
            if p is None:
                continue
            val = self.mu * (len(p) - 1) + self.weights[col]
            if best is None or (val, col) > best:
                best = (val, col)
        return best

    def row_value(self, row_idx):
        pv = self.pivot(row_idx)
        return pv[0] if pv is not None else None

    def row_qpoly(self, row_idx):
        """Reassemble a row into a z-polynomial."""
        mu = self.mu
        coeffs = []
        for u in range(self.ell + 1):
            terms = {}
            for b in range(mu):
                p = self.rows[row_idx][u * mu + b]
                if p is None:
                    continue
                for a in np.nonzero(p)[0]:
                    terms[(int(a), b)] = int(p[a])
            coeffs.append(cv.FuncElem(self.curve, terms))
        return QPoly(coeffs, self.e)

    def text(self):
        lines = []
        for row in self.rows:
            cells = []
            for p in row:
                cells.append("0" if p is None else " ".join(str(int(c)) for c in p))
            lines.append(",".join(cells))
        return "\n".join(lines)


def build_module_matrix(code, R, params, alpha):
    """The mu*(ell+1) generators of the interpolation module, as F_q[x] rows.

    Degree sanity: every generator's weighted value is checked against the
    closed-form bounds  (p^e(j+s)+2)n + (p^e j+3)(2g-1) + 1 - alpha  for
    j <= s  and  2p^e s n + (p^e s+2)(2g-1) + 1 - alpha  for j > s.
    """
    curve = code.curve
    ctx = curve.field
    s, ell, e = params.s, params.ell, params.e
    pe = ctx.p**e
    mu = curve.mu
    m = code.m
    n = code.n
    g = curve.genus
    Rf = R.R if isinstance(R, RInterpolant) else R

    Rpe = Rf.pth_power(e)
    Rneg = -Rpe
    hpe = cv.vanishing_function(curve, 1).pth_power(e)
    hpow = [cv.FuncElem.const(curve, 1)]
    for _ in range(s):
        hpow.append(hpow[-1] * hpe)
    ybs = [cv.FuncElem.monomial(curve, 0, b) for b in range(mu)]

    # z-block coefficients of (z^(p^e) - R^(p^e))^j, iteratively
    zs = [{0: cv.FuncElem.const(curve, 1)}]
    for _ in range(s):
        prev = zs[-1]
        nxt = {}
        for u, F in prev.items():
            t = nxt.get(u + 1)
            nxt[u + 1] = F if t is None else t + F
            t = nxt.get(u)
            FR = F * Rneg
            nxt[u] = FR if t is None else t + FR
        zs.append(nxt)

    weights = [
        pe * u * m + curve.pole_order(0, b) - alpha
        for u in range(ell + 1)
        for b in range(mu)
    ]

    rows = []
    mx = ModuleMatrix(curve, s, ell, e, alpha, m, rows, weights)
    for j in range(ell + 1):
        if j <= s:
            base = {u: F * hpow[s - j] for u, F in zs[j].items()}
            bound = (pe * (j + s) + 2) * n + (pe * j + 3) * (2 * g - 1) + 1 - alpha
        else:
            base = {u + (j - s): F for u, F in zs[s].items()}
            bound = 2 * pe * s * n + (pe * s + 2) * (2 * g - 1) + 1 - alpha
        for b in range(mu):
            row = [None] * (mu * (ell + 1))
            for u, F in base.items():
                G = F * ybs[b] if b else F
                for bb, poly in enumerate(_coords(curve, G)):
                    if poly is not None:
                        row[u * mu + bb] = poly
            rows.append(row)
            assert mx.row_value(len(rows) - 1) <= bound
    return mx


def _axpy(ctx, dst, src, coef, shift):
    """dst - coef * x^shift * src on coefficient arrays (either may be None)."""
    L = max(len(dst) if dst is not None else 0, len(src) + shift)
    out = np.zeros(L, dtype=np.int64)
    if dst is not None:
        out[: len(dst)] = dst
    t = ctx.mul_arr(np.int64(coef), src)
    out[shift : shift + len(src)] = ctx.sub_arr(out[shift : shift + len(src)], t)
    return _trim(out)


def shifted_reduce(mx):
    """Weighted weak-Popov form by Mulders-Storjohann simple transformations.

    Repeatedly: find two rows whose weighted pivots sit in the same column,
    subtract the right x-power multiple of the lower-valued one from the
    other.  Each step strictly decreases that row's (value, pivot-column)
    pair, so the loop terminates; row operations are unimodular, so the row
    space never changes.
    """
    ctx = mx.curve.field
    mu = mx.mu
    rows = [list(r) for r in mx.rows]
    out = ModuleMatrix(mx.curve, mx.s, mx.ell, mx.e, mx.alpha, mx.m, rows, mx.weights)
    pivots = [out.pivot(i) for i in range(len(rows))]
    while True:
        bycol = {}
        clash = None
        for i, pv in enumerate(pivots):
            assert pv is not None, "module matrix must keep full rank"
            if pv[1] in bycol:
                clash = (i, bycol[pv[1]])
                break
            bycol[pv[1]] = i
        if clash is None:
            return out
        i, j = clash
        if pivots[i][0] < pivots[j][0]:
            i, j = j, i
        col = pivots[i][1]
        pi, pj = rows[i][col], rows[j][col]
        shift = len(pi) - len(pj)
        coef = ctx.div(int(pi[-1]), int(pj[-1]))
        for c in range(len(rows[i])):
            if rows[j][c] is not None:
                rows[i][c] = _axpy(ctx, rows[i][c], rows[j][c], coef, shift)
        pivots[i] = out.pivot(i)


def safe_tau(code, s, ell, e):
    """Largest radius at which this backend's Q is guaranteed to exist.

    Because h also vanishes at the reserved place(s), the row space carries
    their constraints too: the backend effectively decodes the code extended
    by those places, each acting as one unconditional extra error.  So the
    guarantee is tau_best of the extended shape, minus one per extra place.
    Usually floor(tau_best) or one less; dense has no such discount.
    """
    from .radius import CodeShape, tau_best

    curve = code.curve
    n_ext = len(cv.rational_places(curve))
    extra = n_ext - code.n
    shape = CodeShape(n_ext, code.m, curve.genus, curve.field.p)
    t = tau_best(shape, s, ell, e)[0] - extra
    return max(-1, floor(t))


def minimal_Q(reduced):
    """The minimal-value row as a z-polynomial.

    In weak-Popov form some row attains the module-wide minimum, so a value
    <= 0 here is a genuine Q with all Q_u inside their L-spaces; value > 0
    means no such Q exists in the row space.
    """
    best = None
    for i in range(len(reduced.rows)):
        val = reduced.row_value(i)
        if best is None or val < best[0]:
            best = (val, i)
    if best[0] > 0:
        raise NoSmallElement(
            f"minimal weighted row value {best[0]} > 0 at alpha={reduced.alpha}"
        )
    q = reduced.row_qpoly(best[1])
    assert not q.is_zero()
    return q
