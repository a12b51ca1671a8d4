"""Root extraction for the inseparable interpolation polynomial.

Q(z) = sum Q_j z^(p^e j) vanishes on f exactly when the deflated ordinary
polynomial Qbar(w) = sum Q_j w^j vanishes on w = f^(p^e).  So: find the
power-series roots of Qbar at the reserved place, keep those supported on
exponents divisible by p^e, take coefficient-wise p^e-th roots (Frobenius
is bijective), and match the result against L(G).  Spurious branches are
cheap and get filtered by exact algebra afterwards.
"""

from dataclasses import dataclass
from math import comb

import numpy as np

from . import curve as cv
from .errors import InsufficientPrecision


@dataclass
class DeflatedPoly:
    """Qbar(w) = sum coeffs[j] * w^j: the z^(p^e) -> w substitution of a QPoly."""

    coeffs: list

    @classmethod
    def from_qpoly(cls, q):
        return cls(list(q.coeffs))


@dataclass
class SeriesRoot:
    """A power-series root of Qbar at the reserved place.

    Only the first `determined` coefficients are pinned by the recursion;
    the rest of the series is zero-padded (when Qbar vanishes identically
    to the remaining depth every continuation is consistent, so zero is as
    good a guess as any and exact verification rejects wrong branches).
    """

    series: cv.LocalSeries
    determined: int

    @property
    def precision(self):
        return self.determined


def _poly_roots(ctx, coeffs):
    """All roots in the field of sum coeffs[j] w^j (coeffs plain ints)."""
    deg = -1
    for j, c in enumerate(coeffs):
        if c:
            deg = j
    if deg <= 0:
        return []
    if deg == 1:
        return [ctx.div(ctx.neg(coeffs[0]), coeffs[1])]
    xs = np.arange(ctx.q, dtype=np.int64)
    vals = np.full(ctx.q, coeffs[0], dtype=np.int64)
    for j in range(1, deg + 1):
        if coeffs[j]:
            vals = ctx.add_arr(vals, ctx.mul_arr(np.int64(coeffs[j]), ctx.pow_arr(xs, j)))
    return [int(r) for r in xs[vals == 0]]


def _expand_all(qbar, place, N):
    """Local series of every coefficient at the place, shape (L+1, N)."""
    curve = qbar.coeffs[0].curve
    ctx = curve.field
    out = np.zeros((len(qbar.coeffs), N), dtype=np.int64)
    for j, Qj in enumerate(qbar.coeffs):
        if Qj.is_zero():
            continue
        monos = cv.basis_monomials(curve, Qj.delta())
        E = cv.expansion_matrix(curve, place, monos, N)
        vec = np.asarray(Qj.coeffs_on(monos), dtype=np.int64)
        out[j] = ctx.sum_axis(ctx.mul_arr(E, vec[None, :]))
    return out


def rr_roots(qbar, place, N):
    """All power-series roots of Qbar at the place, to precision N.

    Roth-Ruckenstein recursion: strip the common t-valuation of the
    coefficient series, branch on the roots of the residue polynomial over
    the field, substitute w <- root + t*w', recurse on the remaining
    precision.  Once the budget is spent (or the polynomial vanishes
    identically to the remaining depth: then every continuation is a root)
    the prefix found so far is zero-padded to length N, with the pinned
    length recorded in SeriesRoot.determined; downstream verification
    discards any branch that does not correspond to an actual function.
    Branch width at each level is at most deg_w Qbar.
    """
    curve = qbar.coeffs[0].curve
    ctx = curve.field
    S = _expand_all(qbar, place, N)
    found = []

    def rec(S, prefix):
        nz = np.nonzero(S)
        if len(nz[0]) == 0:
            found.append(prefix)  # identically zero: anything extends
            return
        v = int(nz[1].min())
        S = S[:, v:]
        for g in _poly_roots(ctx, [int(c) for c in S[:, 0]]):
            # w = g + t*w': S'_j = t^j * sum_i C(i,j) g^(i-j) S_i, then /t
            L = S.shape[0] - 1
            Snew = np.zeros_like(S)
            gp = [ctx.pow(g, d) for d in range(L + 1)]
            for j in range(L + 1):
                acc = np.zeros(S.shape[1], dtype=np.int64)
                for i in range(j, L + 1):
                    c = comb(i, j) % ctx.p
                    if c == 0:
                        continue
                    term = ctx.mul_arr(np.int64(ctx.mul(c, gp[i - j])), S[i])
                    acc = ctx.add_arr(acc, term)
                if j < S.shape[1]:
                    Snew[j, j:] = acc[: S.shape[1] - j]
            rec(Snew[:, 1:], prefix + [g])

    rec(S, [])
    out = []
    for prefix in found:
        coeffs = list(prefix) + [0] * (N - len(prefix))
        out.append(
            SeriesRoot(cv.LocalSeries(curve, place, coeffs[:N]), len(prefix))
        )
    return out


def pe_root_series(sr, e):
    """Coefficient-wise p^e-th root, or None when the series is not one.

    A series represents some f^(p^e) exactly when its support lies on
    exponents divisible by p^e (the t-powers of f^(p^e) in t are the
    p^e-fold ones, with p^e-th-power coefficients -- same Freshman identity
    as everywhere else).  Only determined coefficients count: the result is
    truncated so its precision never overstates what the recursion pinned.
    """
    series = sr.series if isinstance(sr, SeriesRoot) else sr
    det = sr.precision
    ctx = series.curve.field
    pe = ctx.p**e
    coeffs = series.coeffs
    for i, c in enumerate(coeffs[:det]):
        if c and i % pe:
            return None
    root = [ctx.p_root(coeffs[i * pe], e) for i in range(-(-det // pe))]
    return cv.LocalSeries(series.curve, series.place, root)


def candidates(code, root_series, m=None):
    """Match reconstructed series against L(m * P_inf); drop non-members."""
    if m is None:
        m = code.m
    out = []
    for series in root_series:
        if series.precision < m + 1:
            raise InsufficientPrecision(
                f"root precision {series.precision} < m + 1 = {m + 1}"
            )
        f = cv.reconstruct_from_expansion(series, m)
        if f is not None:
            out.append(f)
    return out
