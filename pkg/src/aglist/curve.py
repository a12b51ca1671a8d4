"""Function fields with one point at infinity: rational and Hermitian.

A CurveCtx describes either the projective line over GF(q) or the Hermitian
curve y^q0 + y = x^(q0+1) over GF(q0^2).  Everything the decoder needs is
expressed through the single place P_inf at infinity: functions with poles
only there form the rings this module manipulates.

A FuncElem is a linear combination of the monomials x^a y^b with 0 <= b < mu
(mu = q0 on the Hermitian curve, 1 on the line) stored as a dict mapping
(a, b) to a nonzero field element.  That monomial set is a basis of the pole
ring, and the pole order of x^a y^b at P_inf is delta = a*q0 + b*(q0+1)
(just a on the line); distinct monomials have distinct pole orders, so
delta sorts a basis deterministically.  Products reduce y^q0 via the curve
equation back into normal form.

Local expansions at an affine place P0 = (a0, b0) are power series in the
uniformizer t = x - a0 (the x-cover only ramifies over infinity).  On the
Hermitian curve the series for y is the Artin-Schreier fixed point of
y <- x^(q0+1) - y^q0, which converges one q0-adic digit block per step.
"""

import functools
from dataclasses import dataclass

import numpy as np

from . import gf
from .errors import (
    ContextMismatch,
    FieldTooLarge,
    InsufficientPrecision,
    NonPrimeCharacteristic,
    UnsupportedCurve,
)


@dataclass(frozen=True)
class Place:
    """An affine rational place, named by its coordinates (y absent on the line)."""

    x: int
    y: int | None = None

    def key(self):
        return (self.x, -1 if self.y is None else self.y)

    def text(self) -> str:
        if self.y is None:
            return f"({self.x})"
        return f"({self.x},{self.y})"


def place_from_text(s: str) -> Place:
    body = s.strip().lstrip("(").rstrip(")")
    parts = [p for p in body.split(",") if p != ""]
    if len(parts) == 1:
        return Place(int(parts[0]))
    return Place(int(parts[0]), int(parts[1]))


class CurveCtx:
    """One curve with its base field; create through curve_create."""

    def __init__(self, kind: str, base: int):
        if kind not in ("rational", "hermitian"):
            raise UnsupportedCurve(f"unknown curve kind {kind!r}")
        try:
            field = gf.field_from_order(base * base if kind == "hermitian" else base)
        except NonPrimeCharacteristic as exc:
            raise UnsupportedCurve(f"base parameter {base}: {exc}") from exc
        except FieldTooLarge as exc:
            raise UnsupportedCurve(f"base parameter {base}: {exc}") from exc
        self.kind = kind
        self.base = base
        self.field = field
        if kind == "hermitian":
            self.q0 = base
            self.genus = base * (base - 1) // 2
            self.mu = base
            self.gens = (base, base + 1)
        else:
            self.q0 = base
            self.genus = 0
            self.mu = 1
            self.gens = (1,)

    def pole_order(self, a: int, b: int) -> int:
        if self.kind == "hermitian":
            return a * self.q0 + b * (self.q0 + 1)
        return a

    def text(self) -> str:
        return f"{self.kind}/{self.base}"

    def __repr__(self):
        return f"CurveCtx({self.kind}, base={self.base}, g={self.genus})"


@functools.lru_cache(maxsize=None)
def curve_create(kind: str, base: int) -> CurveCtx:
    """Cached curve context; equal parameters give the identical object."""
    return CurveCtx(kind, base)


@functools.lru_cache(maxsize=None)
def rational_places(curve: CurveCtx) -> tuple[Place, ...]:
    """All affine rational places, sorted by coordinates.

    On the line these are the q field elements.  On the Hermitian curve each
    x = a contributes the q0 solutions b of b^q0 + b = a^(q0+1) (the trace
    equation), q0^3 places in total.
    """
    ctx = curve.field
    if curve.kind == "rational":
        return tuple(Place(a) for a in range(ctx.q))
    q0 = curve.q0
    out = []
    for a in range(ctx.q):
        rhs = ctx.pow(a, q0 + 1)
        for b in range(ctx.q):
            if ctx.add(ctx.pow(b, q0), b) == rhs:
                out.append(Place(a, b))
    out.sort(key=Place.key)
    return tuple(out)


class FuncElem:
    """An element of the pole ring at infinity, in y-reduced normal form."""

    __slots__ = ("curve", "terms")

    def __init__(self, curve: CurveCtx, terms: dict):
        self.curve = curve
        self.terms = terms  # (a, b) -> nonzero coeff; b < mu

    # -- constructors

    @staticmethod
    def zero(curve):
        return FuncElem(curve, {})

    @staticmethod
    def const(curve, c: int):
        return FuncElem(curve, {(0, 0): c} if c else {})

    @staticmethod
    def monomial(curve, a: int, b: int = 0, c: int = 1):
        return FuncElem(curve, {(a, b): c} if c else {})

    @staticmethod
    def from_basis(curve, monomials, coeffs):
        """Combination sum(coeffs[i] * x^a y^b) over (a, b) in monomials."""
        terms = {}
        for (a, b), c in zip(monomials, coeffs):
            c = int(c)
            if c:
                terms[(a, b)] = c
        return FuncElem(curve, terms)

    def _check(self, other):
        if not isinstance(other, FuncElem):
            raise TypeError(f"cannot combine FuncElem with {type(other).__name__}")
        if other.curve is not self.curve:
            raise ContextMismatch("operands live on different curves")

    def is_zero(self) -> bool:
        return not self.terms

    def delta(self):
        """Pole order at P_inf; -inf for the zero function."""
        if not self.terms:
            return float("-inf")
        return max(self.curve.pole_order(a, b) for (a, b) in self.terms)

    # -- ring operations

    def __add__(self, other):
        self._check(other)
        ctx = self.curve.field
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = ctx.add(out.get(k, 0), c)
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return FuncElem(self.curve, out)

    def __neg__(self):
        ctx = self.curve.field
        return FuncElem(self.curve, {k: ctx.neg(c) for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: int):
        if c == 0:
            return FuncElem.zero(self.curve)
        ctx = self.curve.field
        return FuncElem(self.curve, {k: ctx.mul(c, v) for k, v in self.terms.items()})

    def __mul__(self, other):
        self._check(other)
        ctx = self.curve.field
        raw = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                k = (a1 + a2, b1 + b2)
                s = ctx.add(raw.get(k, 0), ctx.mul(c1, c2))
                if s:
                    raw[k] = s
                else:
                    raw.pop(k, None)
        return FuncElem(self.curve, _y_reduce(self.curve, raw))

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers leave the pole ring")
        out = FuncElem.const(self.curve, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def pth_power(self, e: int = 1):
        """self**(p^e) using the characteristic-p power map term by term.

        (sum c x^a y^b)^(p^e) = sum c^(p^e) x^(ap^e) y^(bp^e): raising to a
        p-th power is additive in characteristic p, so no cross terms appear.
        """
        cur = self
        ctx = self.curve.field
        p = ctx.p
        for _ in range(e):
            raw = {}
            for (a, b), c in cur.terms.items():
                raw[(a * p, b * p)] = ctx.pow(c, p)
            cur = FuncElem(self.curve, _y_reduce(self.curve, raw))
        return cur

    def evaluate(self, place: Place) -> int:
        """Value at an affine place."""
        ctx = self.curve.field
        xv = place.x
        yv = 0 if place.y is None else place.y
        acc = 0
        for (a, b), c in self.terms.items():
            v = ctx.mul(c, ctx.pow(xv, a))
            if b:
                v = ctx.mul(v, ctx.pow(yv, b))
            acc = ctx.add(acc, v)
        return acc

    def coeffs_on(self, monomials) -> list[int]:
        """Coordinates over an explicit monomial list (must cover all terms)."""
        got = {m: self.terms.get(m, 0) for m in monomials}
        leftover = set(self.terms) - set(monomials)
        if leftover:
            raise ValueError(f"terms {sorted(leftover)} outside the given basis")
        return [got[m] for m in monomials]

    def __eq__(self, other):
        return (
            isinstance(other, FuncElem)
            and self.curve is other.curve
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((id(self.curve), tuple(sorted(self.terms.items()))))

    def text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (a, b) in sorted(self.terms):
            parts.append(f"({a},{b}):{self.terms[(a, b)]}")
        return " ".join(parts)

    @staticmethod
    def from_text(curve, s: str) -> "FuncElem":
        s = s.strip()
        if s == "0" or not s:
            return FuncElem.zero(curve)
        terms = {}
        for tok in s.split():
            mono, _, coeff = tok.rpartition(":")
            body = mono.lstrip("(").rstrip(")")
            a_s, _, b_s = body.partition(",")
            c = int(coeff)
            if c:
                terms[(int(a_s), int(b_s) if b_s else 0)] = c
        return FuncElem(curve, terms)

    def __repr__(self):
        return f"FuncElem<{self.text()}>"


def _y_reduce(curve, raw: dict) -> dict:
    """Rewrite y^q0 -> x^(q0+1) - y until all y-degrees are < mu."""
    if curve.kind == "rational":
        return {k: c for k, c in raw.items() if c}
    ctx = curve.field
    q0 = curve.q0
    work = [(k, c) for k, c in raw.items() if c and k[1] >= q0]
    out = {k: c for k, c in raw.items() if c and k[1] < q0}
    while work:
        (a, b), c = work.pop()
        if c == 0:
            continue
        for k, v in (((a + q0 + 1, b - q0), c), ((a, b - q0 + 1), ctx.neg(c))):
            if k[1] >= q0:
                work.append((k, v))
            else:
                s = ctx.add(out.get(k, 0), v)
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
    return out


@functools.lru_cache(maxsize=None)
def basis_monomials(curve: CurveCtx, dmax: int) -> tuple:
    """Monomials (a, b) with pole order <= dmax, sorted by pole order.

    This is a basis of L(dmax * P_inf); its size is dmax + 1 - g once
    dmax >= 2g - 1 (Riemann-Roch), smaller in the gap range below that.
    """
    if dmax < 0:
        return ()
    out = []
    if curve.kind == "rational":
        out = [(a, 0) for a in range(dmax + 1)]
    else:
        q0 = curve.q0
        for b in range(curve.mu):
            d0 = b * (q0 + 1)
            a = 0
            while d0 + a * q0 <= dmax:
                out.append((a, b))
                a += 1
    out.sort(key=lambda ab: curve.pole_order(*ab))
    return tuple(out)


def ya_basis_upto(curve: CurveCtx, dmax: int) -> list[FuncElem]:
    """The monomial basis of L(dmax * P_inf) as FuncElems."""
    return [FuncElem.monomial(curve, a, b) for (a, b) in basis_monomials(curve, dmax)]


def vanishing_function(curve: CurveCtx, c: int = 1) -> FuncElem:
    """(x^q - x)^c: vanishes simply at every affine place (q = q0^2 Hermitian).

    Its pole order at infinity is c*q0^3 on the Hermitian curve, c*q on the
    line; used to encode divisor conditions -c*D as principal multiples.
    """
    if c < 0:
        raise ValueError("vanishing order must be >= 0")
    ctx = curve.field
    h = FuncElem(curve, {(ctx.q, 0): 1, (1, 0): ctx.neg(1)})
    return h**c


@dataclass
class LocalSeries:
    """Truncated power series of a function at an affine place.

    coeffs[i] multiplies t^i for the uniformizer t = x - x(P0); the
    precision is len(coeffs): the function is known mod t^precision.
    """

    curve: CurveCtx
    place: Place
    coeffs: list

    @property
    def precision(self) -> int:
        return len(self.coeffs)


def _ser_trunc_mul(ctx, A, B, N):
    """Truncated series product to length N (numpy int arrays)."""
    A = np.asarray(A[:N], dtype=np.int64)
    B = np.asarray(B[:N], dtype=np.int64)
    out = np.zeros(N, dtype=np.int64)
    for k in np.nonzero(A)[0]:
        k = int(k)
        seg = ctx.mul_arr(A[k], B[: N - k])
        out[k:] = ctx.add_arr(out[k:], seg)
    return out


@functools.lru_cache(maxsize=None)
def _y_series(curve: CurveCtx, place: Place, N: int) -> tuple:
    """Series of y at (a0, b0) to precision N, by Artin-Schreier iteration."""
    ctx = curve.field
    q0 = curve.q0
    a0, b0 = place.x, place.y
    # (a0 + t)^(q0+1), exact (degree q0+1 polynomial)
    xs = np.zeros(N, dtype=np.int64)
    xs[0] = a0
    if N > 1:
        xs[1] = 1
    xq = np.zeros(N, dtype=np.int64)
    xq[0] = 1
    for _ in range(q0 + 1):
        xq = _ser_trunc_mul(ctx, xq, xs, N)
    ys = np.zeros(N, dtype=np.int64)
    ys[0] = b0
    # y <- x^(q0+1) - y^q0 gains a factor q0 of agreement each pass
    steps = 2
    while q0**steps < N + 1:
        steps += 1
    for _ in range(steps + 1):
        yq = np.zeros(N, dtype=np.int64)
        pow_q0 = ctx.pow_arr(ys, q0)
        idx = np.arange(len(ys)) * q0
        keep = idx < N
        yq[idx[keep]] = pow_q0[keep]
        new = ctx.sub_arr(xq, yq)
        if np.array_equal(new, ys):
            break
        ys = new
    # sanity: the series satisfies the curve equation to precision N
    chk = ctx.add_arr(_frob_series(ctx, ys, q0, N), ys)
    assert np.array_equal(chk, xq), "y-series does not satisfy the curve equation"
    return tuple(int(v) for v in ys)


def _frob_series(ctx, S, q0, N):
    """(sum c_i t^i)^q0 = sum c_i^q0 t^(i q0), truncated to N."""
    out = np.zeros(N, dtype=np.int64)
    S = np.asarray(S, dtype=np.int64)
    pow_q0 = ctx.pow_arr(S, q0)
    idx = np.arange(len(S)) * q0
    keep = idx < N
    out[idx[keep]] = pow_q0[keep]
    return out


def local_expand(f: FuncElem, place: Place, N: int) -> LocalSeries:
    """Expand f in powers of t = x - x(P0) to precision N."""
    if N < 1:
        raise ValueError("precision must be >= 1")
    curve = f.curve
    ctx = curve.field
    a0 = place.x
    # split f into polynomials in x per y-degree, then Horner in (a0 + t)
    per_b = {}
    for (a, b), c in f.terms.items():
        per_b.setdefault(b, {})[a] = c
    ypows = None
    if curve.kind == "hermitian" and any(b for b in per_b):
        base = np.asarray(_y_series(curve, place, N), dtype=np.int64)
        ypows = [np.zeros(N, dtype=np.int64), base]
        ypows[0][0] = 1
        for _ in range(2, curve.mu):
            ypows.append(_ser_trunc_mul(ctx, ypows[-1], base, N))
    total = np.zeros(N, dtype=np.int64)
    for b, poly in per_b.items():
        amax = max(poly)
        acc = np.zeros(N, dtype=np.int64)
        for a in range(amax, -1, -1):
            # acc <- acc * (a0 + t) + coeff
            shifted = np.zeros(N, dtype=np.int64)
            shifted[1:] = acc[:-1]
            acc = ctx.add_arr(ctx.mul_arr(acc, np.int64(a0)), shifted)
            c = poly.get(a, 0)
            if c:
                acc[0] = ctx.add(int(acc[0]), c)
        if b:
            acc = _ser_trunc_mul(ctx, acc, ypows[b], N)
        total = ctx.add_arr(total, acc)
    return LocalSeries(curve, place, [int(v) for v in total])


@functools.lru_cache(maxsize=4096)
def expansion_matrix(curve: CurveCtx, place: Place, monomials: tuple, N: int):
    """Column j = local expansion of monomial j at the place, shape (N, len).

    Cached (decoders hit the same few matrices for every received word);
    the returned array is marked read-only, copy before mutating.
    """
    M = np.zeros((N, len(monomials)), dtype=np.int64)
    for j, (a, b) in enumerate(monomials):
        M[:, j] = local_expand(FuncElem.monomial(curve, a, b), place, N).coeffs
    M.setflags(write=False)
    return M


def reconstruct_from_expansion(series: LocalSeries, m: int):
    """The unique f in L(m * P_inf) with the given expansion, or None.

    Needs precision >= m + 1: two functions of L(m P_inf) agreeing to order
    m + 1 at a place differ by a function with more zeros than poles, hence
    are equal.  None means no element of the space matches (NoMatch).
    """
    if series.precision <= m:
        raise InsufficientPrecision(
            f"precision {series.precision} cannot pin down pole order {m}"
        )
    curve = series.curve
    monos = basis_monomials(curve, m)
    A = expansion_matrix(curve, series.place, monos, series.precision)
    x = gf.solve(curve.field, A, np.asarray(series.coeffs, dtype=np.int64))
    if x is None:
        return None
    return FuncElem.from_basis(curve, monos, x)
