"""One-point evaluation codes and the full list-decode pipeline.

An AGCode evaluates L(m * P_inf) at an ordered set of affine places; decode
composes interpolation (either backend), series root finding and distance
filtering into the final list.  The decoder never returns a codeword
outside the requested radius, and within the guaranteed radius it returns
every codeword inside the ball.
"""

from dataclasses import dataclass, field
from math import ceil, floor, log

import numpy as np

from . import curve as cv
from . import interp, modform, roots
from .errors import (
    DegreeTooLarge,
    DegreeTooSmall,
    InfeasibleParams,
    InterpolationFailure,
    UnsupportedCurve,
)
from .radius import CodeShape, GSParams, check_feasible, choose_A_degree, tau_best


@dataclass(frozen=True)
class AGCode:
    """Evaluation code C(D, m*P_inf); places is D in lexicographic order.

    p0 is the reserved expansion place for root finding: excluded from D,
    fixed at creation, lexicographically last among the exclusions.
    """

    curve: cv.CurveCtx
    m: int
    places: tuple
    excluded: tuple
    p0: cv.Place
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def n(self):
        return len(self.places)

    @property
    def k(self):
        return self.m + 1 - self.curve.genus

    @property
    def dstar(self):
        return self.n - self.m

    @property
    def shape(self):
        return CodeShape(self.n, self.m, self.curve.genus, self.curve.field.p)

    def basis(self):
        return cv.basis_monomials(self.curve, self.m)

    def generator_matrix(self):
        """k x n evaluation matrix of the monomial basis, cached."""
        G = self._cache.get("gen")
        if G is None:
            ctx = self.curve.field
            G = np.zeros((self.k, self.n), dtype=np.int64)
            for i, (a, b) in enumerate(self.basis()):
                f = cv.FuncElem.monomial(self.curve, a, b)
                G[i] = [f.evaluate(P) for P in self.places]
            G.setflags(write=False)
            self._cache["gen"] = G
        return G

    def text(self):
        return (
            f"[{self.n},{self.k},{self.dstar}] over {self.curve.field.text()} "
            f"on {self.curve.text()}"
        )


def code_create(curve, m, excluded=None):
    """Build a code from a curve, a pole order m and excluded affine places.

    m must lie in [2g-1, n) so that dim L(m*P_inf) = m+1-g exactly and the
    designed distance is positive.  At least one affine place stays out of
    D (the expansion point for root finding); by default the
    lexicographically last one.
    """
    all_places = cv.rational_places(curve)
    if excluded is None:
        excluded = (all_places[-1],)
    excluded = tuple(sorted(set(excluded), key=lambda P: P.key()))
    if not excluded:
        raise UnsupportedCurve("at least one affine place must be excluded")
    known = set(all_places)
    for P in excluded:
        if P not in known:
            raise UnsupportedCurve(f"excluded place {P.text()} not on the curve")
    places = tuple(P for P in all_places if P not in set(excluded))
    g = curve.genus
    if m < 2 * g - 1:
        raise DegreeTooSmall(f"m={m} below 2g-1={2 * g - 1}")
    if m >= len(places):
        raise DegreeTooLarge(f"m={m} not below n={len(places)}")
    return AGCode(curve, m, places, excluded, excluded[-1])


def encode(code, message):
    """Evaluate the message's function at every place of D."""
    if len(message) != code.k:
        raise ValueError(f"message length {len(message)} != k={code.k}")
    ctx = code.curve.field
    msg = np.asarray(message, dtype=np.int64)
    G = code.generator_matrix()
    return [int(v) for v in ctx.sum_axis(ctx.mul_arr(G.T, msg[None, :]))]


def message_function(code, message):
    return cv.FuncElem.from_basis(code.curve, code.basis(), message)


@dataclass
class DecodeParams:
    s: int = 1
    ell: int = 1
    e: int = 0
    backend: str = "dense"
    tau: int = None

    def validate(self):
        GSParams(self.s, self.ell, self.e).validate()
        if self.backend not in ("dense", "module"):
            raise ValueError(f"unknown backend {self.backend!r}")


@dataclass
class DecodeEntry:
    message: list
    codeword: list
    distance: int


@dataclass
class DecodeResult:
    entries: list
    backend: str
    e_used: int
    tau: int
    q_found: bool

    def codewords(self):
        return [en.codeword for en in self.entries]

    def __len__(self):
        return len(self.entries)


def _distance(a, b):
    return sum(1 for x, y in zip(a, b) if x != y)


def decode(code, received, params=None):
    """List decoding: every codeword within tau of the received word.

    Pipeline: choose the A-divisor degree for the target radius, find a
    nonzero Q through all constraints (dense elimination or module
    reduction), extract series roots, lift p^e-th roots, reconstruct in
    L(G), keep exactly the verified codewords inside the ball.  A missing Q
    is a certificate that the ball is empty (any close codeword would force
    one to exist), reported as an empty list with q_found=False.
    """
    if params is None:
        params = DecodeParams()
    params.validate()
    if len(received) != code.n:
        raise ValueError(f"received length {len(received)} != n={code.n}")
    received = [int(v) for v in received]
    s, ell, e = params.s, params.ell, params.e
    shape = code.shape
    problem = check_feasible(shape, s, ell, e)
    if problem is not None:
        raise InfeasibleParams(problem)
    guaranteed = floor(tau_best(shape, s, ell, e)[0])
    tau = params.tau if params.tau is not None else guaranteed
    if tau > guaranteed:
        raise InfeasibleParams(
            f"tau={tau} above the guaranteed radius {guaranteed} for "
            f"(s,ell,e)=({s},{ell},{e})"
        )
    if tau < 0:
        raise InfeasibleParams(f"tau={tau} negative")
    alpha = choose_A_degree(shape, s, e, tau)

    try:
        if params.backend == "module":
            R = modform.build_R(code, received)
            mx = modform.build_module_matrix(code, R, GSParams(s, ell, e), alpha)
            q = modform.minimal_Q(modform.shifted_reduce(mx))
        else:
            q = interp.solve_Q(
                interp.InterpProblem(code, received, s, ell, e, alpha, tau)
            )
    except InterpolationFailure:
        return DecodeResult([], params.backend, e, tau, q_found=False)

    pe = code.curve.field.p**e
    # Q can vanish at the reserved place itself (module rows are forced
    # through it), which spends t-adic digits before the root recursion
    # starts; if a branch comes back short, push the window deeper.
    for bump in range(4):
        sroots = roots.rr_roots(
            roots.DeflatedPoly.from_qpoly(q),
            code.p0,
            pe * (code.m + 1) + bump * (pe * s + 1),
        )
        lifted = []
        for sr in sroots:
            small = roots.pe_root_series(sr, e)
            if small is not None:
                lifted.append(small)
        if all(sm.precision > code.m for sm in lifted):
            break
    entries = []
    seen = set()
    for small in lifted:
        if small.precision <= code.m:
            continue
        for f in roots.candidates(code, [small]):
            if not q.apply(f).is_zero():
                continue
            msg = f.coeffs_on(code.basis())
            key = tuple(msg)
            if key in seen:
                continue
            seen.add(key)
            word = encode(code, msg)
            dist = _distance(word, received)
            if dist <= tau:
                entries.append(DecodeEntry(msg, word, dist))
    entries.sort(key=lambda en: (en.distance, en.codeword))
    return DecodeResult(entries, params.backend, e, tau, q_found=True)


def unique_decode(code, received, backend="dense"):
    """Bounded-distance decoding up to half the designed distance.

    Radius floor((d*-1)/2) with s=ell=1 and e just large enough that
    p^e >= 1+g; balls of that radius around codewords are disjoint, so the
    list has at most one entry.  None means decoding failure.
    """
    g = code.curve.genus
    p = code.curve.field.p
    e = 0 if g == 0 else ceil(log(1 + g, p))
    while p**e < 1 + g:  # guard against float log rounding
        e += 1
    tau = (code.dstar - 1) // 2
    res = decode(code, received, DecodeParams(1, 1, e, backend, tau))
    assert len(res.entries) <= 1
    return res.entries[0] if res.entries else None


def decode_adaptive(code, received, s=1, ell=1, backend="dense"):
    """Classical pass first, inseparable rescue pass only on failure.

    Runs e=0 at its own guaranteed radius; if the list comes back empty (or
    interpolation failed), retries once with e = e_for_no_penalty, whose
    radius is larger by nearly the genus penalty.  The result records which
    e produced it.
    """
    from .radius import e_for_no_penalty

    try:
        first = decode(code, received, DecodeParams(s, ell, 0, backend))
        if first.entries:
            return first
    except InfeasibleParams:
        first = None
    e = e_for_no_penalty(code.curve.field.p, code.curve.genus, ell)
    if e == 0:
        return first if first is not None else decode(
            code, received, DecodeParams(s, ell, 0, backend)
        )
    return decode(code, received, DecodeParams(s, ell, e, backend))
