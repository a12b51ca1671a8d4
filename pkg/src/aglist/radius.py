"""Decoding-radius guarantees for interpolation-based list decoding.

All radii are exact rationals (fractions.Fraction); a decoder floors them.
CodeShape carries the four numbers every bound depends on: length n, the
divisor degree degG, the curve genus g and the characteristic p.

tau_classic is the usual multiplicity-s, list-size-ell bound and pays a
genus penalty of g/s.  tau_general is the bound for interpolating in
z^(p^e) instead of z: raising the inner exponent divides the genus term by
p^e, so for p^e large enough (e_for_no_penalty) the penalty disappears
entirely.  The extra parameter t in [0, s] is an analysis knob that trades
constraint rows against radius; it never changes what the decoder solves,
only which guarantee one may claim, so tau_best sweeps it and keeps the max.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb, floor


@dataclass(frozen=True)
class CodeShape:
    """Everything the radius formulas need to know about a code."""

    n: int
    degG: int
    g: int
    p: int


@dataclass(frozen=True)
class GSParams:
    """Interpolation parameters: multiplicity s, list size ell, inner power e."""

    s: int = 1
    ell: int = 1
    e: int = 0
    t: int | None = None  # analysis parameter, only the formulas read it

    def validate(self):
        if self.s < 1 or self.ell < self.s or self.e < 0:
            raise ValueError(f"need 1 <= s <= ell and e >= 0, got {self}")
        if self.t is not None and not 0 <= self.t <= self.s:
            raise ValueError(f"analysis parameter t={self.t} outside [0, {self.s}]")


def tau_classic(shape: CodeShape, s: int, ell: int) -> Fraction:
    """Classic radius bound with the g/s genus penalty."""
    if s < 1 or ell < s:
        raise ValueError(f"need 1 <= s <= ell, got s={s}, ell={ell}")
    n, degG, g = shape.n, shape.degG, shape.g
    return Fraction(
        s * (2 * ell - s + 1) * n - ell * (ell + 1) * degG - 2, 2 * s * (ell + 1)
    ) - Fraction(g, s)


def tau_general(shape: CodeShape, s: int, ell: int, e: int, t: int) -> Fraction:
    """Radius bound for interpolation in z^(p^e), analysis parameter t.

    t = 0, e = 0 gives exactly tau_classic; t = 1 subtracts only
    (1 + g*ell) / (p^e * s * (ell+1)), so the genus term shrinks by the
    factor p^e and vanishes once p^e >= 1 + g*ell.
    """
    if s < 1 or ell < s or e < 0:
        raise ValueError(f"need 1 <= s <= ell and e >= 0, got s={s}, ell={ell}, e={e}")
    if not 0 <= t <= s:
        raise ValueError(f"analysis parameter t={t} outside [0, {s}]")
    n, degG, g, p = shape.n, shape.degG, shape.g, shape.p
    den = comb(s + 1, 2) + s * (ell - t + 1) - comb(s - t + 1, 2)
    num = n * (s * (ell - t + 1) - comb(s - t + 1, 2)) - (
        comb(ell + 1, 2) - comb(t, 2)
    ) * degG
    return Fraction(num, den) - Fraction(1 + g * (ell - t + 1), p**e * den)


def tau_best(shape: CodeShape, s: int, ell: int, e: int) -> tuple[Fraction, int]:
    """Max of tau_general over t in [0, s]; ties broken toward smaller t."""
    best = None
    best_t = 0
    for t in range(s + 1):
        v = tau_general(shape, s, ell, e, t)
        if best is None or v > best:
            best, best_t = v, t
    return best, best_t


def e_for_no_penalty(p: int, g: int, ell: int) -> int:
    """Smallest e with p^e >= 1 + g*ell (0 when the genus is 0)."""
    target = 1 + g * ell
    e = 0
    pe = 1
    while pe < target:
        pe *= p
        e += 1
    return e


def check_feasible(shape: CodeShape, s: int, ell: int, e: int):
    """None when the parameters admit a decoder, else the first violated bound."""
    if shape.degG * ell > s * shape.n:
        return (
            f"degG = {shape.degG} exceeds s*n/ell = {Fraction(s * shape.n, ell)}"
        )
    if not 1 <= s <= ell:
        return f"need 1 <= s <= ell, got s={s}, ell={ell}"
    tau, _ = tau_best(shape, s, ell, e)
    if tau < 0:
        return f"radius bound {tau} is negative"
    return None


def choose_A_degree(shape: CodeShape, s: int, e: int, tau: int) -> int:
    """Largest interpolation divisor degree, alpha = p^e * s * (n - tau) - 1.

    The strict bound deg A < p^e * s * (n - tau) is what makes a solution
    of the constraint system vanish at every codeword within distance tau.
    """
    if not 0 <= tau < shape.n:
        raise ValueError(f"radius {tau} outside [0, {shape.n})")
    return shape.p**e * s * (shape.n - tau) - 1
