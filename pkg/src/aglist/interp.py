"""Dense interpolation backend: solve for Q(z) = sum Q_j z^(p^e j) directly.

The multiplicity conditions at each (P_i, r_i) become homogeneous linear
constraints on the coefficients of the Q_j over the monomial bases of
L((alpha - p^e j m) P_inf).  Rewriting z^(p^e j) = ((z - r_i) + r_i)^(p^e j)
and expanding binomially (coefficients taken mod p), the condition
"multiplicity >= p^e s at (P_i, r_i)" says: for every b' < s, the function
multiplying (z - r_i)^(p^e b') must vanish at P_i to order p^e (s - b').
That function is sum_{j >= b'} C(j, b') r_i^(p^e (j - b')) Q_j, because all
binomials C(p^e j, u) with u not a multiple of p^e vanish mod p.

One matrix row per (place, b', series index a < p^e (s - b')); one column
per (j, basis monomial).  A nullspace vector is an interpolation polynomial;
the pick is deterministic (unit vector on the first pivot-free column of the
reduced echelon form).

verify_multiplicity is the independent oracle: it redoes the bivariate
expansion from the definition of multiplicity, with the full binomial sum
rather than the factored form above, and checks every coefficient c_{a,u}
with a + u < target is zero.
"""

from dataclasses import dataclass
from math import comb

import numpy as np

from . import gf
from .curve import FuncElem, Place, basis_monomials, expansion_matrix, local_expand
from .errors import NoNonzeroSolution


@dataclass
class QPoly:
    """Q(z) = sum coeffs[j] * z^(p^e j); coeffs live in nested L-spaces."""

    coeffs: list  # FuncElem, index j = 0..ell
    e: int

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def apply(self, f: FuncElem) -> FuncElem:
        """Q evaluated at z = f, i.e. sum Q_j * f^(p^e j)."""
        curve = self.coeffs[0].curve
        acc = FuncElem.zero(curve)
        fp = FuncElem.const(curve, 1)
        fpe = f.pth_power(self.e)
        for j, qj in enumerate(self.coeffs):
            if j:
                fp = fp * fpe
            if not qj.is_zero():
                acc = acc + qj * fp
        return acc


@dataclass
class InterpProblem:
    """One interpolation instance: code data, received word, parameters.

    The code object only needs .curve, .places, .m and .n.  alpha is the
    degree of the interpolation divisor A = alpha * P_inf; the pipeline
    always sets it to choose_A_degree(...), tests may pass anything.
    """

    code: object
    received: list
    s: int
    ell: int
    e: int
    alpha: int
    tau: int

    def __post_init__(self):
        if len(self.received) != self.code.n:
            raise ValueError(
                f"received word length {len(self.received)} != n = {self.code.n}"
            )

    def column_blocks(self):
        """Per-j monomial bases of L((alpha - p^e j m) P_inf)."""
        pe = self.code.curve.field.p**self.e
        return [
            basis_monomials(self.code.curve, self.alpha - pe * j * self.code.m)
            for j in range(self.ell + 1)
        ]


def build_constraints(problem: InterpProblem):
    """The constraint matrix; rows ordered by (place, b', a), columns by (j, monomial)."""
    code = problem.code
    curve = code.curve
    ctx = curve.field
    s, ell, e = problem.s, problem.ell, problem.e
    pe = ctx.p**e
    prec = pe * s
    blocks = problem.column_blocks()
    widths = [len(b) for b in blocks]
    ncols = sum(widths)
    nrows = code.n * pe * s * (s + 1) // 2
    M = np.zeros((nrows, ncols), dtype=np.int64)
    # binomials C(j, b') reduced mod p
    binom = [[comb(j, b) % ctx.p for b in range(s)] for j in range(ell + 1)]
    row = 0
    for i, P in enumerate(code.places):
        E = expansion_matrix(curve, P, blocks[0], prec)
        ri = problem.received[i]
        for b in range(s):
            # scalar multiplying Q_j inside the (z - r_i)^(p^e b) coefficient
            coef = [
                ctx.mul(binom[j][b], ctx.pow(ri, pe * (j - b))) if j >= b else 0
                for j in range(ell + 1)
            ]
            depth = pe * (s - b)
            off = 0
            for j in range(ell + 1):
                w = widths[j]
                if w and coef[j]:
                    M[row : row + depth, off : off + w] = ctx.mul_arr(
                        np.int64(coef[j]), E[:depth, :w]
                    )
                off += w
            row += depth
    assert row == nrows
    return M


def solve_Q(problem: InterpProblem) -> QPoly:
    """A nonzero interpolation polynomial from the constraint nullspace."""
    curve = problem.code.curve
    M = build_constraints(problem)
    v = gf.nullspace_vector(curve.field, M)
    if v is None:
        raise NoNonzeroSolution(
            f"constraint matrix {M.shape} has full column rank "
            f"(tau={problem.tau}, alpha={problem.alpha})"
        )
    blocks = problem.column_blocks()
    coeffs = []
    off = 0
    for monos in blocks:
        coeffs.append(FuncElem.from_basis(curve, monos, v[off : off + len(monos)]))
        off += len(monos)
    q = QPoly(coeffs, problem.e)
    assert not q.is_zero()
    return q


def verify_multiplicity(q: QPoly, P: Place, r: int, target: int) -> bool:
    """Does Q have a root of multiplicity >= target at (P, r)?

    Re-expands Q around (P, r) from scratch: local series of each Q_j to
    precision target, then the full binomial rewrite
    z^(p^e j) = sum_u C(p^e j, u) r^(p^e j - u) (z - r)^u.  True iff every
    coefficient of t^a (z - r)^u with a + u < target vanishes.
    """
    curve = q.coeffs[0].curve
    ctx = curve.field
    pe = ctx.p ** q.e
    series = [local_expand(qj, P, target).coeffs for qj in q.coeffs]
    for u in range(min(target, pe * len(q.coeffs))):
        # coefficient series of (z - r)^u
        cu = [0] * target
        for j in range(len(q.coeffs)):
            dz = pe * j
            if dz < u:
                continue
            b = comb(dz, u) % ctx.p
            if b == 0:
                continue
            scal = ctx.mul(b, ctx.pow(r, dz - u))
            if scal == 0:
                continue
            sj = series[j]
            for a in range(target):
                cu[a] = ctx.add(cu[a], ctx.mul(scal, sj[a]))
        for a in range(target - u):
            if cu[a]:
                return False
    return True
