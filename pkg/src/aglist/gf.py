"""Arithmetic in GF(p^m) for p^m <= 2**16, plus dense linear algebra over it.

Field elements are plain ints.  The integer a = sum(a_i * p**i) with digits
0 <= a_i < p stands for the element sum(a_i * xi**i), where xi is the class
of x modulo the context's irreducible polynomial.  Addition is digitwise
mod p (XOR when p = 2); multiplication and inversion go through log/antilog
tables built once per context from a fixed generator.

Both the modulus and the generator are chosen deterministically: the modulus
is the monic irreducible of degree m whose integer encoding is smallest, and
the generator is the smallest integer encoding an element of order q-1.  Two
contexts for the same (p, m) therefore agree element-for-element, and
field_create caches them so equality of contexts is identity.

FieldElem is a thin operator-overloading wrapper used in interactive work
and tests; the decoder pipelines stay on raw ints.  The numpy helpers at the
bottom (rref, solve, nullspace) treat 2-D int arrays as matrices over the
field and are the workhorse of interpolation and reconstruction.
"""

import functools

import numpy as np

from .errors import (
    ContextMismatch,
    DivisionByZero,
    FieldTooLarge,
    NonPrimeCharacteristic,
)

FIELD_CAP = 1 << 16


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# Polynomials over the prime field F_p, as little-endian coefficient lists.
# Only used once per context, to find the modulus; no need to be fast.


def _ptrim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def _pmul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return _ptrim(out)


def _pmod(f, mod, p):
    # mod is monic
    f = list(f)
    dm = len(mod) - 1
    while len(f) > dm:
        c = f[-1]
        if c:
            off = len(f) - 1 - dm
            for i, b in enumerate(mod):
                f[off + i] = (f[off + i] - c * b) % p
        f.pop()
    return _ptrim(f)


def _pgcd(f, g, p):
    f, g = list(f), list(g)
    while g:
        lead_inv = pow(g[-1], p - 2, p)
        mg = [(c * lead_inv) % p for c in g]
        f, g = g, _pmod(f, mg, p)
    return f


def _x_power_mod(k, mod, p):
    """x**k reduced mod the monic polynomial mod, by square-and-multiply."""
    result = [1]
    base = _pmod([0, 1], mod, p)
    while k:
        if k & 1:
            result = _pmod(_pmul(result, base, p), mod, p)
        base = _pmod(_pmul(base, base, p), mod, p)
        k >>= 1
    return result


def _is_irreducible(mod, p):
    m = len(mod) - 1
    # x^(p^m) == x mod f, and gcd(x^(p^(m/r)) - x, f) = 1 for prime r | m
    xq = _x_power_mod(p**m, mod, p)
    if _ptrim(list(xq)) != [0, 1]:
        return False
    r = 2
    mm = m
    primes = set()
    while mm > 1:
        if mm % r == 0:
            primes.add(r)
            while mm % r == 0:
                mm //= r
        r += 1
    for r in primes:
        h = _x_power_mod(p ** (m // r), mod, p)
        h = list(h) + [0, 0]
        h[1] = (h[1] - 1) % p
        if len(_pgcd(mod, _ptrim(h), p)) - 1 != 0:
            return False
    return True


def _digits(n, p, width):
    out = []
    for _ in range(width):
        out.append(n % p)
        n //= p
    return out


def _encode(digits, p):
    n = 0
    for d in reversed(digits):
        n = n * p + d
    return n


class FieldCtx:
    """Tables and operations for one finite field GF(p^m)."""

    def __init__(self, p: int, m: int):
        if not _is_prime(p):
            raise NonPrimeCharacteristic(f"characteristic {p} is not prime")
        if m < 1:
            raise ValueError(f"extension degree must be >= 1, got {m}")
        q = p**m
        if q > FIELD_CAP:
            raise FieldTooLarge(f"{p}^{m} = {q} exceeds cap {FIELD_CAP}")
        self.p = p
        self.m = m
        self.q = q
        self.modulus = self._find_modulus()
        self._build_tables()
        self._np_tables()

    def _find_modulus(self) -> int:
        p, m = self.p, self.m
        if m == 1:
            return p  # the polynomial x
        for c in range(p**m):
            mod = _digits(c, p, m) + [1]
            if _is_irreducible(mod, p):
                return _encode(mod, p)
        raise AssertionError("no irreducible polynomial found")  # unreachable

    # -- raw polynomial-representation products, used only to bootstrap tables

    def _mul_poly(self, a: int, b: int) -> int:
        p, m = self.p, self.m
        mod = _digits(self.modulus, p, m + 1)
        prod = _pmod(_pmul(_digits(a, p, m), _digits(b, p, m), p), mod, p)
        return _encode(prod, p)

    def _pow_poly(self, a: int, k: int) -> int:
        out = 1
        while k:
            if k & 1:
                out = self._mul_poly(out, a)
            a = self._mul_poly(a, a)
            k >>= 1
        return out

    def _build_tables(self):
        q = self.q
        order = q - 1
        factors = set()
        n = order
        d = 2
        while d * d <= n:
            while n % d == 0:
                factors.add(d)
                n //= d
            d += 1
        if n > 1:
            factors.add(n)
        gen = 1
        for cand in range(2, q):
            if all(self._pow_poly(cand, order // r) != 1 for r in factors):
                gen = cand
                break
        self.gen = gen
        exp = [1] * order
        log = [0] * q
        acc = 1
        for i in range(order):
            exp[i] = acc
            log[acc] = i
            acc = self._mul_poly(acc, gen)
        assert acc == 1, "generator order mismatch"
        self.exp = exp
        self.log = log
        if self.p == 2:
            self._add_table = None
        elif q <= 1024:
            self._add_table = [
                [self._add_digitwise(a, b) for b in range(q)] for a in range(q)
            ]
        else:
            self._add_table = None
        self._neg = [self._neg_digitwise(a) for a in range(q)]

    def _np_tables(self):
        self.exp_np = np.asarray(self.exp, dtype=np.int64)
        self.log_np = np.asarray(self.log, dtype=np.int64)
        self.neg_np = np.asarray(self._neg, dtype=np.int64)
        # full q x q tables for q <= 1024: one gather per elementwise op
        if self.q <= 1024:
            a = np.arange(self.q, dtype=np.int64)
            A, B = np.meshgrid(a, a, indexing="ij")
            if self.p == 2:
                self.add_tab = A ^ B
            else:
                add = np.zeros_like(A)
                pw = 1
                for _ in range(self.m):
                    add += ((A // pw + B // pw) % self.p) * pw
                    pw *= self.p
                self.add_tab = add
            mask = (A != 0) & (B != 0)
            idx = (
                self.log_np[np.where(mask, A, 1)] + self.log_np[np.where(mask, B, 1)]
            ) % (self.q - 1)
            self.mul_tab = np.where(mask, self.exp_np[idx], 0)
        else:
            self.add_tab = None
            self.mul_tab = None

    def _add_digitwise(self, a: int, b: int) -> int:
        p = self.p
        out, pw = 0, 1
        while a or b:
            out += ((a + b) % p) * pw
            a //= p
            b //= p
            pw *= p
        return out

    def _neg_digitwise(self, a: int) -> int:
        p = self.p
        out, pw = 0, 1
        while a:
            out += (-a % p) * pw
            a //= p
            pw *= p
        return out

    # -- scalar operations on int-encoded elements

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self._add_table is not None:
            return self._add_table[a][b]
        return self._add_digitwise(a, b)

    def neg(self, a: int) -> int:
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self._neg[b])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of 0")
        return self.exp[(self.q - 1 - self.log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise DivisionByZero("division by 0")
        if a == 0:
            return 0
        return self.exp[(self.log[a] - self.log[b]) % (self.q - 1)]

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k == 0:
                return 1
            if k < 0:
                raise DivisionByZero("0 to a negative power")
            return 0
        return self.exp[(self.log[a] * k) % (self.q - 1)]

    def frobenius(self, a: int, k: int = 1) -> int:
        """a raised to the p^k, the k-fold Frobenius."""
        return self.pow(a, self.p ** (k % self.m))

    def p_root(self, a: int, e: int = 1) -> int:
        """The unique b with b^(p^e) = a."""
        k = e % self.m
        if k == 0:
            return a
        return self.frobenius(a, self.m - k)

    # -- vectorized operations on numpy int arrays of encoded elements

    def add_arr(self, A, B):
        if self.p == 2:
            return A ^ B
        if self.add_tab is not None:
            return self.add_tab[A, B]
        A = np.asarray(A)
        B = np.asarray(B)
        out = np.zeros(np.broadcast_shapes(A.shape, B.shape), dtype=np.int64)
        pw = 1
        for _ in range(self.m):
            out += ((A // pw + B // pw) % self.p) * pw
            pw *= self.p
        return out

    def neg_arr(self, A):
        if self.p == 2:
            return np.asarray(A).copy()
        return self.neg_np[A]

    def sub_arr(self, A, B):
        if self.p == 2:
            return A ^ B
        return self.add_arr(A, self.neg_np[np.asarray(B)])

    def mul_arr(self, A, B):
        if self.mul_tab is not None:
            return self.mul_tab[A, B]
        A = np.asarray(A)
        B = np.asarray(B)
        mask = (A != 0) & (B != 0)
        idx = (
            self.log_np[np.where(mask, A, 1)] + self.log_np[np.where(mask, B, 1)]
        ) % (self.q - 1)
        return np.where(mask, self.exp_np[idx], 0)

    def sum_arr(self, A) -> int:
        """Field sum of all entries of an array."""
        A = np.asarray(A)
        if self.p == 2:
            return int(np.bitwise_xor.reduce(A, axis=None))
        out = 0
        pw = 1
        for _ in range(self.m):
            out += int((A // pw % self.p).sum() % self.p) * pw
            pw *= self.p
        return out

    def dot(self, u, v) -> int:
        """Field inner product of two vectors."""
        return self.sum_arr(self.mul_arr(u, v))

    def sum_axis(self, A):
        """Row-wise field sums of a 2-D array."""
        A = np.asarray(A)
        if A.shape[1] == 0:
            return np.zeros(A.shape[0], dtype=np.int64)
        if self.p == 2:
            return np.bitwise_xor.reduce(A, axis=1)
        out = np.zeros(A.shape[0], dtype=np.int64)
        pw = 1
        for _ in range(self.m):
            out += (A // pw % self.p).sum(axis=1) % self.p * pw
            pw *= self.p
        return out

    def pow_arr(self, A, k: int):
        A = np.asarray(A)
        mask = A != 0
        idx = (self.log_np[np.where(mask, A, 1)] * k) % (self.q - 1)
        out = np.where(mask, self.exp_np[idx], 0)
        if k == 0:
            out = np.ones_like(A)
        return out

    def text(self) -> str:
        return f"{self.p}^{self.m}/{self.modulus}"

    def elem(self, val) -> "FieldElem":
        return FieldElem(self, val)

    def __repr__(self):
        return f"FieldCtx(GF({self.p}^{self.m}), modulus={self.modulus})"


@functools.lru_cache(maxsize=None)
def field_create(p: int, m: int = 1) -> FieldCtx:
    """Context for GF(p^m); cached, so equal parameters give the same object."""
    return FieldCtx(p, m)


def ctx_from_text(text: str) -> FieldCtx:
    """Inverse of FieldCtx.text, e.g. '2^4/19'."""
    pm, _, mod = text.partition("/")
    ps, _, ms = pm.partition("^")
    ctx = field_create(int(ps), int(ms) if ms else 1)
    if mod and int(mod) != ctx.modulus:
        raise ValueError(f"modulus {mod} does not match canonical {ctx.modulus}")
    return ctx


def field_from_order(q: int) -> FieldCtx:
    """Context for GF(q), factoring q = p^m; q must be a prime power."""
    p = 2
    while p * p <= q:
        if q % p == 0:
            m = 0
            n = q
            while n % p == 0:
                n //= p
                m += 1
            if n != 1:
                raise NonPrimeCharacteristic(f"{q} is not a prime power")
            return field_create(p, m)
        p += 1
    return field_create(q, 1)  # q itself prime


class FieldElem:
    """Operator sugar over an int-encoded element; checks context identity."""

    __slots__ = ("ctx", "val")

    def __init__(self, ctx: FieldCtx, val: int):
        if not 0 <= val < ctx.q:
            raise ValueError(f"element {val} outside [0, {ctx.q})")
        self.ctx = ctx
        self.val = val

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElem):
            if other.ctx is not self.ctx:
                raise ContextMismatch(
                    f"mixing {self.ctx.text()} with {other.ctx.text()}"
                )
            return other.val
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElem(self.ctx, self.ctx.add(self.val, v))

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElem(self.ctx, self.ctx.sub(self.val, v))

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElem(self.ctx, self.ctx.sub(v, self.val))

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElem(self.ctx, self.ctx.mul(self.val, v))

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElem(self.ctx, self.ctx.div(self.val, v))

    def __rtruediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElem(self.ctx, self.ctx.div(v, self.val))

    def __neg__(self):
        return FieldElem(self.ctx, self.ctx.neg(self.val))

    def __pow__(self, k: int):
        return FieldElem(self.ctx, self.ctx.pow(self.val, k))

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.ctx is other.ctx and self.val == other.val
        if isinstance(other, int):
            return self.val == other
        return NotImplemented

    def __hash__(self):
        return hash((id(self.ctx), self.val))

    def __repr__(self):
        return f"{self.val}"


def frobenius(a: FieldElem, k: int = 1) -> FieldElem:
    return FieldElem(a.ctx, a.ctx.frobenius(a.val, k))


def p_root(a: FieldElem, e: int = 1) -> FieldElem:
    return FieldElem(a.ctx, a.ctx.p_root(a.val, e))


# ---------------------------------------------------------------------------
# Dense linear algebra over the field.  Matrices are 2-D numpy int arrays of
# encoded elements.  Everything is plain Gaussian elimination; the fields are
# small enough that table lookups beat anything cleverer at this scale.


def _forward_eliminate(ctx: FieldCtx, R):
    """In-place row echelon form (pivots normalized to 1, zeros below only)."""
    rows, cols = R.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            R[[r, i]] = R[[i, r]]
        piv = int(R[r, c])
        if piv != 1:
            R[r, c:] = ctx.mul_arr(R[r, c:], np.int64(ctx.inv(piv)))
        below = np.nonzero(R[r + 1 :, c])[0]
        if below.size:
            sel = r + 1 + below
            upd = ctx.mul_arr(R[sel, c][:, None], R[r, c:][None, :])
            R[sel, c:] = ctx.sub_arr(R[sel, c:], upd)
        pivots.append(c)
        r += 1
    return pivots


def rref(ctx: FieldCtx, M):
    """Reduced row echelon form.  Returns (R, pivot_columns)."""
    R = np.array(M, dtype=np.int64)
    if R.ndim != 2:
        raise ValueError("matrix must be 2-D")
    pivots = _forward_eliminate(ctx, R)
    for ridx in range(len(pivots) - 1, -1, -1):
        c = pivots[ridx]
        above = np.nonzero(R[:ridx, c])[0]
        if above.size:
            upd = ctx.mul_arr(R[above, c][:, None], R[ridx, c:][None, :])
            R[above, c:] = ctx.sub_arr(R[above, c:], upd)
    return R, pivots


def nullspace_vector(ctx: FieldCtx, M):
    """Kernel vector with 1 in the first non-pivot column, or None.

    Deterministic: the first pivot-free column (in reduced echelon order)
    gets coordinate 1, later free columns 0, and the pivot coordinates are
    back-substituted.
    """
    R = np.array(M, dtype=np.int64)
    pivots = _forward_eliminate(ctx, R)
    cols = R.shape[1]
    pivset = set(pivots)
    free = next((c for c in range(cols) if c not in pivset), None)
    if free is None:
        return None
    x = np.zeros(cols, dtype=np.int64)
    x[free] = 1
    for ridx in range(len(pivots) - 1, -1, -1):
        pc = pivots[ridx]
        if pc > free:
            continue
        val = ctx.dot(R[ridx, pc + 1 :], x[pc + 1 :])
        x[pc] = ctx.neg(val)
    return x


def solve(ctx: FieldCtx, A, b):
    """Particular solution of A x = b with free variables 0, or None.

    None means the system is inconsistent.  With free variables pinned to
    zero the solution has minimal support among the echelon-form family.
    """
    A = np.asarray(A, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    aug = np.concatenate([A, b[:, None]], axis=1)
    pivots = _forward_eliminate(ctx, aug)
    ncols = A.shape[1]
    if pivots and pivots[-1] == ncols:
        return None
    x = np.zeros(ncols, dtype=np.int64)
    for ridx in range(len(pivots) - 1, -1, -1):
        pc = pivots[ridx]
        rhs = int(aug[ridx, ncols])
        val = ctx.dot(aug[ridx, pc + 1 : ncols], x[pc + 1 :])
        x[pc] = ctx.sub(rhs, val)
    return x


class SolveCache:
    """Pre-factored solver for repeated A x = b with fixed A.

    Stores E with E A = rref(A) (E from reducing [A | I]); each solve is a
    single table-multiply of E against b plus a consistency check on the
    rows below the pivot block.
    """

    def __init__(self, ctx: FieldCtx, A):
        A = np.asarray(A, dtype=np.int64)
        rows = A.shape[0]
        aug = np.concatenate([A, np.eye(rows, dtype=np.int64)], axis=1)
        R, pivots = rref(ctx, aug)
        self.ctx = ctx
        self.ncols = A.shape[1]
        self.pivots = [p for p in pivots if p < self.ncols]
        self.E = R[:, self.ncols:]
        self.rank = len(self.pivots)

    def solve(self, b):
        """Solution vector of A x = b with free variables 0, or None."""
        ctx = self.ctx
        b = np.asarray(b, dtype=np.int64)
        y = ctx.mul_arr(self.E, b[None, :])
        if self.ctx.p == 2:
            yb = np.bitwise_xor.reduce(y, axis=1)
        else:
            yb = y[:, 0]
            for j in range(1, y.shape[1]):
                yb = ctx.add_arr(yb, y[:, j])
        if np.any(yb[self.rank:]):
            return None
        x = np.zeros(self.ncols, dtype=np.int64)
        for row_idx, pc in enumerate(self.pivots):
            x[pc] = yb[row_idx]
        return x
