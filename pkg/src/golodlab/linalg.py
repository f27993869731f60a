"""Exact scalar arithmetic and dense linear algebra.

Two scalar domains are supported: prime fields F_p (canonical residues in
[0, p), 2 <= p < 2^31) and arbitrary-precision rationals.  There is no
floating point anywhere: every rank, solve and nullspace decision is exact.

Row reduction over a prime field dispatches to the compiled kernel
(``golodlab._kernels``) when it was built; otherwise the pure-Python
elimination below is used.  Both produce the unique RREF, so every
downstream result is independent of which path ran.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

try:  # compiled kernel is optional
    from . import _kernels
except ImportError:  # pragma: no cover - depends on build environment
    _kernels = None

HAVE_KERNEL = _kernels is not None


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class PrimeField:
    """F_p with canonical residue representatives."""

    def __init__(self, p: int):
        if not (2 <= p < 2**31):
            raise ValueError(f"prime field characteristic out of range: {p}")
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.zero = 0
        self.one = 1 % p

    characteristic = property(lambda self: self.p)

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def of(self, x) -> int:
        if isinstance(x, Fraction):
            return self.div(x.numerator % self.p, x.denominator % self.p)
        return int(x) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    @property
    def name(self) -> str:
        return f"f{self.p}"


class RationalField:
    """The rationals, with Fraction scalars kept fully reduced."""

    zero = Fraction(0)
    one = Fraction(1)
    characteristic = 0

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def of(self, x) -> Fraction:
        return Fraction(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return 1 / Fraction(a)

    def div(self, a, b):
        return Fraction(a) / b

    name = property(lambda self: "q")


QQ = RationalField()
GF2 = PrimeField(2)
GF3 = PrimeField(3)


def parse_field(spec: str):
    """Parse a field name: ``q`` for the rationals, ``f<p>`` for F_p."""
    s = spec.strip().lower()
    if s in ("q", "qq", "rational", "rationals"):
        return QQ
    if s.startswith("f") and s[1:].isdigit():
        return PrimeField(int(s[1:]))
    raise ValueError(f"unknown field {spec!r} (expected 'q' or 'f<p>')")


class Matrix:
    """Dense exact matrix over a PrimeField or the rationals."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field, rows, nrows=None, ncols=None):
        self.field = field
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows) if nrows is None else nrows
        self.ncols = (len(self.rows[0]) if self.rows else 0) if ncols is None else ncols
        for r in self.rows:
            if len(r) != self.ncols:
                raise ValueError("ragged rows")

    @classmethod
    def zeros(cls, field, nrows, ncols):
        z = field.zero
        return cls(field, [[z] * ncols for _ in range(nrows)], nrows, ncols)

    @classmethod
    def identity(cls, field, n):
        m = cls.zeros(field, n, n)
        for i in range(n):
            m.rows[i][i] = field.one
        return m

    def copy(self):
        return Matrix(self.field, [list(r) for r in self.rows], self.nrows, self.ncols)

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and other.field == self.field
            and other.nrows == self.nrows
            and other.ncols == self.ncols
            and other.rows == self.rows
        )

    def __repr__(self):
        return f"Matrix({self.field}, {self.nrows}x{self.ncols})"

    def is_zero(self) -> bool:
        z = self.field.zero
        return all(x == z for row in self.rows for x in row)

    def transpose(self) -> "Matrix":
        return Matrix(
            self.field,
            [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
            self.ncols,
            self.nrows,
        )

    def column(self, j):
        return [self.rows[i][j] for i in range(self.nrows)]

    def mul_vec(self, v):
        if len(v) != self.ncols:
            raise ValueError("dimension mismatch")
        F = self.field
        out = []
        for row in self.rows:
            acc = F.zero
            for a, x in zip(row, v):
                if a != F.zero and x != F.zero:
                    acc = F.add(acc, F.mul(a, x))
            out.append(acc)
        return out

    def __mul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch")
        F = self.field
        out = Matrix.zeros(F, self.nrows, other.ncols)
        for i in range(self.nrows):
            srow = self.rows[i]
            trow = out.rows[i]
            for k in range(self.ncols):
                a = srow[k]
                if a == F.zero:
                    continue
                orow = other.rows[k]
                for j in range(other.ncols):
                    if orow[j] != F.zero:
                        trow[j] = F.add(trow[j], F.mul(a, orow[j]))
        return out

    # -- row reduction -----------------------------------------------------

    def rref(self):
        """Return (R, pivots) with R the reduced row echelon form."""
        if isinstance(self.field, PrimeField) and HAVE_KERNEL and self.nrows and self.ncols:
            a = np.array(self.rows, dtype=np.int64)
            if not a.flags["C_CONTIGUOUS"]:
                a = np.ascontiguousarray(a)
            pivots = _kernels.rref_mod(a, self.field.p)
            rows = [[int(x) for x in row] for row in a]
            return Matrix(self.field, rows, self.nrows, self.ncols), tuple(pivots)
        return self._rref_python()

    def _rref_python(self):
        F = self.field
        rows = [list(r) for r in self.rows]
        m, n = self.nrows, self.ncols
        pivots = []
        r = 0
        for c in range(n):
            if r == m:
                break
            piv = next((i for i in range(r, m) if rows[i][c] != F.zero), None)
            if piv is None:
                continue
            if piv != r:
                rows[r], rows[piv] = rows[piv], rows[r]
            inv = F.inv(rows[r][c])
            if inv != F.one:
                rows[r] = [F.mul(inv, x) for x in rows[r]]
            for i in range(m):
                if i != r and rows[i][c] != F.zero:
                    f = rows[i][c]
                    ri, rr = rows[i], rows[r]
                    for j in range(c, n):
                        if rr[j] != F.zero:
                            ri[j] = F.sub(ri[j], F.mul(f, rr[j]))
            pivots.append(c)
            r += 1
        return Matrix(F, rows, m, n), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    # -- solving -----------------------------------------------------------

    def solve(self, b):
        """One exact solution of A x = b, or None if inconsistent.

        The solution is the canonical one read off the RREF of [A | b]
        with all free variables set to zero.
        """
        if len(b) != self.nrows:
            raise ValueError("dimension mismatch")
        F = self.field
        aug = Matrix(
            F,
            [list(self.rows[i]) + [b[i]] for i in range(self.nrows)],
            self.nrows,
            self.ncols + 1,
        )
        R, pivots = aug.rref()
        if pivots and pivots[-1] == self.ncols:
            return None
        x = [F.zero] * self.ncols
        for r, c in enumerate(pivots):
            x[c] = R.rows[r][self.ncols]
        return x

    def in_column_space(self, b) -> bool:
        return self.solve(b) is not None

    def nullspace(self):
        """Deterministic basis of the right nullspace."""
        F = self.field
        R, pivots = self.rref()
        pivset = set(pivots)
        free = [j for j in range(self.ncols) if j not in pivset]
        basis = []
        for f in free:
            v = [F.zero] * self.ncols
            v[f] = F.one
            for r, c in enumerate(pivots):
                v[c] = F.neg(R.rows[r][f])
            basis.append(v)
        return basis


def rref(matrix: Matrix):
    R, pivots = matrix.rref()
    return R, pivots, len(pivots)


def solve(matrix: Matrix, b):
    return matrix.solve(b)


def nullspace(matrix: Matrix):
    return matrix.nullspace()


def in_column_space(matrix: Matrix, b) -> bool:
    return matrix.in_column_space(b)


def vec_is_zero(field, v) -> bool:
    return all(x == field.zero for x in v)
