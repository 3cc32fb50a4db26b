"""Exact dense linear algebra over the rationals.

Entries are :class:`fractions.Fraction`, so integers never overflow and every
result is exact.  Matrices are small (n <= 20) and stored densely as tuples.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence

import numpy as np

from .errors import NonSquare, NotSymmetric, Singular

Rational = Fraction
RationalVector = tuple  # tuple[Fraction, ...]


def to_fraction(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are accepted and converted exactly (``Fraction(0.1)`` is the
    binary value, not 1/10).
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, (float, np.floating)):
        return Fraction(float(x))
    raise TypeError(f"cannot interpret {x!r} as a rational number")


class RationalMatrix:
    """Immutable dense matrix of exact rationals."""

    __slots__ = ("_rows", "_shape", "_hash")

    def __init__(self, rows: Iterable[Iterable]):
        data = tuple(tuple(to_fraction(x) for x in row) for row in rows)
        ncols = len(data[0]) if data else 0
        if any(len(r) != ncols for r in data):
            raise ValueError("ragged rows")
        self._rows = data
        self._shape = (len(data), ncols)
        self._hash = None

    @classmethod
    def _wrap(cls, rows: tuple) -> "RationalMatrix":
        # rows already a tuple of tuples of Fractions
        obj = cls.__new__(cls)
        obj._rows = rows
        obj._shape = (len(rows), len(rows[0]) if rows else 0)
        obj._hash = None
        return obj

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        one, zero = Fraction(1), Fraction(0)
        return cls._wrap(tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, nrows: int, ncols: int | None = None) -> "RationalMatrix":
        ncols = nrows if ncols is None else ncols
        return cls._wrap(tuple((Fraction(0),) * ncols for _ in range(nrows)))

    @classmethod
    def diag(cls, values: Sequence) -> "RationalMatrix":
        n = len(values)
        vals = [to_fraction(v) for v in values]
        return cls._wrap(
            tuple(tuple(vals[i] if i == j else Fraction(0) for j in range(n)) for i in range(n))
        )

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence]) -> "RationalMatrix":
        return cls(zip(*columns))

    # -- basic protocol ---------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return self._shape

    @property
    def nrows(self) -> int:
        return self._shape[0]

    @property
    def ncols(self) -> int:
        return self._shape[1]

    @property
    def rows(self) -> tuple:
        return self._rows

    def row(self, i: int) -> tuple:
        return self._rows[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self._rows)

    def __getitem__(self, idx):
        i, j = idx
        return self._rows[i][j]

    def __iter__(self):
        return iter(self._rows)

    def __eq__(self, other):
        if isinstance(other, RationalMatrix):
            return self._rows == other._rows
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._rows)
        return self._hash

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self._rows)
        return f"RationalMatrix([{body}])"

    # -- arithmetic -------------------------------------------------------
    @property
    def T(self) -> "RationalMatrix":
        return RationalMatrix._wrap(tuple(zip(*self._rows))) if self._rows else self

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = tuple(zip(*other._rows))
        return RationalMatrix._wrap(
            tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self._rows)
        )

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return RationalMatrix._wrap(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows))
        )

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return RationalMatrix._wrap(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows))
        )

    def __neg__(self) -> "RationalMatrix":
        return RationalMatrix._wrap(tuple(tuple(-a for a in r) for r in self._rows))

    def __mul__(self, scalar) -> "RationalMatrix":
        if isinstance(scalar, RationalMatrix):
            return NotImplemented
        c = to_fraction(scalar)
        return RationalMatrix._wrap(tuple(tuple(c * a for a in r) for r in self._rows))

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "RationalMatrix":
        return self * (1 / to_fraction(scalar))

    # -- predicates -------------------------------------------------------
    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    @property
    def is_zero(self) -> bool:
        return all(x == 0 for r in self._rows for x in r)

    def is_symmetric(self) -> bool:
        return self.is_square and self == self.T

    def is_alternating(self) -> bool:
        return self.is_square and self == -self.T

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for r in self._rows for x in r)

    def denominator_lcm(self) -> int:
        return reduce(lcm, (x.denominator for r in self._rows for x in r), 1)

    def content(self) -> Fraction:
        """gcd of numerators over lcm of denominators (0 for the zero matrix)."""
        g = reduce(gcd, (x.numerator for r in self._rows for x in r), 0)
        return Fraction(g, self.denominator_lcm())

    def primitive(self) -> "RationalMatrix":
        """Positive rescaling to an integer matrix with coprime entries."""
        c = self.content()
        return self if c == 0 else self / c

    # -- conversion -------------------------------------------------------
    def to_numpy(self, dtype=float) -> np.ndarray:
        if dtype is object:
            return np.array(self._rows, dtype=object).reshape(self.shape)
        return np.array([[float(x) for x in r] for r in self._rows], dtype=dtype).reshape(self.shape)

    def to_int_rows(self) -> list[list[int]]:
        if not self.is_integral():
            raise ValueError("matrix has non-integral entries")
        return [[x.numerator for x in r] for r in self._rows]

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._rows]


def as_rational_matrix(m) -> RationalMatrix:
    return m if isinstance(m, RationalMatrix) else RationalMatrix(m)


def block_diag(*blocks) -> RationalMatrix:
    blocks = [as_rational_matrix(b) for b in blocks]
    n = sum(b.nrows for b in blocks)
    m = sum(b.ncols for b in blocks)
    out = [[Fraction(0)] * m for _ in range(n)]
    r0 = c0 = 0
    for b in blocks:
        for i, row in enumerate(b.rows):
            out[r0 + i][c0 : c0 + b.ncols] = row
        r0 += b.nrows
        c0 += b.ncols
    return RationalMatrix._wrap(tuple(tuple(r) for r in out))


def standard_symplectic(n: int) -> RationalMatrix:
    """``[[0, I], [-I, 0]]`` in the paired ordering e1..ek, f1..fk."""
    if n % 2:
        raise ValueError("standard symplectic form needs even dimension")
    k = n // 2
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(k):
        rows[i][k + i] = Fraction(1)
        rows[k + i][i] = Fraction(-1)
    return RationalMatrix._wrap(tuple(tuple(r) for r in rows))


# ---------------------------------------------------------------------------
# Elimination
# ---------------------------------------------------------------------------

def _rref_rows(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        if piv != 1:
            rows[r] = [x / piv for x in rows[r]]
        pr = rows[r]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
    return rows, pivots


def rref(m) -> tuple[RationalMatrix, int]:
    """Reduced row echelon form and rank."""
    m = as_rational_matrix(m)
    rows, pivots = _rref_rows([list(r) for r in m.rows], m.ncols)
    if not rows:
        return m, 0
    return RationalMatrix._wrap(tuple(tuple(r) for r in rows)), len(pivots)


def rank(m) -> int:
    return rref(m)[1]


def kernel_basis(m) -> list[RationalVector]:
    """Basis of the right null space, one vector per free column.

    Each vector has a 1 in its free coordinate and is annihilated exactly by
    ``m``.
    """
    m = as_rational_matrix(m)
    n = m.ncols
    rows, pivots = _rref_rows([list(r) for r in m.rows], n)
    pivot_set = set(pivots)
    basis = []
    for free in range(n):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * n
        v[free] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][free]
        basis.append(tuple(v))
    return basis


def _require_square(m: RationalMatrix) -> None:
    if not m.is_square:
        raise NonSquare(f"expected a square matrix, got shape {m.shape}")


def det(m) -> Fraction:
    m = as_rational_matrix(m)
    _require_square(m)
    n = m.nrows
    a = [list(r) for r in m.rows]
    sign = 1
    result = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            sign = -sign
        piv = a[c][c]
        result *= piv
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] / piv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return sign * result


def inverse(m) -> RationalMatrix:
    m = as_rational_matrix(m)
    _require_square(m)
    n = m.nrows
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(m.rows)]
    rows, pivots = _rref_rows(aug, n)
    if len(pivots) < n:
        raise Singular("matrix is singular")
    return RationalMatrix._wrap(tuple(tuple(r[n:]) for r in rows))


def solve(m, b) -> RationalMatrix:
    """Solve ``m @ x = b`` for square nonsingular ``m``."""
    return inverse(m) @ as_rational_matrix(b)


def ldlt_signature(m) -> tuple[int, int, int]:
    """Exact inertia ``(pos, neg, zero)`` of a symmetric rational matrix.

    Symmetric elimination with 1x1 pivots where a nonzero diagonal entry
    exists and 2x2 pivots ``[[a_ii, a_ij], [a_ij, a_jj]]`` with a_ii = a_jj = 0
    otherwise.  Such a 2x2 block has determinant ``-a_ij**2 < 0`` and so
    contributes exactly one positive and one negative eigenvalue.  By
    Sylvester's law the counts are the inertia of ``m``.
    """
    m = as_rational_matrix(m)
    _require_square(m)
    if not m.is_symmetric():
        raise NotSymmetric("ldlt_signature requires a symmetric matrix")
    a = [list(r) for r in m.rows]
    pos = neg = 0
    n = len(a)
    while a:
        k = len(a)
        d = next((i for i in range(k) if a[i][i] != 0), None)
        if d is not None:
            piv = a[d][d]
            if piv > 0:
                pos += 1
            else:
                neg += 1
            keep = [i for i in range(k) if i != d]
            a = [[a[i][j] - a[i][d] * a[d][j] / piv for j in keep] for i in keep]
            continue
        off = next(((i, j) for i in range(k) for j in range(i + 1, k) if a[i][j] != 0), None)
        if off is None:
            break
        i0, j0 = off
        # inverse of [[0, b], [b, 0]] is [[0, 1/b], [1/b, 0]]
        b = a[i0][j0]
        keep = [i for i in range(k) if i not in off]
        a = [
            [a[i][j] - (a[i][i0] * a[j0][j] + a[i][j0] * a[i0][j]) / b for j in keep]
            for i in keep
        ]
        pos += 1
        neg += 1
    return pos, neg, n - pos - neg
