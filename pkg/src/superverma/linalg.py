"""Exact rational linear algebra.

Scalars are :class:`fractions.Fraction` (always in lowest terms with a
positive denominator).  Matrices are small and dense; the determinant clears
denominators row by row and then runs Bareiss' fraction-free elimination on
Python integers, which keeps intermediate growth polynomial.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .errors import DimensionError, SingularMatrixError

Rat = Fraction
Vector = tuple  # tuple of Fraction


def rat(x) -> Fraction:
    """Coerce ints, strings like ``"3/4"`` and Fractions to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/q' string")
    return Fraction(x)


def vec(values: Iterable) -> tuple:
    return tuple(rat(v) for v in values)


class RatMatrix:
    """Immutable dense matrix of Fractions stored row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Sequence):
        if rows < 0 or cols < 0:
            raise DimensionError("negative matrix dimension")
        entries = tuple(rat(e) for e in entries)
        if len(entries) != rows * cols:
            raise DimensionError(f"expected {rows * cols} entries, got {len(entries)}")
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "RatMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise DimensionError("ragged rows")
        return cls(len(rows), cols, [e for r in rows for e in r])

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int) -> "RatMatrix":
        return cls(rows, cols, [0] * (rows * cols))

    @classmethod
    def diag(cls, values: Sequence) -> "RatMatrix":
        n = len(values)
        return cls(n, n, [values[i] if i == j else 0 for i in range(n) for j in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "RatMatrix":
        return RatMatrix(self.cols, self.rows,
                         [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        out = []
        ocols = [other.entries[j::other.cols] for j in range(other.cols)]
        for i in range(self.rows):
            r = self.row(i)
            for c in ocols:
                out.append(sum((a * b for a, b in zip(r, c) if a and b), Fraction(0)))
        return RatMatrix(self.rows, other.cols, out)

    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.cols:
            raise DimensionError("vector length does not match column count")
        return tuple(sum((a * b for a, b in zip(self.row(i), v) if a and b), Fraction(0))
                     for i in range(self.rows))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        return self.is_square() and all(
            self[i, j] == self[j, i] for i in range(self.rows) for j in range(i + 1, self.cols))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "RatMatrix":
        return RatMatrix(len(rows), len(cols), [self[i, j] for i in rows for j in cols])

    def __eq__(self, other):
        return (isinstance(other, RatMatrix) and self.shape == other.shape
                and self.entries == other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"RatMatrix({self.rows}, {self.cols}, {[str(e) for e in self.entries]})"


def det(m: RatMatrix) -> Fraction:
    """Exact determinant via Bareiss elimination on an integer-scaled copy."""
    if not m.is_square():
        raise DimensionError(f"det of non-square {m.rows}x{m.cols} matrix")
    n = m.rows
    if n == 0:
        return Fraction(1)
    scale = 1
    a = []
    for i in range(n):
        r = m.row(i)
        d = lcm(*(e.denominator for e in r))
        scale *= d
        a.append([e.numerator * (d // e.denominator) for e in r])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for p in range(k + 1, n):
                if a[p][k] != 0:
                    a[k], a[p] = a[p], a[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        akk = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            aik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * akk - aik * rk[j]) // prev
            ri[k] = 0
        prev = akk
    return Fraction(sign * a[n - 1][n - 1], scale)


def rref(m: RatMatrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and the pivot columns."""
    a = m.to_rows()
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        if r == m.rows:
            break
        p = next((i for i in range(r, m.rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(m.rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m: RatMatrix) -> int:
    return len(rref(m)[1])


def kernel_basis(m: RatMatrix) -> list[tuple]:
    """Basis of the right null space; empty iff ``m`` has full column rank."""
    a, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -a[r][f]
        basis.append(tuple(v))
    return basis


def solve(m: RatMatrix, b: Sequence) -> tuple:
    """Unique solution of the square system ``m x = b``."""
    if not m.is_square():
        raise DimensionError("solve needs a square matrix")
    if len(b) != m.rows:
        raise DimensionError("right-hand side has the wrong length")
    aug = RatMatrix(m.rows, m.cols + 1,
                    [e for i in range(m.rows) for e in (*m.row(i), rat(b[i]))])
    a, pivots = rref(aug)
    if len(pivots) < m.cols or (pivots and pivots[-1] == m.cols):
        raise SingularMatrixError("matrix is singular")
    return tuple(a[i][m.cols] for i in range(m.cols))


def solve_consistent(m: RatMatrix, b: Sequence) -> tuple | None:
    """A solution of a possibly rectangular system, or ``None`` if inconsistent.

    Free variables are set to zero.
    """
    aug = RatMatrix(m.rows, m.cols + 1,
                    [e for i in range(m.rows) for e in (*m.row(i), rat(b[i]))])
    a, pivots = rref(aug)
    if pivots and pivots[-1] == m.cols:
        return None
    x = [Fraction(0)] * m.cols
    for r, pc in enumerate(pivots):
        x[pc] = a[r][m.cols]
    return tuple(x)


def nonsingular_principal_subset(m: RatMatrix) -> list[int]:
    """Indices of a maximal nonsingular principal submatrix of a symmetric matrix.

    A symmetric matrix of rank r always has an r x r nonsingular principal
    minor.  Found greedily: an index is kept when it raises the rank of the
    principal block, with a pairwise fallback for hyperbolic pairs.
    """
    n = m.rows
    target = rank(m)
    chosen: list[int] = []
    remaining = list(range(n))
    while len(chosen) < target:
        progress = False
        for i in remaining:
            trial = chosen + [i]
            if rank(m.submatrix(trial, trial)) == len(trial):
                chosen.append(i)
                remaining.remove(i)
                progress = True
                break
        if progress:
            continue
        for x in range(len(remaining)):
            for y in range(x + 1, len(remaining)):
                trial = chosen + [remaining[x], remaining[y]]
                if rank(m.submatrix(trial, trial)) == len(trial):
                    chosen.extend([remaining[x], remaining[y]])
                    remaining = [k for k in remaining if k not in trial]
                    progress = True
                    break
            if progress:
                break
        if not progress:
            raise SingularMatrixError("no nonsingular principal extension found")
    return sorted(chosen)
