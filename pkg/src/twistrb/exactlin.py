"""Exact linear algebra over the rationals.

Scalars are `fractions.Fraction` (arbitrary-precision, always in lowest terms
with positive denominator, zero is 0/1), so every rank, kernel and inverse
below is exact.  Elimination uses the first nonzero pivot in column order and
kernel bases come from the reduced row echelon parametrization with each free
variable set to 1 in column order, which makes all outputs reproducible.

No floating point anywhere.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import DimensionMismatch, SingularMatrix

Scalar = Fraction
Vector = tuple[Fraction, ...]

ScalarLike = Union[Fraction, int, str]

ZERO = Fraction(0)
ONE = Fraction(1)


def scalar(x: ScalarLike) -> Fraction:
    """Coerce an int, Fraction or "p/q" string to an exact rational."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def scalar_str(x: Fraction) -> str:
    """Render in lowest terms, omitting the denominator when it is 1."""
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def vector(entries: Iterable[ScalarLike]) -> Vector:
    return tuple(scalar(e) for e in entries)


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def basis_vector(n: int, i: int) -> Vector:
    return tuple(ONE if j == i else ZERO for j in range(n))


def vec_add(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def vec_sub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def vec_scale(c: Fraction, v: Vector) -> Vector:
    return tuple(c * a for a in v)


def vec_is_zero(v: Vector) -> bool:
    return all(a == 0 for a in v)


def dot(u: Vector, v: Vector) -> Fraction:
    return sum((a * b for a, b in zip(u, v, strict=True)), ZERO)


class Matrix:
    """Immutable dense matrix of exact rationals, row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Sequence[ScalarLike]):
        if len(entries) != rows * cols:
            raise DimensionMismatch(
                f"{rows}x{cols} matrix needs {rows * cols} entries, got {len(entries)}"
            )
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", tuple(scalar(e) for e in entries))

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[ScalarLike]]) -> "Matrix":
        r = len(rows)
        c = len(rows[0]) if r else 0
        if any(len(row) != c for row in rows):
            raise DimensionMismatch("ragged rows")
        return cls(r, c, [x for row in rows for x in row])

    @classmethod
    def from_cols(cls, cols: Sequence[Sequence[ScalarLike]], rows: int | None = None) -> "Matrix":
        if not cols:
            if rows is None:
                raise DimensionMismatch("cannot infer row count of an empty column list")
            return cls(rows, 0, [])
        r = len(cols[0])
        if any(len(col) != r for col in cols):
            raise DimensionMismatch("ragged columns")
        return cls(r, len(cols), [cols[j][i] for i in range(r) for j in range(len(cols))])

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, [ONE if i == j else ZERO for i in range(n) for j in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, [ZERO] * (rows * cols))

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def col(self, j: int) -> Vector:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def row_list(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        body = "; ".join(
            " ".join(scalar_str(x) for x in self.row(i)) for i in range(self.rows)
        )
        return f"Matrix({self.rows}x{self.cols}: {body})"

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(self.rows, self.cols, [a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols, [-a for a in self.entries])

    def scale(self, c: ScalarLike) -> "Matrix":
        c = scalar(c)
        return Matrix(self.rows, self.cols, [c * a for a in self.entries])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        out = []
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(other.cols):
                out.append(sum((ri[k] * other.entries[k * other.cols + j] for k in range(self.cols)), ZERO))
        return Matrix(self.rows, other.cols, out)

    def apply(self, v: Sequence[ScalarLike]) -> Vector:
        if len(v) != self.cols:
            raise DimensionMismatch(f"{self.rows}x{self.cols} matrix applied to length-{len(v)} vector")
        vv = vector(v)
        return tuple(dot(self.row(i), vv) for i in range(self.rows))

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.entries)

    def is_skew(self) -> bool:
        return self.rows == self.cols and all(
            self[i, j] == -self[j, i] for i in range(self.rows) for j in range(i, self.cols)
        )

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise DimensionMismatch("row counts differ")
        ent = []
        for i in range(self.rows):
            ent.extend(self.row(i))
            ent.extend(other.row(i))
        return Matrix(self.rows, self.cols + other.cols, ent)

    def _same_shape(self, other: "Matrix") -> None:
        if self.rows != other.rows or self.cols != other.cols:
            raise DimensionMismatch(
                f"shape mismatch: {self.rows}x{self.cols} vs {other.rows}x{other.cols}"
            )

    # -- elimination ---------------------------------------------------

    def rref(self) -> tuple["Matrix", tuple[int, ...]]:
        """Reduced row echelon form and the pivot columns.

        First nonzero entry in column order is the pivot; rows are rescaled
        to pivot 1 and cleared above and below.
        """
        m = self.row_list()
        pivots: list[int] = []
        r = 0
        for c in range(self.cols):
            if r == self.rows:
                break
            pivot_row = None
            for i in range(r, self.rows):
                if m[i][c] != 0:
                    pivot_row = i
                    break
            if pivot_row is None:
                continue
            m[r], m[pivot_row] = m[pivot_row], m[r]
            pv = m[r][c]
            m[r] = [x / pv for x in m[r]]
            for i in range(self.rows):
                if i != r and m[i][c] != 0:
                    f = m[i][c]
                    m[i] = [a - f * b for a, b in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
        return Matrix.from_rows(m) if self.rows else self, tuple(pivots)

    def rank(self) -> int:
        if self.rows == 0 or self.cols == 0:
            return 0
        return len(self.rref()[1])

    def nullity(self) -> int:
        return self.cols - self.rank()

    def kernel_basis(self) -> list[Vector]:
        """Basis of the null space, one vector per free column in column order."""
        if self.cols == 0:
            return []
        if self.rows == 0:
            return [basis_vector(self.cols, j) for j in range(self.cols)]
        red, pivots = self.rref()
        pivot_set = set(pivots)
        basis = []
        for free in range(self.cols):
            if free in pivot_set:
                continue
            v = [ZERO] * self.cols
            v[free] = ONE
            for r, pc in enumerate(pivots):
                v[pc] = -red[r, free]
            basis.append(tuple(v))
        return basis

    def invert(self) -> "Matrix":
        if self.rows != self.cols:
            raise DimensionMismatch("only square matrices can be inverted")
        n = self.rows
        aug, pivots = self.hstack(Matrix.identity(n)).rref()
        if tuple(pivots[:n]) != tuple(range(n)) or len(pivots) < n:
            raise SingularMatrix(f"rank {self.rank()} < {n}")
        return Matrix(n, n, [aug[i, n + j] for i in range(n) for j in range(n)])

    def solve(self, b: Sequence[ScalarLike]) -> Vector | None:
        """One exact solution of self @ x = b, or None when inconsistent.

        The returned solution has every free variable set to 0.
        """
        if len(b) != self.rows:
            raise DimensionMismatch("right-hand side length mismatch")
        if self.cols == 0:
            return () if vec_is_zero(vector(b)) else None
        rhs = Matrix(self.rows, 1, vector(b))
        aug, pivots = self.hstack(rhs).rref()
        if self.cols in pivots:
            return None
        x = [ZERO] * self.cols
        for r, pc in enumerate(pivots):
            x[pc] = aug[r, self.cols]
        return tuple(x)


def matrix_str(m: Matrix) -> list[list[str]]:
    return [[scalar_str(x) for x in m.row(i)] for i in range(m.rows)]


def assemble_columns(columns: Sequence[Sequence[ScalarLike]], rows: int) -> Matrix:
    return Matrix.from_cols([vector(c) for c in columns], rows=rows)


def permutation_sign(word: Sequence[int]) -> int:
    """Parity of a permutation given in word form (image sequence)."""
    sign = 1
    for i, j in itertools.combinations(range(len(word)), 2):
        if word[i] > word[j]:
            sign = -sign
    return sign
