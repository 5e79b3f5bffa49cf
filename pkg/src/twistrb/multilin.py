"""Exterior-power bookkeeping and skew multilinear maps.

A degree-p cochain from a source space of dimension n to a target of
dimension m is stored as an m x binomial(n, p) matrix whose j-th column is
the value on the j-th strictly increasing p-tuple of basis indices in
lexicographic order.  Degree 0 means a single column (a constant target
vector).  Basis indices are 0-based throughout the library; instance files
use 1-based indices and are converted at the I/O boundary.

Since source and target carry no internal grading, all Koszul signs on
arguments are trivial and unshuffle signs are plain permutation parities.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Mapping, Sequence

from .errors import DimensionMismatch, DuplicateAssignment, IndexOutOfRange
from .exactlin import (
    Matrix,
    Vector,
    ZERO,
    scalar,
    vec_add,
    vec_scale,
    vector,
    zero_vector,
)


@lru_cache(maxsize=None)
def ext_basis(dim: int, degree: int) -> tuple[tuple[int, ...], ...]:
    """All strictly increasing degree-tuples of {0..dim-1}, lexicographically.

    Empty for degree < 0 or degree > dim; the single empty tuple for degree 0.
    """
    if degree < 0:
        return ()
    return tuple(itertools.combinations(range(dim), degree))


@lru_cache(maxsize=None)
def _tuple_index(dim: int, degree: int) -> dict[tuple[int, ...], int]:
    return {t: i for i, t in enumerate(ext_basis(dim, degree))}


def sort_with_sign(t: Sequence[int]) -> tuple[tuple[int, ...] | None, int]:
    """Sort an index tuple, tracking the permutation sign; None on a repeat."""
    lst = list(t)
    sign = 1
    for i in range(1, len(lst)):
        j = i
        while j > 0 and lst[j - 1] > lst[j]:
            lst[j - 1], lst[j] = lst[j], lst[j - 1]
            sign = -sign
            j -= 1
    for a, b in zip(lst, lst[1:]):
        if a == b:
            return None, 0
    return tuple(lst), sign


@dataclass(frozen=True)
class Unshuffle:
    """A permutation increasing within each block, with its parity."""

    blocks: tuple[int, ...]
    word: tuple[int, ...]
    sign: int


def iter_unshuffles(blocks: Sequence[int]) -> Iterable[tuple[tuple[int, ...], int]]:
    """Yield (word, sign) for every permutation increasing on each block.

    Words are 0-based image sequences; blocks of size 0 contribute nothing,
    and any negative block size yields no unshuffles at all (empty sum).
    """
    blocks = tuple(blocks)
    if any(b < 0 for b in blocks):
        return
    n = sum(blocks)
    universe = tuple(range(n))

    def rec(remaining: tuple[int, ...], bi: int, word: tuple[int, ...], sign: int):
        if bi == len(blocks):
            yield word, sign
            return
        size = blocks[bi]
        if size == 0:
            yield from rec(remaining, bi + 1, word, sign)
            return
        for chosen in itertools.combinations(range(len(remaining)), size):
            picked = tuple(remaining[i] for i in chosen)
            chosen_set = set(chosen)
            rest = tuple(x for i, x in enumerate(remaining) if i not in chosen_set)
            # inversions introduced by moving `picked` ahead of the rest
            s = sign * (-1) ** (sum(chosen) - sum(range(size)))
            yield from rec(rest, bi + 1, word + picked, s)

    yield from rec(universe, 0, (), 1)


def enumerate_unshuffles(blocks: Sequence[int]) -> list[Unshuffle]:
    return [Unshuffle(tuple(blocks), word, sign) for word, sign in iter_unshuffles(blocks)]


def multinomial(blocks: Sequence[int]) -> int:
    n = sum(blocks)
    out = factorial(n)
    for b in blocks:
        out //= factorial(b)
    return out


class Cochain:
    """Skew p-linear map source^p -> target, columns over the lex exterior basis."""

    __slots__ = ("degree", "source_dim", "target_dim", "matrix")

    def __init__(self, degree: int, source_dim: int, target_dim: int, matrix: Matrix):
        expected = comb(source_dim, degree) if degree >= 0 else 0
        if matrix.cols != expected or matrix.rows != target_dim:
            raise DimensionMismatch(
                f"degree-{degree} cochain on dim {source_dim} needs a "
                f"{target_dim}x{expected} matrix, got {matrix.rows}x{matrix.cols}"
            )
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "source_dim", source_dim)
        object.__setattr__(self, "target_dim", target_dim)
        object.__setattr__(self, "matrix", matrix)

    def __setattr__(self, name, value):
        raise AttributeError("Cochain is immutable")

    @classmethod
    def zero(cls, degree: int, source_dim: int, target_dim: int) -> "Cochain":
        cols = comb(source_dim, degree) if degree >= 0 else 0
        return cls(degree, source_dim, target_dim, Matrix.zero(target_dim, cols))

    @classmethod
    def from_values(
        cls,
        degree: int,
        source_dim: int,
        target_dim: int,
        assignments: Mapping[tuple[int, ...], Sequence],
    ) -> "Cochain":
        """Build from values on increasing basis tuples; unassigned tuples are zero.

        Rejects duplicate, non-increasing, or out-of-range tuples: callers
        must normalize before assigning.
        """
        index = _tuple_index(source_dim, degree)
        cols = [[ZERO] * target_dim for _ in range(comb(source_dim, degree))]
        seen = set()
        for key, value in assignments.items():
            t = tuple(key)
            if len(t) != degree:
                raise DimensionMismatch(f"tuple {t} has length {len(t)}, expected {degree}")
            if any(i < 0 or i >= source_dim for i in t):
                raise IndexOutOfRange(f"tuple {t} out of range for dimension {source_dim}")
            if any(a >= b for a, b in zip(t, t[1:])):
                raise DuplicateAssignment(f"tuple {t} is not strictly increasing")
            if t in seen:
                raise DuplicateAssignment(f"tuple {t} assigned twice")
            seen.add(t)
            v = vector(value)
            if len(v) != target_dim:
                raise DimensionMismatch(f"value for {t} has length {len(v)}, expected {target_dim}")
            cols[index[t]] = list(v)
        return cls(degree, source_dim, target_dim, Matrix.from_cols(cols, rows=target_dim))

    @classmethod
    def from_matrix_map(cls, m: Matrix) -> "Cochain":
        """A linear map as a degree-1 cochain."""
        return cls(1, m.cols, m.rows, m)

    def basis_tuples(self) -> tuple[tuple[int, ...], ...]:
        return ext_basis(self.source_dim, self.degree)

    def value_on_basis(self, t: Sequence[int]) -> Vector:
        """Value on a strictly increasing basis tuple (fast column lookup)."""
        if self.degree == 0:
            return self.matrix.col(0)
        return self.matrix.col(_tuple_index(self.source_dim, self.degree)[tuple(t)])

    def value_on_tuple(self, t: Sequence[int]) -> Vector:
        """Value on an arbitrary basis tuple, resolving sign and repeats."""
        sorted_t, sign = sort_with_sign(t)
        if sorted_t is None:
            return zero_vector(self.target_dim)
        v = self.value_on_basis(sorted_t)
        return v if sign == 1 else vec_scale(Fraction(-1), v)

    def eval_mixed(self, first, rest: Sequence[int]) -> Vector:
        """Evaluate on (vector, basis, ..., basis), linear in the first slot."""
        if len(rest) + 1 != self.degree:
            raise DimensionMismatch("argument count does not match degree")
        out = zero_vector(self.target_dim)
        rest = tuple(rest)
        for i, c in enumerate(first):
            if c == 0:
                continue
            out = vec_add(out, vec_scale(scalar(c), self.value_on_tuple((i, *rest))))
        return out

    def skew_eval(self, args: Sequence[Sequence]) -> Vector:
        """Fully multilinear, skew evaluation on arbitrary coordinate vectors."""
        if len(args) != self.degree:
            raise DimensionMismatch(f"expected {self.degree} arguments, got {len(args)}")
        vs = [vector(a) for a in args]
        for v in vs:
            if len(v) != self.source_dim:
                raise DimensionMismatch("argument dimension mismatch")
        if self.degree == 0:
            return self.matrix.col(0)
        out = zero_vector(self.target_dim)
        for idx in itertools.product(range(self.source_dim), repeat=self.degree):
            coeff = Fraction(1)
            for k, i in enumerate(idx):
                coeff *= vs[k][i]
                if coeff == 0:
                    break
            if coeff == 0:
                continue
            out = vec_add(out, vec_scale(coeff, self.value_on_tuple(idx)))
        return out

    # -- linear structure ----------------------------------------------

    def _compatible(self, other: "Cochain") -> None:
        if (
            self.degree != other.degree
            or self.source_dim != other.source_dim
            or self.target_dim != other.target_dim
        ):
            raise DimensionMismatch("cochain shapes differ")

    def __add__(self, other: "Cochain") -> "Cochain":
        self._compatible(other)
        return Cochain(self.degree, self.source_dim, self.target_dim, self.matrix + other.matrix)

    def __sub__(self, other: "Cochain") -> "Cochain":
        self._compatible(other)
        return Cochain(self.degree, self.source_dim, self.target_dim, self.matrix - other.matrix)

    def __neg__(self) -> "Cochain":
        return Cochain(self.degree, self.source_dim, self.target_dim, -self.matrix)

    def scale(self, c) -> "Cochain":
        return Cochain(self.degree, self.source_dim, self.target_dim, self.matrix.scale(c))

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Cochain)
            and self.degree == other.degree
            and self.source_dim == other.source_dim
            and self.target_dim == other.target_dim
            and self.matrix == other.matrix
        )

    def __hash__(self) -> int:
        return hash((self.degree, self.source_dim, self.target_dim, self.matrix))

    def __repr__(self) -> str:
        return (
            f"Cochain(degree={self.degree}, source_dim={self.source_dim}, "
            f"target_dim={self.target_dim})"
        )

    def vec(self) -> Vector:
        """Flatten column by column (basis tuple by basis tuple)."""
        return tuple(
            self.matrix[i, j] for j in range(self.matrix.cols) for i in range(self.target_dim)
        )

    @classmethod
    def from_vec(cls, degree: int, source_dim: int, target_dim: int, flat: Sequence) -> "Cochain":
        cols = comb(source_dim, degree) if degree >= 0 else 0
        flat = vector(flat)
        if len(flat) != cols * target_dim:
            raise DimensionMismatch("flat vector length mismatch")
        columns = [flat[j * target_dim : (j + 1) * target_dim] for j in range(cols)]
        return cls(degree, source_dim, target_dim, Matrix.from_cols(columns, rows=target_dim))


class Bilinear:
    """A full (not necessarily skew) bilinear map source x source -> target.

    Columns run over ordered pairs (i, j) with index i * source_dim + j.
    """

    __slots__ = ("source_dim", "target_dim", "matrix")

    def __init__(self, source_dim: int, target_dim: int, matrix: Matrix):
        if matrix.cols != source_dim * source_dim or matrix.rows != target_dim:
            raise DimensionMismatch("bilinear table shape mismatch")
        object.__setattr__(self, "source_dim", source_dim)
        object.__setattr__(self, "target_dim", target_dim)
        object.__setattr__(self, "matrix", matrix)

    def __setattr__(self, name, value):
        raise AttributeError("Bilinear is immutable")

    @classmethod
    def zero(cls, source_dim: int, target_dim: int) -> "Bilinear":
        return cls(source_dim, target_dim, Matrix.zero(target_dim, source_dim * source_dim))

    @classmethod
    def from_values(
        cls, source_dim: int, target_dim: int, assignments: Mapping[tuple[int, int], Sequence]
    ) -> "Bilinear":
        cols = [[ZERO] * target_dim for _ in range(source_dim * source_dim)]
        seen = set()
        for (i, j), value in assignments.items():
            if not (0 <= i < source_dim and 0 <= j < source_dim):
                raise IndexOutOfRange(f"pair ({i},{j}) out of range")
            if (i, j) in seen:
                raise DuplicateAssignment(f"pair ({i},{j}) assigned twice")
            seen.add((i, j))
            v = vector(value)
            if len(v) != target_dim:
                raise DimensionMismatch("value length mismatch")
            cols[i * source_dim + j] = list(v)
        return cls(source_dim, target_dim, Matrix.from_cols(cols, rows=target_dim))

    def value_on_basis(self, i: int, j: int) -> Vector:
        return self.matrix.col(i * self.source_dim + j)

    def eval(self, x: Sequence, y: Sequence) -> Vector:
        xv, yv = vector(x), vector(y)
        out = zero_vector(self.target_dim)
        for i, a in enumerate(xv):
            if a == 0:
                continue
            for j, b in enumerate(yv):
                if b == 0:
                    continue
                out = vec_add(out, vec_scale(a * b, self.value_on_basis(i, j)))
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Bilinear)
            and self.source_dim == other.source_dim
            and self.target_dim == other.target_dim
            and self.matrix == other.matrix
        )

    def __hash__(self) -> int:
        return hash((self.source_dim, self.target_dim, self.matrix))

    def is_zero(self) -> bool:
        return self.matrix.is_zero()
