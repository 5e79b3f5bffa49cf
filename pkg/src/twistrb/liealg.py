"""Lie algebras, representations and Chevalley-Eilenberg cohomology.

Everything is over the rationals with a fixed ordered basis.  A Lie algebra
is its dimension plus the bracket stored as a degree-2 cochain; a
representation is one action matrix per basis element.  Validators are
report-style: they return the structure or the lexicographically first
violating tuple with its defect vector, never raising on mathematical
failure.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Sequence, Union

from .errors import InvalidStructure, NotNijenhuis, NotNilpotent
from .exactlin import (
    Matrix,
    Vector,
    vec_add,
    vec_is_zero,
    vec_scale,
    vec_sub,
    vector,
    zero_vector,
)
from .multilin import Cochain, ext_basis
from .report import CheckReport, Violation, failed, passed


@dataclass(frozen=True)
class LieAlgebra:
    """Finite-dimensional Lie algebra: dimension and bracket cochain.

    Constructors in this module guarantee the Jacobi identity; the raw
    dataclass does not re-check it.
    """

    dim: int
    bracket: Cochain

    def bracket_vec(self, x: Sequence, y: Sequence) -> Vector:
        return self.bracket.skew_eval([x, y])

    def bracket_basis(self, i: int, j: int) -> Vector:
        return self.bracket.value_on_tuple((i, j))

    def ad(self, i: int) -> Matrix:
        """Matrix of ad(e_i)."""
        cols = [self.bracket.value_on_tuple((i, j)) for j in range(self.dim)]
        return Matrix.from_cols(cols, rows=self.dim)

    def is_abelian(self) -> bool:
        return self.bracket.is_zero()


@dataclass(frozen=True)
class Representation:
    """Action of a Lie algebra on a module, one matrix per generator."""

    module_dim: int
    action: tuple[Matrix, ...]

    def act_basis(self, i: int, u_idx: int) -> Vector:
        return self.action[i].col(u_idx)

    def act(self, x: Sequence, u: Sequence) -> Vector:
        xv = vector(x)
        out = zero_vector(self.module_dim)
        for i, c in enumerate(xv):
            if c == 0:
                continue
            out = vec_add(out, vec_scale(c, self.action[i].apply(u)))
        return out

    def act_vec_on_basis(self, x: Sequence, u_idx: int) -> Vector:
        xv = vector(x)
        out = zero_vector(self.module_dim)
        for i, c in enumerate(xv):
            if c == 0:
                continue
            out = vec_add(out, vec_scale(c, self.action[i].col(u_idx)))
        return out


BracketTable = Mapping[tuple[int, int], Sequence]


def bracket_cochain(dim: int, table: BracketTable) -> tuple[Cochain | None, Violation | None]:
    """Assemble a degree-2 cochain from an ordered-pair table, checking skewness.

    The table may carry any ordered pairs; (j, i) entries must negate (i, j)
    entries and diagonal entries must vanish.
    """
    values: dict[tuple[int, ...], Vector] = {}
    for (i, j), raw in sorted(table.items()):
        v = vector(raw)
        if len(v) != dim:
            return None, Violation("bracket value length", (i, j), v)
        if i == j:
            if not vec_is_zero(v):
                return None, Violation("skewness (diagonal)", (i, j), v)
            continue
        key = (i, j) if i < j else (j, i)
        signed = v if i < j else vec_scale(-1, v)
        if key in values:
            defect = vec_sub(values[key], signed)
            if not vec_is_zero(defect):
                return None, Violation("skewness", key, defect)
        else:
            values[key] = signed
    return Cochain.from_values(2, dim, dim, values), None


def jacobi_defect(bracket: Cochain, i: int, j: int, k: int) -> Vector:
    """[e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]]."""
    total = zero_vector(bracket.target_dim)
    for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
        inner = bracket.value_on_tuple((b, c))
        total = vec_add(total, bracket.eval_mixed(inner, (a,)))
    return total


def _first_jacobi_violation(bracket: Cochain) -> Violation | None:
    dim = bracket.source_dim
    for t in ext_basis(dim, 3):
        defect = jacobi_defect(bracket, *t)
        if not vec_is_zero(defect):
            return Violation("jacobi", t, defect)
    return None


def validate_lie(
    dim: int, table: BracketTable
) -> Union[LieAlgebra, Violation]:
    """Return the Lie algebra, or the first violation (skewness, then Jacobi)."""
    cochain, violation = bracket_cochain(dim, table)
    if violation is not None:
        return violation
    violation = _first_jacobi_violation(cochain)
    if violation is not None:
        return violation
    return LieAlgebra(dim, cochain)


def lie_algebra(dim: int, table: BracketTable) -> LieAlgebra:
    """Validating constructor; raises InvalidStructure on a bad table."""
    out = validate_lie(dim, table)
    if isinstance(out, Violation):
        raise InvalidStructure(out.describe())
    return out


def lie_algebra_from_cochain(bracket: Cochain) -> LieAlgebra:
    violation = _first_jacobi_violation(bracket)
    if violation is not None:
        raise InvalidStructure(violation.describe())
    return LieAlgebra(bracket.source_dim, bracket)


def abelian(dim: int) -> LieAlgebra:
    return LieAlgebra(dim, Cochain.zero(2, dim, dim))


def validate_rep(
    algebra: LieAlgebra, module_dim: int, action: Sequence[Matrix]
) -> Union[Representation, Violation]:
    """Check rho([e_i,e_j]) = rho(e_i)rho(e_j) - rho(e_j)rho(e_i) on all pairs."""
    if len(action) != algebra.dim:
        return Violation("action matrix count", (len(action),), ())
    for m in action:
        if m.rows != module_dim or m.cols != module_dim:
            return Violation("action matrix shape", (m.rows, m.cols), ())
    rep = Representation(module_dim, tuple(action))
    for i, j in ext_basis(algebra.dim, 2):
        lhs = Matrix.zero(module_dim, module_dim)
        for k, c in enumerate(algebra.bracket_basis(i, j)):
            if c != 0:
                lhs = lhs + action[k].scale(c)
        rhs = action[i] @ action[j] - action[j] @ action[i]
        diff = lhs - rhs
        if not diff.is_zero():
            return Violation("representation", (i, j), diff.entries)
    return rep


def representation(algebra: LieAlgebra, module_dim: int, action: Sequence[Matrix]) -> Representation:
    out = validate_rep(algebra, module_dim, action)
    if isinstance(out, Violation):
        raise InvalidStructure(out.describe())
    return out


def adjoint_rep(algebra: LieAlgebra) -> Representation:
    return Representation(algebra.dim, tuple(algebra.ad(i) for i in range(algebra.dim)))


def trivial_rep(algebra: LieAlgebra, module_dim: int = 1) -> Representation:
    zero = Matrix.zero(module_dim, module_dim)
    return Representation(module_dim, (zero,) * algebra.dim)


def coadjoint_rep(algebra: LieAlgebra) -> Representation:
    """Coadjoint action (ad*_x a)(y) = -a([x,y]); matrices are -ad(e_i)^T."""
    action = tuple((-algebra.ad(i)).transpose() for i in range(algebra.dim))
    rep = validate_rep(algebra, algebra.dim, action)
    assert isinstance(rep, Representation)
    return rep


# -- Chevalley-Eilenberg complex ---------------------------------------


def ce_differential_cochain(
    bracket: Cochain, rep: Representation, f: Cochain
) -> Cochain:
    """delta_CE f for a degree-n cochain with values in the module.

    Works for any bracket/action data, valid or not: it is the literal
    alternating-sum formula.
    """
    n = f.degree
    dim = bracket.source_dim
    m = rep.module_dim
    cols = []
    for xs in ext_basis(dim, n + 1):
        total = zero_vector(m)
        for pos, xi in enumerate(xs):
            rest = xs[:pos] + xs[pos + 1 :]
            term = rep.action[xi].apply(f.value_on_basis(rest))
            if pos % 2 == 1:
                term = vec_scale(-1, term)
            total = vec_add(total, term)
        for a, b in itertools.combinations(range(n + 1), 2):
            rest = tuple(x for p, x in enumerate(xs) if p not in (a, b))
            inner = bracket.value_on_tuple((xs[a], xs[b]))
            term = f.eval_mixed(inner, rest) if n >= 1 else zero_vector(m)
            # (-1)^{i+j} for 1-based positions equals (-1)^{a+b} for 0-based
            if (a + b) % 2 == 1:
                term = vec_scale(-1, term)
            total = vec_add(total, term)
        cols.append(total)
    return Cochain(n + 1, dim, m, Matrix.from_cols(cols, rows=m))


def ce_differential(algebra: LieAlgebra, rep: Representation, n: int) -> Matrix:
    """Matrix of delta_CE : C^n -> C^{n+1} in the flattened lex bases."""
    return _differential_matrix(
        lambda f: ce_differential_cochain(algebra.bracket, rep, f),
        n,
        algebra.dim,
        rep.module_dim,
    )


def _differential_matrix(diff, n: int, source_dim: int, target_dim: int) -> Matrix:
    from math import comb

    domain = comb(source_dim, n) * target_dim if n >= 0 else 0
    codomain = comb(source_dim, n + 1) * target_dim
    cols = []
    for j in range(domain):
        flat = [0] * domain
        flat[j] = 1
        f = Cochain.from_vec(n, source_dim, target_dim, flat)
        cols.append(diff(f).vec())
    return Matrix.from_cols(cols, rows=codomain)


def cohomology_dims_from_matrices(deltas: Sequence[Matrix]) -> list[int]:
    """dim H^n = nullity(delta^n) - rank(delta^{n-1}) for n in range."""
    dims = []
    prev_rank = 0
    for d in deltas:
        dims.append(d.nullity() - prev_rank)
        prev_rank = d.rank()
    return dims


def ce_cohomology_dims(algebra: LieAlgebra, rep: Representation, n_max: int) -> list[int]:
    deltas = [ce_differential(algebra, rep, n) for n in range(n_max + 1)]
    return cohomology_dims_from_matrices(deltas)


def ce_cohomology_representatives(
    algebra: LieAlgebra, rep: Representation, n: int
) -> list[Cochain]:
    """A (non-canonical) basis of cocycles spanning degree-n cohomology.

    Kernel vectors of the degree-n differential are kept greedily, in the
    deterministic kernel order, whenever they are independent modulo the
    image of the previous differential.  Dimensions are the primary surface;
    this is the flag-gated extra.
    """
    dn = ce_differential(algebra, rep, n)
    kernel = dn.kernel_basis()
    if n == 0:
        image_cols: list = []
    else:
        prev = ce_differential(algebra, rep, n - 1)
        image_cols = [prev.col(j) for j in range(prev.cols)]
    m = rep.module_dim
    chosen: list[Cochain] = []
    kept_cols = list(image_cols)
    rows = dn.cols
    rank_now = Matrix.from_cols(kept_cols, rows=rows).rank() if kept_cols else 0
    for candidate in kernel:
        trial = Matrix.from_cols(kept_cols + [candidate], rows=rows)
        if trial.rank() > rank_now:
            kept_cols.append(candidate)
            rank_now += 1
            chosen.append(Cochain.from_vec(n, algebra.dim, m, candidate))
    return chosen


def is_two_cocycle(algebra: LieAlgebra, rep: Representation, h: Cochain) -> CheckReport:
    """True iff delta_CE h = 0; on failure carries the first violating triple."""
    dh = ce_differential_cochain(algebra.bracket, rep, h)
    for t in ext_basis(algebra.dim, 3):
        v = dh.value_on_basis(t)
        if not vec_is_zero(v):
            return failed("2-cocycle", t, v)
    return passed()


def two_cocycle(algebra: LieAlgebra, rep: Representation, h: Cochain) -> Cochain:
    rep_ok = is_two_cocycle(algebra, rep, h)
    if not rep_ok:
        raise InvalidStructure(rep_ok.violation.describe())
    return h


# -- Nijenhuis operators ------------------------------------------------


def nijenhuis_defect(algebra: LieAlgebra, n_op: Matrix, i: int, j: int) -> Vector:
    """[Nx,Ny] - N([Nx,y] + [x,Ny] - N[x,y]) on a basis pair."""
    nx = n_op.col(i)
    ny = n_op.col(j)
    lhs = algebra.bracket_vec(nx, ny)
    inner = vec_add(
        algebra.bracket.eval_mixed(nx, (j,)),
        vec_scale(-1, algebra.bracket.eval_mixed(ny, (i,))),
    )
    inner = vec_sub(inner, n_op.apply(algebra.bracket_basis(i, j)))
    return vec_sub(lhs, n_op.apply(inner))


def nijenhuis_check(algebra: LieAlgebra, n_op: Matrix) -> CheckReport:
    for i, j in ext_basis(algebra.dim, 2):
        defect = nijenhuis_defect(algebra, n_op, i, j)
        if not vec_is_zero(defect):
            return failed("nijenhuis", (i, j), defect)
    return passed()


def deformed_bracket_cochain(algebra: LieAlgebra, n_op: Matrix) -> Cochain:
    """[x,y]_N = [Nx,y] + [x,Ny] - N[x,y] as a degree-2 cochain."""
    values = {}
    for i, j in ext_basis(algebra.dim, 2):
        v = vec_add(
            algebra.bracket.eval_mixed(n_op.col(i), (j,)),
            vec_scale(-1, algebra.bracket.eval_mixed(n_op.col(j), (i,))),
        )
        v = vec_sub(v, n_op.apply(algebra.bracket_basis(i, j)))
        values[(i, j)] = v
    return Cochain.from_values(2, algebra.dim, algebra.dim, values)


def deformed_bracket(algebra: LieAlgebra, n_op: Matrix) -> LieAlgebra:
    """The deformed Lie algebra g_N; Jacobi is re-validated independently."""
    check = nijenhuis_check(algebra, n_op)
    if not check:
        raise NotNijenhuis(check.violation.describe())
    cochain = deformed_bracket_cochain(algebra, n_op)
    violation = _first_jacobi_violation(cochain)
    if violation is not None:
        raise InvalidStructure(f"deformed bracket broke Jacobi: {violation.describe()}")
    return LieAlgebra(algebra.dim, cochain)


# -- derivations ---------------------------------------------------------


def derivation_check(algebra: LieAlgebra, d: Matrix) -> CheckReport:
    """d[x,y] = [dx,y] + [x,dy] on basis pairs."""
    for i, j in ext_basis(algebra.dim, 2):
        lhs = d.apply(algebra.bracket_basis(i, j))
        rhs = vec_add(
            algebra.bracket.eval_mixed(d.col(i), (j,)),
            vec_scale(-1, algebra.bracket.eval_mixed(d.col(j), (i,))),
        )
        defect = vec_sub(lhs, rhs)
        if not vec_is_zero(defect):
            return failed("derivation", (i, j), defect)
    return passed()


def nilpotency_index(d: Matrix) -> int:
    """Least k >= 1 with d^k = 0, scanning k <= dim^2 + 1."""
    power = d
    for k in range(1, d.rows * d.rows + 2):
        if power.is_zero():
            return k
        power = power @ d
    raise NotNilpotent(f"no vanishing power up to {d.rows * d.rows + 1}")
