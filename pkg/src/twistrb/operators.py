"""Twisted Rota-Baxter operators and their companions.

A setup bundles a Lie algebra g, a module M with its action, and a skew
2-cochain H with values in M that must be closed.  An operator is a linear
map T : M -> g given by its dim(g) x dim(M) matrix.  The defining identity is

    [T(u), T(v)] = T( T(u).v - T(v).u + H(Tu, Tv) )

checked on all basis pairs.  Reynolds operators are the special case where M
is the adjoint module and H = -bracket; twisted triangular r-matrices are the
special case where M is the coadjoint module and H comes from a scalar
3-cocycle.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    InvalidStructure,
    NotAdmissible,
    NotCocycle,
    NotDerivation,
    NotNijenhuis,
    NotSkew,
    NotTwistedRB,
    SingularMatrix,
)
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
from .liealg import (
    LieAlgebra,
    Representation,
    adjoint_rep,
    coadjoint_rep,
    ce_differential_cochain,
    deformed_bracket,
    derivation_check,
    is_two_cocycle,
    lie_algebra_from_cochain,
    nijenhuis_check,
    nilpotency_index,
    trivial_rep,
    validate_lie,
    validate_rep,
)
from .multilin import Cochain, ext_basis
from .report import CheckReport, Violation, failed, passed

Operator = Matrix


@dataclass(frozen=True)
class TrbSetup:
    """Ambient data (g, M, action, H) an operator is tested against."""

    algebra: LieAlgebra
    rep: Representation
    cocycle: Cochain

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def module_dim(self) -> int:
        return self.rep.module_dim

    def operator_shape(self) -> tuple[int, int]:
        return (self.algebra.dim, self.rep.module_dim)


def trb_setup(algebra: LieAlgebra, rep: Representation, cocycle: Cochain | None = None) -> TrbSetup:
    """Validating constructor: the action and the cocycle are re-checked."""
    checked = validate_rep(algebra, rep.module_dim, rep.action)
    if isinstance(checked, Violation):
        raise InvalidStructure(checked.describe())
    if cocycle is None:
        cocycle = Cochain.zero(2, algebra.dim, rep.module_dim)
    if cocycle.source_dim != algebra.dim or cocycle.target_dim != rep.module_dim or cocycle.degree != 2:
        raise InvalidStructure("cocycle shape does not match the setup")
    closed = is_two_cocycle(algebra, rep, cocycle)
    if not closed:
        raise NotCocycle(closed.violation.describe())
    return TrbSetup(algebra, rep, cocycle)


def _check_shape(setup: TrbSetup, t: Operator) -> None:
    rows, cols = setup.operator_shape()
    if t.rows != rows or t.cols != cols:
        raise InvalidStructure(
            f"operator must be {rows}x{cols}, got {t.rows}x{t.cols}"
        )


def trb_defect(setup: TrbSetup, t: Operator, i: int, j: int) -> Vector:
    """[Tu_i, Tu_j] - T(Tu_i . u_j - Tu_j . u_i + H(Tu_i, Tu_j))."""
    tu = t.col(i)
    tv = t.col(j)
    lhs = setup.algebra.bracket_vec(tu, tv)
    inner = vec_sub(setup.rep.act_vec_on_basis(tu, j), setup.rep.act_vec_on_basis(tv, i))
    inner = vec_add(inner, setup.cocycle.skew_eval([tu, tv]))
    return vec_sub(lhs, t.apply(inner))


def check_trb(setup: TrbSetup, t: Operator) -> CheckReport:
    """The defining identity on all basis pairs, first defect as witness."""
    _check_shape(setup, t)
    for i, j in ext_basis(setup.module_dim, 2):
        defect = trb_defect(setup, t, i, j)
        if not vec_is_zero(defect):
            return failed("twisted Rota-Baxter", (i, j), defect)
    return passed()


def require_trb(setup: TrbSetup, t: Operator) -> None:
    rep = check_trb(setup, t)
    if not rep:
        raise NotTwistedRB(rep.violation.describe())


def twisted_semidirect(setup: TrbSetup) -> LieAlgebra:
    """Bracket [(x,u),(y,v)] = ([x,y], x.v - y.u + H(x,y)) on g + M.

    Coordinates 0..dim-1 are g, the rest are M; Jacobi is re-validated.
    """
    n, m = setup.dim, setup.module_dim
    total = n + m
    values = {}
    for i, j in ext_basis(n, 2):
        g_part = setup.algebra.bracket_basis(i, j)
        m_part = setup.cocycle.value_on_basis((i, j))
        values[(i, j)] = g_part + m_part
    for i in range(n):
        for a in range(m):
            values[(i, n + a)] = zero_vector(n) + setup.rep.act_basis(i, a)
    out = validate_lie(total, values)
    if isinstance(out, Violation):
        raise InvalidStructure(f"twisted semidirect product broke Jacobi: {out.describe()}")
    return out


def graph_subalgebra_check(setup: TrbSetup, t: Operator) -> bool:
    """Closure of {(Tu, u)} under the semidirect bracket, via rank tests.

    Independent oracle for check_trb: goes through the semidirect product's
    structure constants and exact rank computations only.
    """
    _check_shape(setup, t)
    semi = twisted_semidirect(setup)
    n, m = setup.dim, setup.module_dim
    span_cols = [tuple(t.col(a)) + tuple(1 if b == a else 0 for b in range(m)) for a in range(m)]
    span = Matrix.from_cols([vector(c) for c in span_cols], rows=n + m)
    base_rank = span.rank()
    for a, b in ext_basis(m, 2):
        w = semi.bracket_vec(span.col(a), span.col(b))
        if span.hstack(Matrix.from_cols([w], rows=n + m)).rank() != base_rank:
            return False
    return True


def induced_bracket_cochain(setup: TrbSetup, t: Operator) -> Cochain:
    """[u,v]_T = T(u).v - T(v).u + H(Tu,Tv) as a degree-2 cochain on M."""
    m = setup.module_dim
    values = {}
    for i, j in ext_basis(m, 2):
        tu, tv = t.col(i), t.col(j)
        v = vec_sub(setup.rep.act_vec_on_basis(tu, j), setup.rep.act_vec_on_basis(tv, i))
        v = vec_add(v, setup.cocycle.skew_eval([tu, tv]))
        values[(i, j)] = v
    return Cochain.from_values(2, m, m, values)


def induced_bracket(setup: TrbSetup, t: Operator) -> LieAlgebra:
    """The Lie algebra (M, [.,.]_T); requires the operator check to pass."""
    require_trb(setup, t)
    return lie_algebra_from_cochain(induced_bracket_cochain(setup, t))


def induced_action_matrices(setup: TrbSetup, t: Operator) -> tuple[Matrix, ...]:
    """Action of (M,[.,.]_T) on g: u . x = [Tu, x] + T(x.u + H(x, Tu))."""
    n, m = setup.dim, setup.module_dim
    mats = []
    for a in range(m):
        ta = t.col(a)
        cols = []
        for x in range(n):
            lead = setup.algebra.bracket.eval_mixed(ta, (x,))
            # H(e_x, Tu) = -H(Tu, e_x)
            h_term = vec_scale(-1, setup.cocycle.eval_mixed(ta, (x,)))
            inner = vec_add(setup.rep.act_basis(x, a), h_term)
            cols.append(vec_add(lead, t.apply(inner)))
        mats.append(Matrix.from_cols(cols, rows=n))
    return tuple(mats)


def induced_rep(setup: TrbSetup, t: Operator) -> Representation:
    require_trb(setup, t)
    mats = induced_action_matrices(setup, t)
    algebra = lie_algebra_from_cochain(induced_bracket_cochain(setup, t))
    out = validate_rep(algebra, setup.dim, mats)
    if isinstance(out, Violation):
        raise InvalidStructure(f"induced action is not a representation: {out.describe()}")
    return out


# -- new operators from old ----------------------------------------------


def is_one_cocycle(setup: TrbSetup, b: Matrix) -> bool:
    f = Cochain.from_matrix_map(b)
    return ce_differential_cochain(setup.algebra.bracket, setup.rep, f).is_zero()


def gauge_transform(setup: TrbSetup, t: Operator, b: Matrix) -> Operator:
    """T_B = T(id + B.T)^{-1} for a T-admissible 1-cocycle B.

    The transport identity (id + B.T)[u,v]_T = [(id+B.T)u, (id+B.T)v]_{T_B}
    is asserted on all basis pairs before returning.
    """
    _check_shape(setup, t)
    if b.rows != setup.module_dim or b.cols != setup.dim:
        raise InvalidStructure("gauge cochain must map g to M")
    if not is_one_cocycle(setup, b):
        raise NotCocycle("B is not closed")
    perturbed = Matrix.identity(setup.module_dim) + b @ t
    try:
        inv = perturbed.invert()
    except SingularMatrix as exc:
        raise NotAdmissible("id + B.T is singular") from exc
    t_b = t @ inv
    require_trb(setup, t_b)
    before = induced_bracket_cochain(setup, t)
    after = induced_bracket_cochain(setup, t_b)
    for i, j in ext_basis(setup.module_dim, 2):
        lhs = perturbed.apply(before.value_on_basis((i, j)))
        rhs = after.skew_eval([perturbed.col(i), perturbed.col(j)])
        if lhs != rhs:
            raise InvalidStructure("gauge transport identity failed")
    return t_b


def shift_by_coboundary(setup: TrbSetup, t: Operator, h: Matrix) -> tuple[TrbSetup, Operator]:
    """Move to the (H + delta h)-twisted setup with operator T(id - h.T)^{-1}."""
    _check_shape(setup, t)
    if h.rows != setup.module_dim or h.cols != setup.dim:
        raise InvalidStructure("shift cochain must map g to M")
    perturbed = Matrix.identity(setup.module_dim) - h @ t
    try:
        inv = perturbed.invert()
    except SingularMatrix as exc:
        raise NotAdmissible("id - h.T is singular") from exc
    dh = ce_differential_cochain(setup.algebra.bracket, setup.rep, Cochain.from_matrix_map(h))
    shifted = trb_setup(setup.algebra, setup.rep, setup.cocycle + dh)
    t_new = t @ inv
    require_trb(shifted, t_new)
    return shifted, t_new


def setup_from_invertible_cochain(
    algebra: LieAlgebra, rep: Representation, h: Matrix
) -> tuple[TrbSetup, Operator]:
    """T = h^{-1} is an operator for the twist H = -delta h."""
    if h.rows != rep.module_dim or h.cols != algebra.dim:
        raise InvalidStructure("h must map g to M")
    t = h.invert()
    dh = ce_differential_cochain(algebra.bracket, rep, Cochain.from_matrix_map(h))
    setup = trb_setup(algebra, rep, -dh)
    require_trb(setup, t)
    return setup, t


def nijenhuis_trb_setup(algebra: LieAlgebra, n_op: Matrix) -> tuple[TrbSetup, Operator]:
    """Setup (g_N acting on g by x.y = [Nx,y], H = -N[.,.]) with T = id.

    The representation and cocycle axioms are re-validated; the identity map
    then passes the twisted Rota-Baxter check.
    """
    check = nijenhuis_check(algebra, n_op)
    if not check:
        raise NotNijenhuis(check.violation.describe())
    g_n = deformed_bracket(algebra, n_op)
    dim = algebra.dim
    action = []
    for i in range(dim):
        cols = [algebra.bracket.eval_mixed(n_op.col(i), (j,)) for j in range(dim)]
        action.append(Matrix.from_cols(cols, rows=dim))
    rep = validate_rep(g_n, dim, action)
    if isinstance(rep, Violation):
        raise InvalidStructure(f"Nijenhuis action is not a representation: {rep.describe()}")
    h_values = {
        (i, j): vec_scale(-1, n_op.apply(algebra.bracket_basis(i, j)))
        for i, j in ext_basis(dim, 2)
    }
    cocycle = Cochain.from_values(2, dim, dim, h_values)
    setup = trb_setup(g_n, rep, cocycle)
    t = Matrix.identity(dim)
    require_trb(setup, t)
    return setup, t


# -- Reynolds operators ----------------------------------------------------


def reynolds_setup(algebra: LieAlgebra) -> TrbSetup:
    """Adjoint module with H = -bracket: its operators are Reynolds operators."""
    h = -algebra.bracket.matrix
    cocycle = Cochain(2, algebra.dim, algebra.dim, h)
    return trb_setup(algebra, adjoint_rep(algebra), cocycle)


def reynolds_check(algebra: LieAlgebra, r: Matrix) -> CheckReport:
    """[Rx,Ry] = R([Rx,y] + [x,Ry] - [Rx,Ry]), cross-checked via the twisted route.

    Both the direct identity and the (H = -bracket, adjoint) twisted
    Rota-Baxter check are computed; they must agree.
    """
    direct: CheckReport = passed()
    for i, j in ext_basis(algebra.dim, 2):
        rx, ry = r.col(i), r.col(j)
        lhs = algebra.bracket_vec(rx, ry)
        inner = vec_add(
            algebra.bracket.eval_mixed(rx, (j,)),
            vec_scale(-1, algebra.bracket.eval_mixed(ry, (i,))),
        )
        inner = vec_sub(inner, lhs)
        defect = vec_sub(lhs, r.apply(inner))
        if not vec_is_zero(defect):
            direct = failed("reynolds", (i, j), defect)
            break
    twisted = check_trb(reynolds_setup(algebra), r)
    if direct.ok != twisted.ok:
        raise InvalidStructure("Reynolds routes disagree; transcription bug")
    return direct


def reynolds_from_derivation(algebra: LieAlgebra, d: Matrix) -> Operator:
    """R = sum_{n<k} (-1)^n d^n for a nilpotent derivation with d^k = 0."""
    check = derivation_check(algebra, d)
    if not check:
        raise NotDerivation(check.violation.describe())
    k = nilpotency_index(d)
    r = Matrix.zero(algebra.dim, algebra.dim)
    power = Matrix.identity(algebra.dim)
    for n in range(k):
        r = r + power.scale(Fraction((-1) ** n))
        power = power @ d
    verdict = reynolds_check(algebra, r)
    assert verdict.ok
    return r


@dataclass(frozen=True)
class WittRow:
    m: int
    n: int
    lhs: Fraction
    rhs: Fraction
    induced: Fraction
    ok: bool


def witt_report(n_max: int) -> list[WittRow]:
    """Exact per-pair checks for R(l_m) = l_m/(m+1) on the Witt span l_0, l_1, ...

    Both sides of the Reynolds identity land on the single line l_{m+n}, so
    each pair is one rational identity; the closed forms are asserted too.
    """
    rows = []
    for m in range(n_max + 1):
        for n in range(m, n_max + 1):
            rm = Fraction(1, m + 1)
            rn = Fraction(1, n + 1)
            br = Fraction(m - n)  # coefficient of l_{m+n} in [l_m, l_n]
            lhs = rm * rn * br
            inner = br * rm + br * rn - rm * rn * br
            rhs = inner * Fraction(1, m + n + 1)
            induced = inner
            expected = Fraction(m - n, (m + 1) * (n + 1))
            expected_ind = Fraction((m - n) * (m + n + 1), (m + 1) * (n + 1))
            ok = lhs == rhs == expected and induced == expected_ind
            rows.append(WittRow(m, n, lhs, rhs, induced, ok))
    return rows


# -- twisted triangular r-matrices ------------------------------------------


def psi_sharp(algebra: LieAlgebra, psi: Cochain) -> Cochain:
    """Turn a scalar 3-cochain into a 2-cochain valued in the dual space."""
    if psi.degree != 3 or psi.source_dim != algebra.dim or psi.target_dim != 1:
        raise InvalidStructure("psi must be a degree-3 cochain with scalar values")
    dim = algebra.dim
    values = {}
    for i, j in ext_basis(dim, 2):
        values[(i, j)] = tuple(psi.value_on_tuple((i, j, k))[0] for k in range(dim))
    return Cochain.from_values(2, dim, dim, values)


def is_scalar_cocycle(algebra: LieAlgebra, psi: Cochain) -> bool:
    return ce_differential_cochain(algebra.bracket, trivial_rep(algebra, 1), psi).is_zero()


def r_matrix_check(
    algebra: LieAlgebra, r: Matrix, psi: Cochain
) -> tuple[CheckReport, LieAlgebra | None]:
    """Is r (the matrix of the induced map g* -> g) a twisted r-matrix?

    Delegates to the twisted Rota-Baxter check over the coadjoint module with
    H built from psi.  On success also returns the induced dual-space Lie
    algebra and asserts r is a morphism onto it.
    """
    if not r.is_skew():
        raise NotSkew("r must be skew-symmetric")
    if not is_scalar_cocycle(algebra, psi):
        raise NotCocycle("psi is not closed")
    setup = trb_setup(algebra, coadjoint_rep(algebra), psi_sharp(algebra, psi))
    verdict = check_trb(setup, r)
    if not verdict:
        return verdict, None
    dual = induced_bracket(setup, r)
    for i, j in ext_basis(algebra.dim, 2):
        lhs = algebra.bracket_vec(r.col(i), r.col(j))
        rhs = r.apply(dual.bracket_basis(i, j))
        if lhs != rhs:
            raise InvalidStructure("r fails to be a morphism onto the dual bracket")
    return verdict, dual
