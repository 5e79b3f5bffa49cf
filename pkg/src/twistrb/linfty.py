"""The governing graded structure on multilinear maps from the module to g.

Hom(wedge^p M, g) sits in degree p, so operators T : M -> g are the degree-1
elements.  The binary bracket preserves degree and the ternary bracket
(which carries the twisting cochain H) lowers it by one.  An operator
satisfies the twisted Rota-Baxter identity exactly when its Maurer-Cartan
expression (1/2)[[T,T]] - (1/6)[[T,T,T]] vanishes, and

    d_T(f) = [[T, f]] - (1/2)[[T, T, f]]

is the differential of the operator's cohomology.  Unshuffle blocks of
negative size contribute empty sums, which is what makes every formula work
on degree-0 elements of g.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Sequence

from .errors import DimensionMismatch
from .exactlin import Matrix, permutation_sign, vec_add, vec_scale, zero_vector
from .liealg import (
    Representation,
    ce_differential_cochain,
    cohomology_dims_from_matrices,
)
from .multilin import Cochain, ext_basis, iter_unshuffles
from .operators import (
    Operator,
    TrbSetup,
    induced_action_matrices,
    induced_bracket_cochain,
    require_trb,
)


def graded_element(setup: TrbSetup, degree: int, matrix: Matrix) -> Cochain:
    """A homogeneous element: a cochain from M to g tagged by its degree."""
    return Cochain(degree, setup.module_dim, setup.dim, matrix)


def _check_element(setup: TrbSetup, p: Cochain) -> None:
    if p.source_dim != setup.module_dim or p.target_dim != setup.dim:
        raise DimensionMismatch("element does not live over this setup")


def zero_element(setup: TrbSetup, degree: int) -> Cochain:
    return Cochain.zero(degree, setup.module_dim, setup.dim)


def operator_element(setup: TrbSetup, t: Operator) -> Cochain:
    return Cochain.from_matrix_map(t)


def bracket2(setup: TrbSetup, p: Cochain, q: Cochain) -> Cochain:
    """The degree-preserving bracket: three unshuffle sums with parity signs."""
    _check_element(setup, p)
    _check_element(setup, q)
    dp, dq = p.degree, q.degree
    out_deg = dp + dq
    m, n = setup.module_dim, setup.dim
    sign_pq = (-1) ** (dp * dq)
    cols = []
    for us in ext_basis(m, out_deg):
        total = zero_vector(n)
        # P( Q(...) . u, rest )
        for word, sgn in iter_unshuffles((dq, 1, dp - 1)):
            qv = q.value_on_basis(tuple(us[k] for k in word[:dq]))
            acted = setup.rep.act_vec_on_basis(qv, us[word[dq]])
            rest = tuple(us[k] for k in word[dq + 1 :])
            total = vec_add(total, vec_scale(Fraction(sgn), p.eval_mixed(acted, rest)))
        # - (-1)^{pq} Q( P(...) . u, rest )
        for word, sgn in iter_unshuffles((dp, 1, dq - 1)):
            pv = p.value_on_basis(tuple(us[k] for k in word[:dp]))
            acted = setup.rep.act_vec_on_basis(pv, us[word[dp]])
            rest = tuple(us[k] for k in word[dp + 1 :])
            total = vec_add(
                total, vec_scale(Fraction(-sign_pq * sgn), q.eval_mixed(acted, rest))
            )
        # + (-1)^{pq} [ P(...), Q(...) ]
        for word, sgn in iter_unshuffles((dp, dq)):
            pv = p.value_on_basis(tuple(us[k] for k in word[:dp]))
            qv = q.value_on_basis(tuple(us[k] for k in word[dp:]))
            total = vec_add(
                total,
                vec_scale(Fraction(sign_pq * sgn), setup.algebra.bracket_vec(pv, qv)),
            )
        cols.append(total)
    return Cochain(out_deg, m, n, Matrix.from_cols(cols, rows=n))


# The ternary bracket is computed through the graded bracket of skew
# multilinear maps on the direct sum g (+) M (insertion bracket), applied
# three times to the lifted twisting cochain and then restricted back to
# maps from M to g.  The paper's six-unshuffle-sum expansion agrees with
# this on elements of degree >= 1 (the tests assert it) but its literal
# extension to degree-0 arguments breaks the higher Jacobi identities,
# so the insertion-bracket form is the definition used everywhere.


def _nr_insert(a: Cochain, b: Cochain) -> Cochain:
    """(A o B)(v_*) = sum over Sh(arity B, arity A - 1) of sgn A(B(...), rest)."""
    big = a.source_dim
    alpha, beta = a.degree, b.degree
    arity = alpha + beta - 1
    if arity < 0:
        return Cochain.zero(arity, big, big)
    cols = []
    for us in ext_basis(big, arity):
        total = zero_vector(big)
        for word, sgn in iter_unshuffles((beta, alpha - 1)):
            bv = b.value_on_basis(tuple(us[k] for k in word[:beta]))
            rest = tuple(us[k] for k in word[beta:])
            total = vec_add(total, vec_scale(Fraction(sgn), a.eval_mixed(bv, rest)))
        cols.append(total)
    return Cochain(arity, big, big, Matrix.from_cols(cols, rows=big))


def nr_bracket(a: Cochain, b: Cochain) -> Cochain:
    """Graded bracket of skew maps; the grading is arity minus one."""
    da, db = a.degree - 1, b.degree - 1
    return _nr_insert(a, b) - _nr_insert(b, a).scale(Fraction((-1) ** (da * db)))


def _embed(setup: TrbSetup, p: Cochain) -> Cochain:
    """View a map wedge^p M -> g as a skew map on g (+) M (g first)."""
    n = setup.dim
    big = n + setup.module_dim
    vals = {}
    for t in ext_basis(big, p.degree):
        if all(i >= n for i in t):
            v = p.value_on_basis(tuple(i - n for i in t))
            vals[t] = tuple(v) + zero_vector(setup.module_dim)
    return Cochain.from_values(p.degree, big, big, vals)


def _restrict(setup: TrbSetup, a: Cochain, out_deg: int) -> Cochain:
    """Restrict inputs to M and project values to g; zero outside range."""
    n, m = setup.dim, setup.module_dim
    if a.degree != out_deg:
        return Cochain.zero(out_deg, m, n)
    if out_deg < 0 or out_deg > m:
        return Cochain.zero(out_deg, m, n)
    vals = {}
    for t in ext_basis(m, out_deg):
        vals[t] = a.value_on_basis(tuple(i + n for i in t))[:n]
    return Cochain.from_values(out_deg, m, n, vals)


def _lifted_twist(setup: TrbSetup) -> Cochain:
    """The twisting cochain as a skew map on g (+) M with values in M."""
    n, m = setup.dim, setup.module_dim
    big = n + m
    vals = {}
    for i, j in ext_basis(big, 2):
        if j < n:
            vals[(i, j)] = zero_vector(n) + tuple(setup.cocycle.value_on_basis((i, j)))
    return Cochain.from_values(2, big, big, vals)


def bracket3(setup: TrbSetup, p: Cochain, q: Cochain, r: Cochain) -> Cochain:
    """The degree-lowering ternary bracket carrying the twisting cochain.

    Defined as (-1)^{deg q + 1} times the triple insertion bracket of the
    lifted twist with the three elements, restricted back to maps M -> g;
    the sign is pinned by [[T,T,T]](u,v) = -6 T(H(Tu,Tv)) and by the
    degree-0 formula used by the deformation differential.
    """
    _check_element(setup, p)
    _check_element(setup, q)
    _check_element(setup, r)
    out_deg = p.degree + q.degree + r.degree - 1
    h = _lifted_twist(setup)
    raw = nr_bracket(nr_bracket(nr_bracket(h, _embed(setup, p)), _embed(setup, q)), _embed(setup, r))
    return _restrict(setup, raw, out_deg).scale(Fraction((-1) ** (q.degree + 1)))


def mc_defect(setup: TrbSetup, t: Operator) -> Cochain:
    """(1/2)[[T,T]] - (1/6)[[T,T,T]]; zero exactly when T passes check_trb.

    The biconditional with the direct identity is asserted on every call.
    """
    te = operator_element(setup, t)
    b2 = bracket2(setup, te, te)
    b3 = bracket3(setup, te, te, te)
    defect = b2.scale(Fraction(1, 2)) - b3.scale(Fraction(1, 6))
    from .operators import check_trb

    assert defect.is_zero() == check_trb(setup, t).ok
    return defect


def d_t(setup: TrbSetup, t: Operator, f: Cochain) -> Cochain:
    """d_T(f) = [[T,f]] - (1/2)[[T,T,f]]; requires T to pass check_trb."""
    require_trb(setup, t)
    return d_t_unchecked(setup, t, f)


def d_t_unchecked(setup: TrbSetup, t: Operator, f: Cochain) -> Cochain:
    te = operator_element(setup, t)
    return bracket2(setup, te, f) - bracket3(setup, te, te, f).scale(Fraction(1, 2))


def d_t_matrix(setup: TrbSetup, t: Operator, degree: int) -> Matrix:
    """Matrix of d_T on degree-`degree` elements in the flattened lex bases."""
    m, n = setup.module_dim, setup.dim
    domain = comb(m, degree) * n if degree >= 0 else 0
    codomain = comb(m, degree + 1) * n
    cols = []
    for j in range(domain):
        flat = [0] * domain
        flat[j] = 1
        f = Cochain.from_vec(degree, m, n, flat)
        cols.append(d_t_unchecked(setup, t, f).vec())
    return Matrix.from_cols(cols, rows=codomain)


def compare_dt_ce(setup: TrbSetup, t: Operator, f: Cochain) -> bool:
    """d_T f = (-1)^n delta_CE f over the induced structure on M, exactly."""
    require_trb(setup, t)
    left = d_t_unchecked(setup, t, f)
    bracket = induced_bracket_cochain(setup, t)
    rep = Representation(setup.dim, induced_action_matrices(setup, t))
    right = ce_differential_cochain(bracket, rep, f)
    if f.degree % 2 == 1:
        right = -right
    return left == right


def cohomology_of_t_dims(setup: TrbSetup, t: Operator, n_max: int) -> list[int]:
    """Dimensions of the operator's cohomology in degrees 0..n_max."""
    require_trb(setup, t)
    deltas = [d_t_matrix(setup, t, k) for k in range(n_max + 1)]
    return cohomology_dims_from_matrices(deltas)


def twisted_bracket2(setup: TrbSetup, t: Operator, p: Cochain, q: Cochain) -> Cochain:
    """[[P,Q]]_T = [[P,Q]] - [[T,P,Q]] (the ternary bracket is unchanged)."""
    require_trb(setup, t)
    te = operator_element(setup, t)
    return bracket2(setup, p, q) - bracket3(setup, te, p, q)


def mc_defect_shifted(setup: TrbSetup, t: Operator, t_prime: Operator) -> Cochain:
    """d_T(T') + (1/2)[[T',T']]_T - (1/6)[[T',T',T']]; zero iff T+T' passes.

    The biconditional with check_trb on the sum is asserted on every call.
    """
    require_trb(setup, t)
    te = operator_element(setup, t)
    tp = operator_element(setup, t_prime)
    lin = d_t_unchecked(setup, t, tp)
    quad = (bracket2(setup, tp, tp) - bracket3(setup, te, tp, tp)).scale(Fraction(1, 2))
    cub = bracket3(setup, tp, tp, tp).scale(Fraction(1, 6))
    defect = lin + quad - cub
    from .operators import check_trb

    assert defect.is_zero() == check_trb(setup, t + t_prime).ok
    return defect


# -- higher Jacobi identities -------------------------------------------


def koszul_sign(degrees: Sequence[int], word: Sequence[int]) -> int:
    """Sign from commuting graded elements into the order given by `word`."""
    sign = 1
    for a in range(len(word)):
        for b in range(a + 1, len(word)):
            if word[a] > word[b] and degrees[word[a]] * degrees[word[b]] % 2 == 1:
                sign = -sign
    return sign


def graded_perm_sign(degrees: Sequence[int], word: Sequence[int]) -> int:
    """Parity times Koszul sign: the sign in the graded skew-symmetry rule."""
    return permutation_sign(word) * koszul_sign(degrees, word)


def _apply_l(setup: TrbSetup, args: Sequence[Cochain]) -> Cochain | None:
    """l_k for k = 2, 3; None for the absent l_1 and l_{k>=4}."""
    if len(args) == 2:
        return bracket2(setup, args[0], args[1])
    if len(args) == 3:
        return bracket3(setup, args[0], args[1], args[2])
    return None


def linfty_jacobi_defect(setup: TrbSetup, n: int, elements: Sequence[Cochain]) -> Cochain:
    """The n-th generalized Jacobi sum for (l_1 = 0, l_2, l_3); expected zero.

    Terms survive only for i, j in {2, 3} with i + j = n + 1; the sum runs
    over (i, n-i)-unshuffles with parity and Koszul signs on the graded
    arguments.
    """
    if len(elements) != n:
        raise DimensionMismatch(f"need {n} elements, got {len(elements)}")
    for e in elements:
        _check_element(setup, e)
    degrees = [e.degree for e in elements]
    out_deg = sum(degrees) - n + 3
    total = zero_element(setup, out_deg)
    for i in (2, 3):
        j = n + 1 - i
        if j not in (2, 3):
            continue
        outer_sign = (-1) ** (i * (j - 1))
        for word, sgn in iter_unshuffles((i, n - i)):
            inner = _apply_l(setup, [elements[k] for k in word[:i]])
            if inner.degree < 0:
                continue  # landed in the zero space
            rest = [elements[k] for k in word[i:]]
            term = _apply_l(setup, [inner, *rest])
            s = outer_sign * sgn * koszul_sign(degrees, word)
            total = total + term.scale(Fraction(s))
    return total
