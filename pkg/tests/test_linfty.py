import itertools
import math
from fractions import Fraction

import pytest

from oracles import bracket3_six_sum
from twistrb import corpus
from twistrb.errors import NotTwistedRB
from twistrb.exactlin import Matrix, vec_scale, vec_sub
from twistrb.liealg import ce_cohomology_dims
from twistrb.linfty import (
    bracket2,
    bracket3,
    cohomology_of_t_dims,
    compare_dt_ce,
    d_t,
    d_t_unchecked,
    graded_perm_sign,
    linfty_jacobi_defect,
    mc_defect,
    mc_defect_shifted,
    operator_element,
    twisted_bracket2,
    zero_element,
)
from twistrb.multilin import Cochain, ext_basis
from twistrb.operators import check_trb, induced_bracket, induced_rep


def random_element(rng, setup, degree):
    size = math.comb(setup.module_dim, degree) * setup.dim
    return Cochain.from_vec(
        degree, setup.module_dim, setup.dim, [Fraction(rng.randint(-2, 2)) for _ in range(size)]
    )


def test_bracket2_operator_closed_form(rng, trb_corpus):
    """[[T,T]](u,v) = 2{T(Tu.v - Tv.u) - [Tu,Tv]} entry for entry."""
    for name, setup, _ in trb_corpus[:6]:
        for _ in range(5):
            t = corpus.random_operator(rng, setup)
            te = operator_element(setup, t)
            b2 = bracket2(setup, te, te)
            for i, j in ext_basis(setup.module_dim, 2):
                tu, tv = t.col(i), t.col(j)
                inner = vec_sub(
                    setup.rep.act_vec_on_basis(tu, j), setup.rep.act_vec_on_basis(tv, i)
                )
                expected = vec_scale(
                    Fraction(2), vec_sub(t.apply(inner), setup.algebra.bracket_vec(tu, tv))
                )
                assert b2.value_on_basis((i, j)) == expected, name


def test_bracket2_bilinearity_zero(trb_corpus):
    name, setup, t = trb_corpus[0]
    te = operator_element(setup, t)
    zero = zero_element(setup, 2)
    assert bracket2(setup, te, zero).is_zero()
    assert bracket2(setup, zero, te).is_zero()


def test_bracket2_degree_zero_is_plain_bracket(trb_corpus):
    """[[x, y]] = [x, y] for constants; the recorded sign is +1."""
    for name, setup, _ in trb_corpus[:4]:
        n = setup.dim
        for i in range(n):
            for j in range(n):
                x = Cochain(0, setup.module_dim, n, Matrix(n, 1, [1 if k == i else 0 for k in range(n)]))
                y = Cochain(0, setup.module_dim, n, Matrix(n, 1, [1 if k == j else 0 for k in range(n)]))
                out = bracket2(setup, x, y)
                assert out.value_on_basis(()) == setup.algebra.bracket_basis(i, j)


def test_bracket3_operator_closed_form(rng, trb_corpus):
    """[[T,T,T]](u,v) = -6 T(H(Tu,Tv)) entry for entry."""
    for name, setup, _ in trb_corpus[:6]:
        for _ in range(5):
            t = corpus.random_operator(rng, setup)
            te = operator_element(setup, t)
            b3 = bracket3(setup, te, te, te)
            for i, j in ext_basis(setup.module_dim, 2):
                hv = setup.cocycle.skew_eval([t.col(i), t.col(j)])
                assert b3.value_on_basis((i, j)) == vec_scale(Fraction(-6), t.apply(hv)), name


def test_bracket3_untwisted_vanishes(algebras, rng):
    from twistrb.liealg import trivial_rep
    from twistrb.operators import trb_setup

    g = algebras["sl2"]
    setup = trb_setup(g, trivial_rep(g, 2), None)
    for _ in range(5):
        degs = [rng.randint(0, 2) for _ in range(3)]
        p, q, r = (random_element(rng, setup, d) for d in degs)
        assert bracket3(setup, p, q, r).is_zero()


def test_bracket3_multilinearity_zero(trb_corpus):
    name, setup, t = trb_corpus[0]
    te = operator_element(setup, t)
    zero = zero_element(setup, 1)
    assert bracket3(setup, te, te, zero).is_zero()
    assert bracket3(setup, zero, te, te).is_zero()


def test_bracket3_matches_six_sum_display_on_positive_degrees(rng, trb_corpus):
    """The paper's six-unshuffle display agrees with the insertion-bracket form
    whenever every argument has degree >= 1."""
    for name, setup, _ in trb_corpus[:4]:
        for degs in itertools.product((1, 2), repeat=3):
            if sum(degs) - 1 > setup.module_dim:
                continue
            p, q, r = (random_element(rng, setup, d) for d in degs)
            assert bracket3(setup, p, q, r) == bracket3_six_sum(setup, p, q, r), (name, degs)


def test_graded_skew_symmetry(rng, trb_corpus):
    for name, setup, _ in trb_corpus[:3]:
        for degs in itertools.product((0, 1, 2), repeat=2):
            p, q = (random_element(rng, setup, d) for d in degs)
            lhs = bracket2(setup, q, p)
            rhs = bracket2(setup, p, q).scale(Fraction(-((-1) ** (degs[0] * degs[1]))))
            assert lhs == rhs, (name, degs)
        for degs in itertools.product((0, 1, 2), repeat=3):
            p, q, r = (random_element(rng, setup, d) for d in degs)
            base = bracket3(setup, p, q, r)
            for perm in itertools.permutations(range(3)):
                got = bracket3(setup, *[(p, q, r)[k] for k in perm])
                sign = graded_perm_sign(degs, perm)
                assert got == base.scale(Fraction(sign)), (name, degs, perm)


def test_mc_defect_biconditional(rng, trb_corpus):
    for name, setup, t in trb_corpus:
        assert mc_defect(setup, t).is_zero(), name
        for _ in range(10):
            cand = corpus.random_operator(rng, setup)
            assert mc_defect(setup, cand).is_zero() == check_trb(setup, cand).ok, name


def test_mc_defect_closed_form(rng, trb_corpus):
    """defect(u,v) = T(Tu.v - Tv.u + H(Tu,Tv)) - [Tu,Tv], recomputed directly."""
    name, setup, _ = trb_corpus[0]
    for _ in range(10):
        t = corpus.random_operator(rng, setup)
        defect = mc_defect(setup, t)
        for i, j in ext_basis(setup.module_dim, 2):
            tu, tv = t.col(i), t.col(j)
            inner = vec_sub(setup.rep.act_vec_on_basis(tu, j), setup.rep.act_vec_on_basis(tv, i))
            inner = tuple(a + b for a, b in zip(inner, setup.cocycle.skew_eval([tu, tv])))
            direct = vec_sub(t.apply(inner), setup.algebra.bracket_vec(tu, tv))
            assert defect.value_on_basis((i, j)) == direct


def test_d_t_zero_and_degree_zero_formula(trb_corpus):
    for name, setup, t in trb_corpus:
        assert d_t(setup, t, zero_element(setup, 1)).is_zero(), name
        n, m = setup.dim, setup.module_dim
        for i in range(n):
            x = Cochain(0, m, n, Matrix(n, 1, [1 if k == i else 0 for k in range(n)]))
            image = d_t(setup, t, x)
            for a in range(m):
                ta = t.col(a)
                xv = x.value_on_basis(())
                expected = setup.algebra.bracket_vec(ta, xv)
                inner = tuple(
                    p + q
                    for p, q in zip(
                        setup.rep.act_vec_on_basis(xv, a),
                        setup.cocycle.skew_eval([xv, ta]),
                    )
                )
                expected = tuple(e + f for e, f in zip(expected, t.apply(inner)))
                assert image.value_on_basis((a,)) == expected, name


def test_d_t_requires_operator(trb_corpus, rng):
    name, setup, t = trb_corpus[0]
    bad = None
    for _ in range(50):
        cand = corpus.random_operator(rng, setup)
        if not check_trb(setup, cand).ok:
            bad = cand
            break
    assert bad is not None
    with pytest.raises(NotTwistedRB):
        d_t(setup, bad, zero_element(setup, 1))


def test_d_t_squares_to_zero(rng, trb_corpus):
    for name, setup, t in trb_corpus:
        for deg in (0, 1, 2):
            for _ in range(3):
                f = random_element(rng, setup, deg)
                assert d_t_unchecked(setup, t, d_t_unchecked(setup, t, f)).is_zero(), name


def test_compare_dt_ce_basis_sweep(trb_corpus):
    for name, setup, t in trb_corpus:
        m, n = setup.module_dim, setup.dim
        for deg in (0, 1, 2):
            size = math.comb(m, deg) * n
            for j in range(size):
                flat = [0] * size
                flat[j] = 1
                f = Cochain.from_vec(deg, m, n, flat)
                assert compare_dt_ce(setup, t, f), (name, deg, j)


def test_cohomology_pipeline_equality(trb_corpus):
    for name, setup, t in trb_corpus:
        dims_t = cohomology_of_t_dims(setup, t, 3)
        dims_ce = ce_cohomology_dims(induced_bracket(setup, t), induced_rep(setup, t), 3)
        assert dims_t == dims_ce, name


def test_cohomology_all_differentials_vanish_case():
    """Abelian everything: dims are dim(g) * binomial(dim M, n)."""
    from twistrb.liealg import abelian, trivial_rep
    from twistrb.operators import trb_setup

    g = abelian(2)
    setup = trb_setup(g, trivial_rep(g, 3), None)
    t = Matrix.zero(2, 3)
    dims = cohomology_of_t_dims(setup, t, 3)
    assert dims == [2 * math.comb(3, n) for n in range(4)]


def test_twisted_mc_defect(rng, trb_corpus):
    for name, setup, t in trb_corpus[:6]:
        zero = Matrix.zero(setup.dim, setup.module_dim)
        assert mc_defect_shifted(setup, t, zero).is_zero(), name
        assert mc_defect_shifted(setup, t, -t).is_zero(), name
        for _ in range(6):
            tp = corpus.random_operator(rng, setup)
            shifted = mc_defect_shifted(setup, t, tp)
            assert shifted.is_zero() == check_trb(setup, t + tp).ok, name
            assert shifted == mc_defect(setup, t + tp), name


def test_twisted_bracket2_reduces_to_plain_when_untwisted(rng, algebras):
    from twistrb.liealg import trivial_rep
    from twistrb.operators import trb_setup

    g = algebras["affine"]
    setup = trb_setup(g, trivial_rep(g, 2), None)
    t = Matrix.zero(2, 2)
    for _ in range(5):
        p = random_element(rng, setup, 1)
        q = random_element(rng, setup, 1)
        assert twisted_bracket2(setup, t, p, q) == bracket2(setup, p, q)


def test_higher_jacobi(rng, trb_corpus):
    for name, setup, _ in trb_corpus:
        for n in (2, 3, 4):
            for _ in range(5):
                degs = [rng.randint(0, 2) for _ in range(n)]
                els = [random_element(rng, setup, d) for d in degs]
                assert linfty_jacobi_defect(setup, n, els).is_zero(), (name, n, degs)
