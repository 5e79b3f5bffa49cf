from fractions import Fraction

import pytest

from twistrb import corpus
from twistrb.errors import NotAdmissible, NotCocycle, NotSkew
from twistrb.exactlin import Matrix
from twistrb.liealg import (
    Violation,
    abelian,
    adjoint_rep,
    coadjoint_rep,
    lie_algebra_from_cochain,
    validate_lie,
    validate_rep,
)
from twistrb.multilin import Cochain, ext_basis
from twistrb.operators import (
    check_trb,
    gauge_transform,
    graph_subalgebra_check,
    induced_bracket,
    induced_rep,
    is_one_cocycle,
    nijenhuis_trb_setup,
    r_matrix_check,
    reynolds_check,
    reynolds_from_derivation,
    reynolds_setup,
    setup_from_invertible_cochain,
    shift_by_coboundary,
    trb_setup,
    twisted_semidirect,
    witt_report,
)


def test_zero_operator_always_passes(trb_corpus):
    for name, setup, _ in trb_corpus:
        zero = Matrix.zero(setup.dim, setup.module_dim)
        assert check_trb(setup, zero).ok, name


def test_corpus_instances_pass(trb_corpus):
    for name, setup, t in trb_corpus:
        assert check_trb(setup, t).ok, name


def test_invertible_cochain_construction(algebras):
    # T = h^{-1} with twist -delta(h), for several h on several frames
    frames = [
        (algebras["affine"], adjoint_rep(algebras["affine"]), Matrix.from_rows([[1, 1], [0, 1]])),
        (algebras["sl2"], adjoint_rep(algebras["sl2"]), Matrix.from_rows([[1, 0, 1], [0, 2, 0], [0, 0, 3]])),
        (algebras["heisenberg"], coadjoint_rep(algebras["heisenberg"]), Matrix.from_rows([[2, 1, 0], [0, 1, 0], [1, 0, 1]])),
    ]
    for g, rep, h in frames:
        setup, t = setup_from_invertible_cochain(g, rep, h)
        assert check_trb(setup, t).ok
        assert t == h.invert()


def test_twisted_semidirect_jacobi(trb_corpus):
    for name, setup, _ in trb_corpus:
        semi = twisted_semidirect(setup)
        assert semi.dim == setup.dim + setup.module_dim
        assert not isinstance(
            validate_lie(semi.dim, {t: semi.bracket_basis(*t) for t in ext_basis(semi.dim, 2)}),
            Violation,
        ), name


def test_graph_oracle_matches_check(rng, trb_corpus):
    """100 random operators per setup: graph closure = direct identity."""
    for name, setup, _ in trb_corpus[:5]:
        for _ in range(100):
            t = corpus.random_operator(rng, setup, bound=2)
            assert graph_subalgebra_check(setup, t) == check_trb(setup, t).ok, name


def test_induced_structures(trb_corpus):
    for name, setup, t in trb_corpus:
        algebra = induced_bracket(setup, t)
        rep = induced_rep(setup, t)
        out = validate_rep(algebra, setup.dim, rep.action)
        assert not isinstance(out, Violation), name


def test_nijenhuis_induced_bracket_is_deformed_bracket(algebras):
    from twistrb.liealg import deformed_bracket

    n = Matrix.from_rows([[2, 0], [0, 3]])
    setup, ident = nijenhuis_trb_setup(algebras["affine"], n)
    induced = induced_bracket(setup, ident)
    assert induced.bracket == deformed_bracket(algebras["affine"], n).bracket


def test_nijenhuis_identity_operator_on_sl2(algebras):
    setup, ident = nijenhuis_trb_setup(algebras["sl2"], Matrix.identity(3))
    assert ident == Matrix.identity(3)
    assert check_trb(setup, ident).ok


def test_twisted_semidirect_abelian_corner():
    from twistrb.liealg import abelian, trivial_rep

    g = abelian(2)
    setup = trb_setup(g, trivial_rep(g, 2), None)
    assert twisted_semidirect(setup).is_abelian()


def test_induced_rep_corner_cases(algebras, trb_corpus):
    from twistrb.liealg import abelian, trivial_rep
    from twistrb.exactlin import basis_vector, vec_add, vec_sub

    # T = 0, H = 0: the induced action vanishes
    g = abelian(2)
    setup = trb_setup(g, trivial_rep(g, 2), None)
    rep = induced_rep(setup, Matrix.zero(2, 2))
    assert all(m.is_zero() for m in rep.action)
    # Reynolds frame: u .bar x = [Ru, x] + R([x, u] - [x, Ru]) entrywise
    for name, s, r in trb_corpus:
        if not name.endswith("reynolds-id") and "reynolds-deriv" not in name:
            continue
        rep = induced_rep(s, r)
        n = s.dim
        for a in range(n):
            for x in range(n):
                ru = r.col(a)
                xv = basis_vector(n, x)
                lead = s.algebra.bracket_vec(ru, xv)
                inner = vec_sub(
                    s.algebra.bracket_vec(xv, basis_vector(n, a)),
                    s.algebra.bracket_vec(xv, ru),
                )
                expected = vec_add(lead, r.apply(inner))
                assert rep.action[a].col(x) == expected, name


def test_gauge_trivial_cases(trb_corpus):
    for name, setup, t in trb_corpus[:4]:
        zero_b = Matrix.zero(setup.module_dim, setup.dim)
        assert gauge_transform(setup, t, zero_b) == t, name
    # T = 0: any closed B leaves it at zero
    name, setup, _ = trb_corpus[0]
    zero_t = Matrix.zero(setup.dim, setup.module_dim)
    b = corpus._first_admissible_cocycle(setup, zero_t)
    if b is not None:
        assert gauge_transform(setup, zero_t, b) == zero_t


def test_gauge_transform_properties(rng, trb_corpus):
    """Admissible cocycles: the transform passes and transports the bracket."""
    exercised = 0
    for name, setup, t in trb_corpus:
        b = corpus._first_admissible_cocycle(setup, t)
        if b is None or b.is_zero():
            continue
        t_b = gauge_transform(setup, t, b)  # internally asserts transport identity
        assert check_trb(setup, t_b).ok, name
        exercised += 1
    assert exercised >= 2


def test_gauge_rejects_non_cocycle(trb_corpus):
    name, setup, t = trb_corpus[0]  # sl2 reynolds frame
    b = Matrix.from_rows([[1, 0, 0], [0, 0, 0], [0, 0, 0]])
    if not is_one_cocycle(setup, b):
        with pytest.raises(NotCocycle):
            gauge_transform(setup, t, b)


def test_shift_by_coboundary(rng, trb_corpus):
    for name, setup, t in trb_corpus[:6]:
        zero_h = Matrix.zero(setup.module_dim, setup.dim)
        shifted, t_new = shift_by_coboundary(setup, t, zero_h)
        assert t_new == t and shifted.cocycle == setup.cocycle
        # random admissible h
        for _ in range(20):
            h = corpus.random_matrix(rng, setup.module_dim, setup.dim, bound=1)
            perturbed = Matrix.identity(setup.module_dim) - h @ t
            if perturbed.rank() < setup.module_dim:
                continue
            shifted, t_new = shift_by_coboundary(setup, t, h)  # asserts internally
            assert check_trb(shifted, t_new).ok, name
            break


def test_shift_zero_operator_moves_the_twist(rng, trb_corpus):
    from twistrb.liealg import ce_differential_cochain
    from twistrb.multilin import Cochain

    name, setup, _ = trb_corpus[0]
    zero_t = Matrix.zero(setup.dim, setup.module_dim)
    h = corpus.random_matrix(rng, setup.module_dim, setup.dim, bound=1)
    shifted, t_new = shift_by_coboundary(setup, zero_t, h)
    assert t_new.is_zero()
    dh = ce_differential_cochain(setup.algebra.bracket, setup.rep, Cochain.from_matrix_map(h))
    assert shifted.cocycle == setup.cocycle + dh


def test_shift_not_admissible(trb_corpus):
    for name, setup, t in trb_corpus:
        if setup.dim != setup.module_dim or t.rank() < setup.dim:
            continue
        h = t.invert()  # id - h.T = 0, maximally singular
        with pytest.raises(NotAdmissible):
            shift_by_coboundary(setup, t, h)
        return
    pytest.skip("no invertible corpus operator")


def test_reynolds_examples(algebras):
    for g in (algebras["sl2"], algebras["heisenberg"], algebras["affine"]):
        assert reynolds_check(g, Matrix.identity(g.dim)).ok
        assert reynolds_check(g, Matrix.zero(g.dim, g.dim)).ok
    heis = algebras["heisenberg"]
    d = Matrix.from_rows([[0, 0, 0], [0, 0, 0], [1, 0, 0]])
    r = Matrix.identity(3) - d
    assert reynolds_check(heis, r).ok
    # a non-Reynolds operator fails both routes coherently
    assert not reynolds_check(algebras["sl2"], Matrix.identity(3).scale(2)).ok


def test_reynolds_from_derivation(algebras):
    heis = algebras["heisenberg"]
    assert reynolds_from_derivation(heis, Matrix.zero(3, 3)) == Matrix.identity(3)
    d = Matrix.from_rows([[0, 0, 0], [0, 0, 0], [1, 0, 0]])
    assert reynolds_from_derivation(heis, d) == Matrix.identity(3) - d


def test_reynolds_derivation_sweep(algebras):
    """All nilpotent derivations found on small algebras yield Reynolds operators."""
    heis = algebras["heisenberg"]
    found = 0
    for a in (-1, 0, 1):
        for b in (-1, 0, 1):
            d = Matrix.from_rows([[0, 0, 0], [0, 0, 0], [a, b, 0]])
            from twistrb.liealg import derivation_check, nilpotency_index

            if derivation_check(heis, d).ok:
                nilpotency_index(d)
                r = reynolds_from_derivation(heis, d)
                assert reynolds_check(heis, r).ok
                found += 1
    assert found >= 3


def test_witt_report_values():
    rows = {(r.m, r.n): r for r in witt_report(10)}
    assert len(rows) == 66
    r12 = rows[(1, 2)]
    assert r12.lhs == r12.rhs == Fraction(-1, 6)
    assert r12.induced == Fraction(-2, 3)
    for m in range(11):
        diag = rows[(m, m)]
        assert diag.lhs == diag.rhs == diag.induced == 0
    assert all(r.ok for r in rows.values())


def test_r_matrix_trivial_cases(algebras):
    sl2 = algebras["sl2"]
    zero_psi = Cochain.zero(3, 3, 1)
    verdict, dual = r_matrix_check(sl2, Matrix.zero(3, 3), zero_psi)
    assert verdict.ok and dual.is_abelian()
    ab = abelian(3)
    any_r = Matrix.from_rows([[0, 1, 2], [-1, 0, 3], [-2, -3, 0]])
    verdict, dual = r_matrix_check(ab, any_r, Cochain.zero(3, 3, 1))
    assert verdict.ok and dual.is_abelian()


def test_r_matrix_untwisted_agrees_with_direct_route(rng, algebras):
    sl2 = algebras["sl2"]
    setup = trb_setup(sl2, coadjoint_rep(sl2), Cochain.zero(2, 3, 3))
    zero_psi = Cochain.zero(3, 3, 1)
    for _ in range(40):
        entries = [rng.randint(-2, 2) for _ in range(3)]
        a, b, c = entries
        r = Matrix.from_rows([[0, a, b], [-a, 0, c], [-b, -c, 0]])
        verdict, _ = r_matrix_check(sl2, r, zero_psi)
        assert verdict.ok == check_trb(setup, r).ok


def test_r_matrix_twisted_instance(algebras):
    """Abelian algebra, top-form twist: rank-2 r supported away from the twist."""
    ab = abelian(3)
    psi = Cochain.from_values(3, 3, 1, {(0, 1, 2): (1,)})
    r = Matrix.from_rows([[0, 1, 0], [-1, 0, 0], [0, 0, 0]])
    verdict, dual = r_matrix_check(ab, r, psi)
    assert verdict.ok
    # the twist makes the dual bracket a Heisenberg algebra
    assert dual.bracket_basis(0, 1) == (0, 0, 1)
    assert dual.bracket_basis(0, 2) == (0, 0, 0)
    lie_algebra_from_cochain(dual.bracket)


def test_r_matrix_rejections(algebras):
    sl2 = algebras["sl2"]
    with pytest.raises(NotSkew):
        r_matrix_check(sl2, Matrix.identity(3), Cochain.zero(3, 3, 1))
    heis = algebras["heisenberg"]
    # a scalar 3-cochain on sl2 that is not closed does not exist in top degree;
    # build a non-cocycle on a 4-dimensional algebra instead
    four = abelian(4)
    from twistrb.liealg import lie_algebra

    g4 = lie_algebra(4, {(0, 1): (0, 0, 1, 0)})  # heisenberg + line
    psi_bad = Cochain.from_values(3, 4, 1, {(0, 2, 3): (1,)})
    from twistrb.operators import is_scalar_cocycle

    if not is_scalar_cocycle(g4, psi_bad):
        with pytest.raises(NotCocycle):
            r_matrix_check(g4, Matrix.zero(4, 4), psi_bad)


def test_reynolds_setup_is_twisted_frame(algebras):
    sl2 = algebras["sl2"]
    setup = reynolds_setup(sl2)
    assert setup.cocycle.matrix == -sl2.bracket.matrix
    assert check_trb(setup, Matrix.identity(3)).ok
