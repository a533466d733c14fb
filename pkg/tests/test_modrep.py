import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modequiv.algebra import (
    Subalgebra,
    enumerate_automorphisms,
    enumerate_proper_subalgebras,
    make_free_univariate,
    make_rsz_algebra,
    make_semidihedral_algebra,
)
from modequiv.errors import (
    AlgebraMismatch,
    RelationViolated,
    UnsupportedAlgebraKind,
)
from modequiv.families import INFINITY, fixture, jordan, k_module
from modequiv.linalg import Mat, rand_invertible
from modequiv.modrep import (
    Verdict,
    conjugate,
    decompose,
    direct_sum,
    hom_space,
    is_indecomposable,
    is_isomorphic,
    module_validate,
    restrict,
    socle_dim,
    trivial_module,
    twist,
)


def e(n, i, j, p, v=1):
    return Mat.basis(n, i, j, p, value=v)


# -- validation ---------------------------------------------------------------


def test_validate_rdec_triple():
    alg = make_rsz_algebra(3, 2)
    m = module_validate(alg, [e(4, 3, 1, 2), e(4, 3, 2, 2), e(4, 3, 1, 2) + e(4, 4, 2, 2)])
    assert m.dim == 4


def test_validate_rejects_idempotent():
    alg = make_rsz_algebra(2, 2)
    with pytest.raises(RelationViolated):
        module_validate(alg, [e(2, 1, 1, 2), Mat.zeros(2, 2, 2)])


def test_validate_semidihedral_fixture():
    alg = make_semidihedral_algebra(2)
    m = module_validate(alg, [Mat.zeros(2, 2, 2), e(2, 2, 1, 2)])
    assert m.dim == 2


def test_trivial_module():
    alg = make_rsz_algebra(2, 2)
    t1 = trivial_module(alg, 1)
    assert t1.dim == 1 and all(a.is_zero() for a in t1.action)
    assert trivial_module(alg, 0).dim == 0
    assert trivial_module(make_rsz_algebra(3, 2), 4).dim == 4


def test_direct_sum_block_structure():
    alg = make_rsz_algebra(2, 2)
    t1 = trivial_module(alg, 1)
    assert direct_sum(t1, t1).action == trivial_module(alg, 2).action
    m1, m2 = fixture("tame3", 2)[1]
    s = direct_sum(m1, m2)
    assert s.dim == 6
    assert direct_sum(m1, trivial_module(alg, 0)).action == m1.action
    with pytest.raises(AlgebraMismatch):
        direct_sum(m1, trivial_module(make_rsz_algebra(3, 2), 1))


# -- hom spaces ---------------------------------------------------------------


def test_end_of_nilpotent_jordan_block():
    m = jordan(0, 2, 2)
    assert hom_space(m, m).dim == 2


def test_hom_trivial_modules():
    alg = make_rsz_algebra(2, 3)
    t1 = trivial_module(alg, 1)
    assert hom_space(t1, t1).dim == 1


def test_end_of_c2_is_lower_triangular():
    from modequiv.families import c2

    m = c2(1, 1, 3)
    end = hom_space(m, m)
    assert end.dim == 2
    for b in end.basis:
        assert b.a[0, 1] == 0
        assert b.a[0, 0] == b.a[1, 1]


def test_hom_basis_intertwines():
    m1, m2 = fixture("wild6", 2)[1]
    hom = hom_space(m1, m2)
    for phi in hom.basis:
        for a, b in zip(m1.action, m2.action):
            assert b @ phi == phi @ a


# -- isomorphism --------------------------------------------------------------


def test_wild_pair_not_isomorphic():
    m1, m2 = fixture("wild6", 2)[1]
    res = is_isomorphic(m1, m2)
    assert res.verdict.is_no
    assert res.note == "exhausted intertwiner space"


def test_conjugation_yields_yes_with_verified_witness():
    rng = np.random.default_rng(5)
    for p in (2, 3, 5):
        m = fixture("tame3", p)[1][0]
        pm = rand_invertible(m.dim, p, rng)
        res = is_isomorphic(m, conjugate(m, pm))
        assert res.verdict.is_yes
        phi = res.witness
        assert phi.is_invertible()
        for a, b in zip(m.action, conjugate(m, pm).action):
            assert b @ phi == phi @ a


def test_distinct_jordan_blocks_not_isomorphic():
    res = is_isomorphic(jordan(0, 2, 3), jordan(1, 2, 3))
    assert res.verdict.is_no


def test_dimension_mismatch_is_immediate_no():
    alg = make_rsz_algebra(2, 2)
    res = is_isomorphic(trivial_module(alg, 1), trivial_module(alg, 2))
    assert res.verdict.is_no and res.note == "dimension mismatch"


def test_is_isomorphic_requires_same_algebra():
    with pytest.raises(AlgebraMismatch):
        is_isomorphic(trivial_module(make_rsz_algebra(2, 2), 1),
                      trivial_module(make_rsz_algebra(3, 2), 1))


def test_undecided_when_budget_blocks_exhaustion():
    # non-isomorphic equal-dimensional pair: a unit budget forbids the
    # exhaustive sweep, and random sampling can only say yes or undecided
    m1, m2 = fixture("tame3", 5)[1]
    res = is_isomorphic(m1, m2, budget=1, seed=0)
    assert res.verdict is Verdict.UNDECIDED
    assert res.searched >= 10**4
    full = is_isomorphic(m1, m2)
    assert full.verdict.is_no and full.searched == 5**full.hom_dim


# -- indecomposability and decomposition --------------------------------------


def test_rdec_module_indecomposable():
    for p in (2, 3):
        m = fixture("rdec4", p)[1][0]
        assert is_indecomposable(m).verdict.is_yes


def test_trivial2_decomposes_with_witness():
    alg = make_rsz_algebra(2, 2)
    res = is_indecomposable(trivial_module(alg, 2))
    assert res.verdict.is_no
    idem = res.idempotent
    assert idem @ idem == idem
    assert not idem.is_zero() and idem != Mat.identity(2, 2)


def test_jordan_blocks_indecomposable():
    for p in (2, 3):
        for n in (1, 2, 3, 4):
            assert is_indecomposable(jordan(1, n, p)).verdict.is_yes


def test_k_modules_indecomposable_small():
    for p in (2, 3):
        for n in (1, 2):
            for lam in list(range(p)) + [INFINITY]:
                assert is_indecomposable(k_module(lam, n, p)).verdict.is_yes


def test_decompose_trivial():
    alg = make_rsz_algebra(2, 3)
    parts = decompose(trivial_module(alg, 3))
    assert [part.dim for part in parts] == [1, 1, 1]


def test_decompose_indecomposable_returns_self():
    m = fixture("rdec4", 2)[1][0]
    parts = decompose(m)
    assert len(parts) == 1 and parts[0].action == m.action


def test_decompose_tame_restrictions():
    alg, (m1, m2) = fixture("tame3", 2)
    for m in (m1, m2):
        for s in enumerate_proper_subalgebras(alg, "maximal"):
            parts = decompose(restrict(m, s))
            assert sorted(part.dim for part in parts) == [1, 2]


def test_decompose_direct_sum_reassembles():
    m1, m2 = fixture("tame3", 3)[1]
    s = direct_sum(m1, m2)
    parts = decompose(s)
    assert sum(part.dim for part in parts) == 6
    total = parts[0]
    for part in parts[1:]:
        total = direct_sum(total, part)
    assert is_isomorphic(s, total).verdict.is_yes


# -- socle --------------------------------------------------------------------


def test_socle_dims_of_tame_fixtures():
    for p in (2, 3, 5):
        m1, m2 = fixture("tame3", p)[1]
        assert socle_dim(m1) == 1
        assert socle_dim(m2) == 2


def test_socle_of_trivial():
    alg = make_rsz_algebra(2, 2)
    assert socle_dim(trivial_module(alg, 4)) == 4


def test_socle_additive_over_sums():
    m1, m2 = fixture("tame3", 2)[1]
    assert socle_dim(direct_sum(m1, m2)) == socle_dim(m1) + socle_dim(m2)


def test_socle_rejects_free_univariate():
    with pytest.raises(UnsupportedAlgebraKind):
        socle_dim(jordan(0, 2, 2))


# -- restriction --------------------------------------------------------------


def test_restrict_to_zero_forgets_everything():
    alg, (m1, _) = fixture("tame3", 2)
    w0 = next(s for s in enumerate_proper_subalgebras(alg, "all") if s.dim_w == 0)
    r = restrict(m1, w0)
    assert r.dim == 3 and r.action == ()


def test_restrict_to_span_x():
    alg, (m1, _) = fixture("tame3", 2)
    s = Subalgebra.from_basis(alg, Mat(2, [[1, 0]]))
    r = restrict(m1, s)
    assert r.action == (e(3, 3, 1, 2),)
    assert r.algebra.num_generators == 1


def test_restrict_coefficient_selection():
    alg, (m1, _) = fixture("wild6", 2)
    s = Subalgebra.from_basis(alg, Mat(2, [[0, 1, 0], [0, 0, 1]]))
    r = restrict(m1, s)
    assert r.action == (e(6, 4, 2, 2), e(6, 5, 3, 2))


def test_restrict_checks_parent():
    alg3 = make_rsz_algebra(3, 2)
    s = enumerate_proper_subalgebras(alg3, "maximal")[0]
    with pytest.raises(AlgebraMismatch):
        restrict(fixture("tame3", 2)[1][0], s)


# -- twisting -----------------------------------------------------------------


def test_twist_by_identity_is_identity():
    from modequiv.algebra import identity_automorphism

    for name in ("tame3", "wild6", "semidih2"):
        alg, mods = fixture(name, 2)
        f = identity_automorphism(alg)
        for m in mods:
            assert twist(m, f).action == m.action


def test_twist_jordan_matches_affine_parameter():
    for p in (3, 5):
        alg = make_free_univariate(p)
        for f in enumerate_automorphisms(alg):
            a, b = f.payload
            for lam in range(p):
                lhs = twist(jordan(lam, 3, p), f)
                assert lhs.action[0] == a * jordan(lam, 3, p).action[0] + b * Mat.identity(3, p)
                rhs = jordan((a * lam + b) % p, 3, p)
                assert is_isomorphic(lhs, rhs).verdict.is_yes


def test_twist_k_swap_exchanges_zero_and_infinity():
    alg = make_rsz_algebra(2, 2)
    swap = next(f for f in enumerate_automorphisms(alg) if f.payload == ((0, 1), (1, 0)))
    for n in (1, 2):
        assert is_isomorphic(k_module(0, n, 2), twist(k_module(INFINITY, n, 2), swap)).verdict.is_yes


def test_twist_group_action_law():
    from modequiv.algebra import compose

    alg, (m1, _) = fixture("tame3", 2)
    autos = enumerate_automorphisms(alg)
    for f in autos:
        for g in autos:
            assert twist(twist(m1, f), g).action == twist(m1, compose(f, g)).action


def test_twist_preserves_end_dim():
    alg, (m1, m2) = fixture("wild6", 2)
    d1 = hom_space(m1, m1).dim
    for f in enumerate_automorphisms(alg):
        assert hom_space(twist(m1, f), twist(m1, f)).dim == d1


def test_twist_table_algebra_and_validation():
    alg, (m1, m2) = fixture("semidih2", 2)
    for f in enumerate_automorphisms(alg):
        t = twist(m1, f)
        assert t.dim == 2


def test_twist_preserves_indecomposability_verdicts():
    alg, (m1, _) = fixture("tame3", 2)
    base = is_indecomposable(m1).verdict
    for f in enumerate_automorphisms(alg):
        assert is_indecomposable(twist(m1, f)).verdict == base
    alg2 = make_rsz_algebra(2, 2)
    dec = direct_sum(trivial_module(alg2, 1), k_module(0, 1, 2))
    for f in enumerate_automorphisms(alg2):
        assert is_indecomposable(twist(dec, f)).verdict.is_no


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 10**6), p=st.sampled_from([2, 3]))
def test_hom_additivity_random(seed, p):
    rng = np.random.default_rng(seed)
    mods = fixture("tame3", p)[1] + [
        k_module(0, 1, p),
        trivial_module(make_rsz_algebra(2, p), 2),
    ]
    m1 = mods[int(rng.integers(0, len(mods)))]
    m2 = mods[int(rng.integers(0, len(mods)))]
    target = mods[int(rng.integers(0, len(mods)))]
    assert (
        hom_space(direct_sum(m1, m2), target).dim
        == hom_space(m1, target).dim + hom_space(m2, target).dim
    )


def test_restriction_basis_independence():
    rng = np.random.default_rng(17)
    alg, (m1, m2) = fixture("wild6", 2)
    subs = [s for s in enumerate_proper_subalgebras(alg, "all") if s.dim_w > 0]
    for _ in range(30):
        s = subs[int(rng.integers(0, len(subs)))]
        change = rand_invertible(s.dim_w, 2, rng)
        rebased = Subalgebra.from_basis(alg, change @ s.w_basis)
        v1 = is_isomorphic(restrict(m1, s), restrict(m2, s)).verdict
        v2 = is_isomorphic(restrict(m1, rebased), restrict(m2, rebased)).verdict
        assert v1 == v2
