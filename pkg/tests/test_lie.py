import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles as O
from pcaut import pcp
from pcaut.corpus import desk_group
from pcaut.errors import ConditionsNotMet, NotStronglySkew, OddDimension
from pcaut.fields import GF, is_irreducible, smallest_irreducible
from pcaut.group import normal_subgroups, quotient_group
from pcaut.lie import (
    build_graded_lie_ring,
    centralizer_lemma_checks,
    macdonald_analysis,
    mod_p_algebra,
    structure_matrices,
)
from pcaut.linalg import FpMatrix, det, nullspace, pfaffian, rank


@st.composite
def strongly_skew(draw, sizes=(2, 4, 6, 8), primes=(2, 3, 5)):
    n = draw(st.sampled_from(sizes))
    p = draw(st.sampled_from(primes))
    upper = draw(st.lists(st.integers(0, p - 1), min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2))
    a = np.zeros((n, n), dtype=np.int64)
    a[np.triu_indices(n, 1)] = upper
    return (a - a.T) % p, p


def _k_quotient(p, r, s, t):
    K = pcp.family_metacyclic_K(p, r, s, t)
    g3 = K.gamma(3)
    N = next(N for N in normal_subgroups(K) if N <= g3 and N.order * p == g3.order)
    Q, _ = quotient_group(K, N)
    return Q


# ------------------------------------------------------------ linear algebra

def test_small_pfaffians():
    for p in (2, 3, 5):
        J = np.array([[0, 1], [p - 1, 0]])
        assert pfaffian(J, p) == 1
        assert pfaffian(np.kron(np.eye(2, dtype=int), J), p) == 1


def test_pfaffian_errors():
    with pytest.raises(NotStronglySkew):
        pfaffian(np.array([[1, 1], [1, 0]]), 3)
    with pytest.raises(OddDimension):
        pfaffian(np.zeros((3, 3), dtype=int), 3)


@given(strongly_skew())
def test_pfaffian_squares_to_determinant(data):
    a, p = data
    pf = pfaffian(a, p)
    assert pf == O.pfaffian_by_matchings(a, p)
    assert (pf * pf) % p == det(a, p) == O.det_mod_p(a, p)


@given(strongly_skew(sizes=(3, 5, 7)))
def test_odd_strongly_skew_is_singular(data):
    a, p = data
    assert det(a, p) == 0 == O.det_mod_p(a, p)


@given(st.sampled_from([2, 3, 5]), st.integers(1, 5), st.integers(1, 5), st.randoms(use_true_random=False))
def test_rank_nullity(p, r, c, rnd):
    a = np.array([[rnd.randrange(p) for _ in range(c)] for _ in range(r)])
    ns = nullspace(a, p)
    assert rank(a, p) + len(ns) == c
    assert not ((a @ ns.T) % p).any() if len(ns) else True


def test_fp_matrix_wrapper():
    M = FpMatrix(3, [[0, 1], [2, 0]])
    assert M.is_strongly_skew() and M.pfaffian() == 1 and M.det() == 1 and M.rank() == 2
    assert (M + M.scale(2)) == FpMatrix(3, [[0, 0], [0, 0]])


def test_field_tables():
    assert smallest_irreducible(3, 2) == [1, 0, 1]
    assert is_irreducible([1, 1, 1], 2) and not is_irreducible([1, 0, 1], 2)
    F = GF(3, 2)
    nonzero = [x for x in F.elements() if any(x)]
    for x in nonzero:
        assert sum(1 for y in nonzero if F.mul(x, y) == (1, 0)) == 1


# ------------------------------------------------------------ Lie ring

def test_abelian_ring_has_one_component():
    L = build_graded_lie_ring(pcp.family_abelian(2, [1, 2]))
    assert L.nilpotency_class == 1
    assert L.component(1).order == 8
    Lbar = mod_p_algebra(L)
    assert structure_matrices(Lbar) == []


def test_extraspecial_ring(He27):
    L = build_graded_lie_ring(He27)
    assert L.invariants(1).invariant_factors == (3, 3)
    assert L.invariants(2).invariant_factors == (3,)
    tab = L.bracket_table(1, 1)
    assert len(np.unique(tab)) == 3
    Lbar = mod_p_algebra(L)
    assert (Lbar.m, Lbar.n) == (2, 1)
    (A,) = structure_matrices(Lbar)
    assert A.is_strongly_skew() and A.rank() == 2
    assert A.entries[0, 1] in (1, 2) and (A.entries[0, 1] + A.entries[1, 0]) % 3 == 0


def test_nonmetacyclic_ring(NM3):
    L = build_graded_lie_ring(NM3)
    assert L.nilpotency_class == 3
    assert len(np.unique(L.bracket_table(2, 1))) == L.component(3).order > 1
    Lbar = mod_p_algebra(L)
    assert Lbar.m == NM3.rank == 2
    assert Lbar.dim(3) == 1


CHECK_GROUPS = [
    ("He27", lambda: pcp.family_extraspecial(3, 1, "p")),
    ("D8", lambda: pcp.family_extraspecial(2, 1, "D")),
    ("K3211", lambda: pcp.family_metacyclic_K(3, 2, 1, 1)),
    ("NM3", lambda: pcp.family_nonmetacyclic_example(3)),
    ("D16", lambda: pcp.family_metacyclic(2, 3, 1, 7, 0)),
    ("desk_32_4", lambda: desk_group("desk_32_4")),
    ("desk_128_8", lambda: desk_group("desk_128_8")),
    ("K2312", lambda: pcp.family_metacyclic_K(2, 3, 1, 2)),
]


@pytest.mark.parametrize("name,build", CHECK_GROUPS)
def test_ring_and_algebra_axioms(name, build):
    G = build()
    L = build_graded_lie_ring(G)
    assert all(L.verify().values())
    Lbar = mod_p_algebra(L)
    assert all(Lbar.verify().values())
    assert Lbar.m == G.rank
    for A in structure_matrices(Lbar):
        assert A.is_strongly_skew()


@pytest.mark.parametrize("name,build", CHECK_GROUPS)
def test_bracket_matches_group_commutators(name, build):
    # brackets of degree-i and degree-j elements land on the class of the group commutator
    G = build()
    L = build_graded_lie_ring(G)
    for i in range(1, L.nilpotency_class + 1):
        for j in range(1, L.nilpotency_class + 1 - i):
            A, B, C = L.component(i), L.component(j), L.component(i + j)
            Cset = set(C.lower.members)
            for x in A.upper.members[:: max(1, A.upper.order // 16)]:
                for y in B.upper.members[:: max(1, B.upper.order // 16)]:
                    c = O.comm(G, x, y)
                    rep = int(C.reps[L.bracket_table(i, j)[A.index[x], B.index[y]]])
                    # c and rep lie in the same coset of the lower term
                    assert O.mul(G, O.inverse(G, rep), c) in Cset


def test_macdonald_on_qualifying_groups(NM3):
    for G in (NM3, _k_quotient(3, 3, 1, 1), pcp.family_metacyclic_K(3, 2, 1, 1)):
        rep = macdonald_analysis(mod_p_algebra(build_graded_lie_ring(G)))
        assert rep.conditions_hold and rep.status == "ok"
        assert rep.m == 2 * rep.n and rep.n == 1
        assert rep.all_conclusions_hold and rep.consistent()
        assert rep.pencil_exhaustive
        lem = centralizer_lemma_checks(mod_p_algebra(build_graded_lie_ring(G)))
        assert lem.all_hold


def test_macdonald_conditions_fail_at_class_two(He27):
    Lbar = mod_p_algebra(build_graded_lie_ring(He27))
    rep = macdonald_analysis(Lbar)
    assert not rep.conditions_hold and rep.status == ConditionsNotMet.code
    assert rep.dim_l3 == 0
    with pytest.raises(ConditionsNotMet):
        centralizer_lemma_checks(Lbar)
