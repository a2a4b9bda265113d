import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles as O
from pcaut import pcp
from pcaut.errors import (
    IncompatibleIdentification,
    InvalidGroupTable,
    NotASubgroup,
    NotCentral,
    NotNormal,
    SizeCapExceeded,
)
from pcaut.group import (
    FiniteGroup,
    SubgroupSet,
    abelian_group,
    central_product,
    centralizer,
    commutator_set,
    conjugacy_classes,
    cyclic_group,
    direct_product,
    frattini_subgroup,
    lower_central_series,
    normal_closure,
    normal_subgroups,
    quotient_group,
    relabel,
    upper_central_series,
)

SMALL = [
    ("D8", lambda: pcp.family_extraspecial(2, 1, "D")),
    ("Q8", lambda: pcp.family_extraspecial(2, 1, "Q")),
    ("He27", lambda: pcp.family_extraspecial(3, 1, "p")),
    ("M27", lambda: pcp.family_extraspecial(3, 1, "p2")),
    ("D16", lambda: pcp.family_metacyclic(2, 3, 1, 7, 0)),
    ("SD16", lambda: pcp.family_metacyclic(2, 3, 1, 3, 0)),
    ("C2xC4", lambda: pcp.family_abelian(2, [1, 2])),
    ("Y32", lambda: pcp.family_central_product_Y(2, 1, 2)),
]


def _set(S):
    return frozenset(S.members)


def test_table_validation_rejects_bad_tables():
    with pytest.raises(InvalidGroupTable):
        FiniteGroup([[0, 1], [0, 1]], [1])
    with pytest.raises(InvalidGroupTable):
        FiniteGroup(np.zeros((0, 0)), [])
    # Latin square with identity but not associative (order 5 loop)
    loop = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(InvalidGroupTable) as exc:
        FiniteGroup(loop, [1, 2])
    assert exc.value.details["check"] == "associativity"


def test_cap_is_enforced():
    with pytest.raises(SizeCapExceeded):
        cyclic_group(10).__class__(np.add.outer(np.arange(10), np.arange(10)) % 10, [1], cap=8)


@pytest.mark.parametrize("name,build", SMALL)
def test_invariants_match_brute_force(name, build):
    G = build()
    assert sorted(G.class_sizes.tolist()) == sorted(O.class_sizes(G))
    assert _set(G.center) == O.center(G)
    assert [_set(S) for S in lower_central_series(G)] == O.lower_central(G)
    assert [_set(S) for S in upper_central_series(G)] == O.upper_central(G)
    assert _set(frattini_subgroup(G)) == O.frattini(G, G.prime)
    assert G.rank == O.rank(G, G.prime)
    for x in range(G.order):
        assert commutator_set(G, x) == O.commutator_set(G, x)
        assert G.element_orders[x] == O.element_order(G, x)


@pytest.mark.parametrize("name,build", SMALL)
def test_class_equation(name, build):
    G = build()
    classes = conjugacy_classes(G)
    assert sum(c.size for c in classes) == G.order
    assert all(G.order % c.size == 0 for c in classes)


@pytest.mark.parametrize("name,build", SMALL)
def test_derived_subgroup_is_generated_by_commutator_sets(name, build):
    G = build()
    union = set().union(*(commutator_set(G, x) for x in range(G.order)))
    assert _set(G.derived) == O.closure(G, union)


@pytest.mark.parametrize("name,build", SMALL)
def test_frattini_facts(name, build):
    G = build()
    p = G.prime
    F = G.frattini
    assert G.derived <= F
    Q, _ = quotient_group(G, F)
    assert Q.is_abelian and set(Q.element_orders.tolist()) <= {1, p}
    assert p ** G.rank == Q.order


def test_dihedral_examples(D8):
    sizes = sorted(O.class_sizes(D8))
    assert sorted(c.size for c in conjugacy_classes(D8)) == [1, 1, 2, 2, 2] == sorted(set_sizes(D8))
    assert sizes.count(1) == 2
    r = next(x for x in range(8) if D8.element_orders[x] == 4)
    r2 = D8.power(r, 2)
    assert commutator_set(D8, r) == frozenset({D8.identity, r2})
    assert centralizer(D8, [r]).order == 4
    assert [S.order for S in upper_central_series(D8)] == [1, 2, 8]
    assert _set(D8.frattini) == frozenset({D8.identity, r2})
    Q, _ = quotient_group(D8, D8.center)
    assert Q.order == 4 and Q.is_abelian and max(Q.element_orders) == 2


def set_sizes(G):
    return [len(c) for c in {O.conjugacy_class(G, x) for x in range(G.order)}]


def test_quaternion_classes(Q8):
    assert sorted(c.size for c in conjugacy_classes(Q8)) == [1, 1, 2, 2, 2]


def test_abelian_examples():
    A = abelian_group([2, 4])
    assert all(c.size == 1 for c in conjugacy_classes(A))
    assert all(commutator_set(A, x) == frozenset({A.identity}) for x in range(A.order))
    assert [S.order for S in lower_central_series(A)] == [8, 1]
    assert A.nilpotency_class == 1
    E = abelian_group([3, 3, 3])
    assert E.frattini.order == 1 and E.rank == 3


def test_extraspecial_27_series(He27):
    assert [S.order for S in lower_central_series(He27)] == [27, 3, 1]
    assert lower_central_series(He27)[1] == He27.center


def test_unitriangular_frattini(UT9):
    assert UT9.order // UT9.frattini.order == 3**4
    assert UT9.rank == 4


def test_metacyclic_K_class(K3211):
    assert K3211.nilpotency_class >= 3


def test_centralizer_of_identity(D8):
    assert centralizer(D8, [D8.identity]).order == D8.order


def test_subgroup_checks(D8):
    with pytest.raises(NotASubgroup):
        SubgroupSet.checked(D8, [D8.identity, 1, 2])
    r = next(x for x in range(8) if D8.element_orders[x] == 4)
    s = next(x for x in range(8) if D8.element_orders[x] == 2 and x not in D8.center)
    with pytest.raises(NotNormal):
        quotient_group(D8, D8.subgroup([s]))
    assert D8.subgroup([r]).is_normal()


def test_quotient_by_trivial_is_a_copy(D8):
    Q, proj = quotient_group(D8, D8.trivial)
    assert Q.order == 8 and O.find_isomorphism(D8, Q) is not None


@pytest.mark.parametrize("name,build", SMALL)
def test_projection_is_a_homomorphism(name, build):
    G = build()
    for N in normal_subgroups(G):
        Q, proj = quotient_group(G, N)
        assert np.array_equal(proj[G.mul], Q.mul[proj[:, None], proj[None, :]])


def test_quotient_by_gamma3_has_class_two(K3211):
    Q, _ = quotient_group(K3211, K3211.gamma(3))
    assert Q.nilpotency_class == 2


def test_normal_subgroups_of_D8_and_Q8(D8, Q8):
    assert [N.order for N in normal_subgroups(D8)] == [1, 2, 4, 4, 4, 8]
    assert [N.order for N in normal_subgroups(Q8)] == [1, 2, 4, 4, 4, 8]


@pytest.mark.parametrize("name,build", SMALL)
def test_normal_subgroups_match_brute_force(name, build):
    G = build()
    got = {_set(N) for N in normal_subgroups(G)}
    # every normal subgroup is the normal closure of a set of classes; enumerate subsets of classes
    classes = list({O.conjugacy_class(G, x) for x in range(G.order)})
    want = set()
    for mask in range(1 << len(classes)) if len(classes) <= 14 else []:
        elems = set().union(*(classes[k] for k in range(len(classes)) if mask >> k & 1)) or {G.identity}
        S = O.closure(G, elems)
        want.add(S)
    if want:
        assert got == want
    for N in normal_subgroups(G):
        assert N.is_normal()
    assert normal_closure(G, [G.identity]).order == 1


def test_direct_product_matches_independent_product(D8):
    C2 = cyclic_group(2)
    P = direct_product([C2, D8])
    ref = O.direct_product_tables(C2, D8)
    assert O.find_isomorphism(P, ref) is not None


def test_central_product_of_two_dihedral_groups(D8):
    z = int(D8.center.members[1])
    Y = central_product([D8, D8], [z, z])
    assert Y.order == 32
    assert Y.derived.order == 2 and Y.center.order == 2
    assert Y.order // Y.center.order == 2**4
    assert central_product([D8], [z]) is D8


def test_central_product_errors(D8, He27):
    s = next(x for x in range(8) if x not in D8.center and D8.element_orders[x] == 2)
    with pytest.raises(NotCentral):
        central_product([D8, D8], [s, s])
    z = int(D8.center.members[1])
    z3 = int(He27.center.members[1])
    with pytest.raises(IncompatibleIdentification):
        central_product([D8, He27], [z, z3])
    with pytest.raises(IncompatibleIdentification):
        central_product([D8, D8], [z])


@given(st.integers(0, 7), st.randoms(use_true_random=False))
def test_relabel_preserves_invariants(k, rnd):
    G = SMALL[k][1]()
    perm = list(range(G.order))
    rnd.shuffle(perm)
    H = relabel(G, perm)
    H.validate()
    assert sorted(H.class_sizes.tolist()) == sorted(G.class_sizes.tolist())
    assert [S.order for S in H.lower_central] == [S.order for S in G.lower_central]
    assert H.rank == G.rank and H.frattini.order == G.frattini.order
    assert sorted(H.element_orders.tolist()) == sorted(G.element_orders.tolist())


@given(st.lists(st.sampled_from([2, 4, 8]), min_size=1, max_size=3))
def test_abelian_products_are_valid_tables(orders):
    A = abelian_group(orders)
    A.validate()
    assert A.order == int(np.prod(orders)) and A.is_abelian
    assert A.center.order == A.order
