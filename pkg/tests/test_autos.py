import numpy as np
import pytest

import oracles as O
from pcaut import pcp
from pcaut.autos import (
    GroupAutomorphism,
    adney_yen_check,
    all_automorphisms,
    basis_conjugating_automorphisms,
    central_automorphisms,
    class_preserving_automorphisms,
    classify,
    gamma2_trivial_automorphisms,
    homc_enumerate,
    inner_automorphisms,
)
from pcaut.corpus import desk_group
from pcaut.errors import PrecondFailed, SearchBudgetExceeded, WrongClass
from pcaut.group import direct_product

SMALL = {
    "D8": lambda: pcp.family_extraspecial(2, 1, "D"),
    "Q8": lambda: pcp.family_extraspecial(2, 1, "Q"),
    "C2xC4": lambda: pcp.family_abelian(2, [1, 2]),
    "D16": lambda: pcp.family_metacyclic(2, 3, 1, 7, 0),
    "Q16": lambda: pcp.family_metacyclic(2, 3, 1, 7, 4),
    "M16": lambda: pcp.family_metacyclic(2, 3, 1, 5, 0),
    "C2xD8": lambda: direct_product([pcp.family_abelian(2, [1]), pcp.family_extraspecial(2, 1, "D")]),
    "desk_16_2": lambda: desk_group("desk_16_2"),
}


def _rows(images):
    return {tuple(int(x) for x in row) for row in images}


@pytest.fixture(scope="module", params=sorted(SMALL))
def brute(request):
    G = SMALL[request.param]()
    return G, O.all_automorphisms(G)


def test_full_automorphism_group_matches_brute_force(brute):
    G, autos = brute
    assert _rows(all_automorphisms(G).images) == _rows(autos)


def test_class_preserving_matches_brute_filter(brute):
    G, autos = brute
    assert _rows(class_preserving_automorphisms(G).images) == _rows(O.class_preserving(G, autos))


def test_filtered_subgroups_match_brute_force(brute):
    G, autos = brute
    Z = O.center(G)
    cls = [O.conjugacy_class(G, x) for x in range(G.order)]
    D = O.lower_central(G)[1] if len(O.lower_central(G)) > 1 else frozenset({G.identity})
    out = [x for x in range(G.order) if x not in O.frattini(G, G.prime)]

    def drift(a, x):
        return O.mul(G, O.inverse(G, x), int(a[x]))

    want_cent = [a for a in autos if all(drift(a, x) in Z for x in range(G.order))]
    want_cb = [a for a in autos if all(int(a[x]) in cls[x] for x in out)]
    want_g2 = [a for a in autos if all(drift(a, x) in D for x in range(G.order))]
    assert _rows(central_automorphisms(G).images) == _rows(want_cent)
    assert _rows(basis_conjugating_automorphisms(G).images) == _rows(want_cb)
    assert _rows(gamma2_trivial_automorphisms(G).images) == _rows(want_g2)
    assert _rows(inner_automorphisms(G).images) == O.inner_images(G)


def test_sandwich_and_containments(brute):
    G, _ = brute
    inn = inner_automorphisms(G)
    autc = class_preserving_automorphisms(G)
    cb = basis_conjugating_automorphisms(G)
    assert inn.issubset(autc) and autc.issubset(cb)
    classes = G.class_sizes
    bound = int(np.prod([classes[x] for x in G.minimal_generators]))
    assert inn.order <= autc.order <= bound
    assert autc.verify_closure() and inn.verify_closure()


def test_flags_of_inner_automorphism(D8):
    g = 1
    alpha = GroupAutomorphism(D8, D8.conj[g])
    assert alpha.is_valid()
    f = alpha.flags
    assert f["inner"] and f["class_preserving"] and f["basis_conjugating"] and f["gamma2_trivial"]
    assert classify(D8, np.arange(8))["central"]
    beta = alpha.compose(alpha.inverse())
    assert np.array_equal(beta.image, np.arange(8))


def test_known_orders(D8, He27, K3211):
    assert inner_automorphisms(D8).order == 4
    assert class_preserving_automorphisms(D8).order == 4
    assert inner_automorphisms(K3211).order == 81
    assert gamma2_trivial_automorphisms(He27).order == 9
    assert central_automorphisms(D8).order == 4
    A = pcp.family_abelian(3, [1, 1])
    assert class_preserving_automorphisms(A).order == 1
    assert inner_automorphisms(A).order == 1


def test_unitriangular_class_preserving_group(UT9):
    A = class_preserving_automorphisms(UT9)
    assert A.order == 3**8
    assert A.is_abelian() and A.exponent_divides(3)
    assert inner_automorphisms(UT9).order == 81


def test_budget_is_enforced(UT9):
    with pytest.raises(SearchBudgetExceeded):
        class_preserving_automorphisms(UT9, budget=100)


def test_adney_yen(D8, He27, UT9):
    r = adney_yen_check(D8)
    assert r.autcent_order == r.hom_count == 4 and r.match
    assert adney_yen_check(He27).hom_count == 9 and adney_yen_check(He27).match
    ut = adney_yen_check(UT9)
    assert ut.hom_count == 3**8 and ut.match
    with pytest.raises(PrecondFailed):
        adney_yen_check(SMALL["C2xD8"]())


def test_homc_counts(D8, He27, UT9, K3211):
    assert homc_enumerate(D8).count == 4
    assert homc_enumerate(He27).count == 9
    assert homc_enumerate(UT9).count == 3**8
    with pytest.raises(WrongClass):
        homc_enumerate(K3211)


def test_two_generator_cyclic_gamma2_trivial_are_inner(K3211):
    g2t = gamma2_trivial_automorphisms(K3211)
    assert g2t.issubset(inner_automorphisms(K3211))
