import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles as O
from pcaut import pcp
from pcaut.errors import (
    DuplicateRelation,
    EvenPrime,
    ExponentOutOfRange,
    InconsistentPresentation,
    ParameterViolation,
    PresentationSyntaxError,
    SizeCapExceeded,
    UnknownGenerator,
)

D8_TEXT = """\
# dihedral group of order 8
p 2
gens r s r2
ord r 2
ord s 2
ord r2 2
pow r = r2
comm [s,r] = r2
"""

# (constructor, params, closed-form order)
FAMILY_CASES = [
    (pcp.metacyclic_K_presentation, dict(p=3, r=2, s=1, t=1), 3**5),
    (pcp.metacyclic_K_presentation, dict(p=3, r=2, s=0, t=1), 3**5),
    (pcp.metacyclic_K_presentation, dict(p=2, r=3, s=1, t=2), 2**8),
    (pcp.two_generator_G_presentation, dict(p=3, m=2, n=2, i=0, j=0, k=0, r=2, s=1), 3**6),
    (pcp.nonmetacyclic_presentation, dict(p=3), 3**6),
    (pcp.unitriangular_presentation, dict(p=3, m=1), 3**3),
    (pcp.unitriangular_presentation, dict(p=3, m=2), 3**6),
    (pcp.extraspecial_presentation, dict(p=2, n=1, kind="D"), 2**3),
    (pcp.extraspecial_presentation, dict(p=2, n=2, kind="Q"), 2**5),
    (pcp.extraspecial_presentation, dict(p=3, n=1, kind="p2"), 3**3),
    (pcp.heisenberg_presentation, dict(p=2, e=2), 2**6),
    (pcp.metacyclic_presentation, dict(p=2, a=3, b=1, k=5, c=0), 2**4),
    (pcp.abelian_presentation, dict(p=3, exponents=[1, 2]), 3**3),
    (pcp.cyclic_presentation, dict(p=2, e=3), 2**3),
]


def test_single_generator_is_cyclic():
    G = pcp.realize(pcp.parse_presentation("p 2\ngens a\nord a 2\n"))
    assert G.order == 2 and G.is_abelian
    G = pcp.realize(pcp.PcPresentation.build(5, ["a"], [5]))
    assert G.order == 5 and G.element_orders.max() == 5


def test_dihedral_from_dsl():
    pres = pcp.parse_presentation(D8_TEXT)
    G = pcp.realize(pres)
    assert G.order == 8
    assert len({O.conjugacy_class(G, x) for x in range(8)}) == 5
    assert O.find_isomorphism(G, O.dihedral_perm(4)) is not None


def test_constructors_match_independent_models(D8, Q8, He27):
    assert O.find_isomorphism(D8, O.dihedral_perm(4)) is not None
    assert O.find_isomorphism(Q8, O.quaternion8()) is not None
    assert O.find_isomorphism(He27, O.heisenberg_mod(3)) is not None
    assert O.find_isomorphism(pcp.family_unitriangular(3, 1), O.heisenberg_mod(3)) is not None
    assert O.find_isomorphism(pcp.family_metacyclic(2, 3, 1, 7, 0), O.dihedral_perm(8)) is not None


def test_unitriangular_matches_matrix_model_invariants(UT9):
    ref = O.unitriangular_gf9()
    assert ref.order == UT9.order == 729
    assert sorted(UT9.class_sizes.tolist()) == sorted(ref.class_sizes.tolist())
    assert sorted(UT9.element_orders.tolist()) == sorted(ref.element_orders.tolist())
    assert UT9.center.order == ref.center.order == 9
    assert UT9.derived.order == ref.derived.order == 9
    assert UT9.rank == ref.rank == 4


@pytest.mark.parametrize("build,params,order", FAMILY_CASES)
def test_family_orders(build, params, order):
    pres = build(**params)
    assert pres.order == order
    G = pcp.realize(pres)
    assert G.order == order
    G.validate()


@pytest.mark.parametrize("build,params,order", FAMILY_CASES)
def test_render_round_trip(build, params, order):
    pres = build(**params)
    text = pcp.render(pres)
    assert pcp.parse_presentation(text) == pres
    assert text.endswith("\n") and not any(line != line.rstrip() for line in text.splitlines())
    assert "  " not in text


@pytest.mark.parametrize("build,params,order", FAMILY_CASES[:6])
def test_realize_is_deterministic(build, params, order):
    a, b = pcp.realize(build(**params)), pcp.realize(build(**params))
    assert np.array_equal(a.mul, b.mul) and a.labels == b.labels


def test_metacyclic_K_examples(K3211):
    assert K3211.order == 243
    assert K3211.order // K3211.center.order == 81
    assert K3211.derived.order == 9
    with pytest.raises(ParameterViolation):
        pcp.metacyclic_K_presentation(2, 2, 0, 1)
    with pytest.raises(ParameterViolation):
        pcp.metacyclic_K_presentation(3, 2, 2, 1)


def test_nonmetacyclic_example(NM3):
    assert NM3.order == 729 and NM3.nilpotency_class == 3
    g2, Z = NM3.derived, NM3.center
    assert g2.order == Z.order == 9 and g2.is_cyclic() and Z.is_cyclic() and g2 != Z
    assert NM3.gamma(3).order == 3
    with pytest.raises(EvenPrime):
        pcp.nonmetacyclic_presentation(2)


def test_central_product_family():
    Y = pcp.family_central_product_Y(2, 1, 2)
    assert Y.order == 32 and Y.rank == 4
    assert Y.order // Y.center.order == 2**4
    with pytest.raises(SizeCapExceeded):
        pcp.family_central_product_Y(3, 1, 4)


def test_presentation_from_group_round_trip(D8, K3211):
    for G in (D8, K3211, pcp.family_central_product_Y(2, 1, 2)):
        pres = pcp.presentation_from_group(G)
        H = pcp.realize(pres)
        assert H.order == G.order
        assert sorted(H.class_sizes.tolist()) == sorted(G.class_sizes.tolist())
        assert [S.order for S in H.lower_central] == [S.order for S in G.lower_central]
        assert pcp.parse_presentation(pcp.render(pres)) == pres
    assert O.find_isomorphism(D8, pcp.realize(pcp.presentation_from_group(D8))) is not None


def test_inconsistent_presentation_is_reported():
    # a^2 = b with b central of order 2 but [b, a] = c contradicts b being a power of a
    text = "p 2\ngens a b c\nord a 2\nord b 2\nord c 2\npow a = b\ncomm [b,a] = c\n"
    with pytest.raises(InconsistentPresentation):
        pcp.realize(pcp.parse_presentation(text))


def test_two_generator_constraints():
    with pytest.raises(ParameterViolation):
        pcp.two_generator_G_presentation(3, 0, 2, 0, 0, 0, 2, 1)
    with pytest.raises(ParameterViolation):
        pcp.two_generator_G_presentation(3, 2, 2, 0, 0, 0, 2, 2)


def test_cap_on_realize():
    with pytest.raises(SizeCapExceeded):
        pcp.realize(pcp.unitriangular_presentation(3, 2), cap=100)


@pytest.mark.parametrize(
    "text,err,line,col",
    [
        ("p 4\ngens a\nord a 2\n", PresentationSyntaxError, 1, 3),
        ("q 2\ngens a\n", PresentationSyntaxError, 1, 1),
        ("p 2\ngens a b\nord a 2\nord b 2\ncomm [b,a] = c\n", UnknownGenerator, 5, 14),
        ("p 2\ngens a b\nord a 2\nord b 2\npow a = b^2\n", ExponentOutOfRange, 5, 9),
        ("p 2\ngens a b\nord a 2\nord a 2\nord b 2\n", DuplicateRelation, 4, 1),
        ("p 2\ngens a b\nord a 2\nord b 2\ncomm [a,b] = 1\n", PresentationSyntaxError, 5, 7),
        ("p 2\ngens a b\nord a 2\nord b 3\n", PresentationSyntaxError, 4, 7),
        ("p 2\ngens a b\nord a 2\n", PresentationSyntaxError, 2, 1),
        ("p 2\ngens a b\nord a 2\nord b 2\nfoo a\n", PresentationSyntaxError, 5, 1),
        ("p 2\ngens a b c\nord a 2\nord b 2\nord c 2\npow a = c*b\n", PresentationSyntaxError, 6, 11),
    ],
)
def test_parse_errors_carry_positions(text, err, line, col):
    with pytest.raises(err) as exc:
        pcp.parse_presentation(text)
    assert exc.value.line == line
    assert exc.value.column == col
    assert exc.value.to_dict()["error"] == err.code


def test_comments_and_blank_lines_are_ignored():
    text = "\n# header\np 2  # prime\n\ngens a\nord a 2^1\n"
    assert pcp.realize(pcp.parse_presentation(text)).order == 2


@given(
    st.integers(1, 3).flatmap(
        lambda n: st.tuples(
            st.just(n),
            st.lists(st.lists(st.integers(0, 1), min_size=3, max_size=3), min_size=n, max_size=n),
        )
    )
)
def test_random_abelian_power_chains_round_trip(data):
    # power relations a_i^2 = product of later generators with random exponents
    n, rows = data
    names = [f"g{k}" for k in range(n + 2)]
    N = n + 2
    powers = {}
    for i, row in enumerate(rows):
        w = [0] * N
        for k, e in enumerate(row):
            if i + 1 + k < N:
                w[i + 1 + k] = e
        powers[i] = tuple(w)
    pres = pcp.PcPresentation.build(2, names, [2] * N, powers)
    assert pcp.parse_presentation(pcp.render(pres)) == pres
    G = pcp.realize(pres)
    assert G.order == 2**N and G.is_abelian
