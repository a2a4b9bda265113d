"""Family registry, the default corpus, and the per-group suite runner."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from . import pcp
from .autos import DEFAULT_BUDGET
from .errors import ParameterViolation
from .group import DEFAULT_CAP, FiniteGroup, direct_product, normal_subgroups, quotient_group
from .verdicts import (
    SuiteReport,
    central_quotient_extremal,
    is_camina_type,
    is_isoclinic,
    is_stem,
    satisfies_hypothesis_a,
    theorem_a_equivalence,
    theorem_b_suite,
    theorem_cd_suite,
)


@dataclass(frozen=True)
class Family:
    name: str
    params: tuple[str, ...]
    constraints: str
    realize: Callable[..., FiniteGroup]
    presentation: Callable[..., pcp.PcPresentation] | None = None

    def build(self, cap: int | None = DEFAULT_CAP, **params) -> FiniteGroup:
        return self.realize(**self._args(params), cap=cap)

    def build_presentation(self, cap: int | None = DEFAULT_CAP, **params) -> pcp.PcPresentation:
        args = self._args(params)
        if self.presentation is not None:
            return self.presentation(**args)
        return pcp.presentation_from_group(self.realize(**args, cap=cap))

    def _args(self, params: dict) -> dict:
        missing = [p for p in self.params if params.get(p) is None]
        if missing:
            raise ParameterViolation(f"family {self.name} needs parameters: {', '.join(missing)}")
        return {p: params[p] for p in self.params}

    def describe(self) -> dict:
        return {"name": self.name, "params": list(self.params), "constraints": self.constraints}


FAMILIES: dict[str, Family] = {
    f.name: f
    for f in [
        Family(
            "metacyclic_K", ("p", "r", "s", "t"),
            "1 ≤ t < r, 0 ≤ s ≤ t, t ≥ 2 if p = 2",
            pcp.family_metacyclic_K, pcp.metacyclic_K_presentation,
        ),
        Family(
            "two_generator_G", ("p", "m", "n", "i", "j", "k", "r", "s"),
            "1 ≤ s < r, s ≥ 2 if p = 2, m ≥ 1, n ≥ 1; consistency checked on realization",
            pcp.family_two_generator_G, pcp.two_generator_G_presentation,
        ),
        Family(
            "nonmetacyclic", ("p",), "p odd",
            pcp.family_nonmetacyclic_example, pcp.nonmetacyclic_presentation,
        ),
        Family(
            "unitriangular", ("p", "m"), "p odd, m ≥ 1, p^(3m) ≤ cap",
            pcp.family_unitriangular, pcp.unitriangular_presentation,
        ),
        Family(
            "extraspecial", ("p", "n", "kind"),
            "n ≥ 1; kind D or Q for p = 2, p or p2 for odd p; p^(2n+1) ≤ cap",
            pcp.family_extraspecial, pcp.extraspecial_presentation,
        ),
        Family(
            "heisenberg", ("p", "e"), "e ≥ 1; order p^(3e)",
            pcp.family_heisenberg, pcp.heisenberg_presentation,
        ),
        Family(
            "central_product_Y", ("p", "e", "m"),
            "e ≥ 1, m ≥ 1; m copies of heisenberg(p, e) over their common centre",
            pcp.family_central_product_Y,
        ),
        Family(
            "metacyclic", ("p", "a", "b", "k", "c"),
            "x^(p^a) = 1, y^(p^b) = x^c, x^y = x^k; consistency checked on realization",
            pcp.family_metacyclic, pcp.metacyclic_presentation,
        ),
        Family(
            "abelian", ("p", "exponents"), "exponents ≥ 1; direct product of cyclic groups of order p^e",
            pcp.family_abelian, pcp.abelian_presentation,
        ),
    ]
}


def get_family(name: str) -> Family:
    try:
        return FAMILIES[name]
    except KeyError:
        raise ParameterViolation(f"unknown family {name!r}; known: {', '.join(FAMILIES)}") from None


# Two-generator 2-groups with elementary abelian commutator subgroup of order 2, 4, 8.
DESK_PRESENTATIONS: dict[str, str] = {
    "desk_16_2": """\
p 2
gens a b c d
ord a 2
ord b 2
ord c 2
ord d 2
pow b = d
comm [b,a] = c*d
""",
    "desk_32_2": """\
p 2
gens a b a2 c d
ord a 2
ord b 2
ord a2 2
ord c 2
ord d 2
pow a = a2
pow a2 = d
comm [b,a] = c
""",
    "desk_32_4": """\
p 2
gens a b a2 c d
ord a 2
ord b 2
ord a2 2
ord c 2
ord d 2
pow a = a2
comm [b,a] = c
comm [a2,b] = d
comm [c,a] = d
""",
    "desk_128_8": """\
p 2
gens a b a2 b2 c d e
ord a 2
ord b 2
ord a2 2
ord b2 2
ord c 2
ord d 2
ord e 2
pow a = a2
pow b = b2
comm [b,a] = c
comm [a2,b] = d
comm [b2,a] = e
comm [c,a] = d
comm [c,b] = e
""",
}


def desk_group(name: str, cap: int | None = DEFAULT_CAP) -> FiniteGroup:
    return pcp.realize(pcp.parse_presentation(DESK_PRESENTATIONS[name]), name=name, cap=cap)


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    build: Callable[[], FiniteGroup] = field(repr=False)
    tags: tuple[str, ...] = ()


def _fam(name: str, **params) -> Callable[[], FiniteGroup]:
    return lambda: FAMILIES[name].build(**params)


def _quotient_by(base: Callable[[], FiniteGroup], pick: Callable[[FiniteGroup], list], k: int, name: str):
    def build():
        G = base()
        Q, _ = quotient_group(G, pick(G)[k], name=name)
        Q.validate()
        return Q

    return build


def _central_order_p(G: FiniteGroup):
    return [N for N in normal_subgroups(G) if N.order == G.prime and N <= G.center]


def _gamma3_maximal(G: FiniteGroup):
    g3 = G.gamma(3)
    return [N for N in normal_subgroups(G) if N <= g3 and N.order * G.prime == g3.order]


def _c2_times_d8() -> FiniteGroup:
    G = direct_product([pcp.family_abelian(2, [1]), pcp.family_extraspecial(2, 1, "D")], name="C2xD8")
    G.validate()
    return G


def default_corpus() -> list[CorpusEntry]:
    e = CorpusEntry
    out = [
        e("C2xC2", _fam("abelian", p=2, exponents=[1, 1]), ("abelian",)),
        e("C2xC4", _fam("abelian", p=2, exponents=[1, 2]), ("abelian",)),
        e("C8", _fam("abelian", p=2, exponents=[3]), ("abelian",)),
        e("C3xC9", _fam("abelian", p=3, exponents=[1, 2]), ("abelian",)),
        e("D8", _fam("extraspecial", p=2, n=1, kind="D"), ("extraspecial",)),
        e("Q8", _fam("extraspecial", p=2, n=1, kind="Q"), ("extraspecial",)),
        e("D16", _fam("metacyclic", p=2, a=3, b=1, k=7, c=0), ("metacyclic",)),
        e("Q16", _fam("metacyclic", p=2, a=3, b=1, k=7, c=4), ("metacyclic",)),
        e("SD16", _fam("metacyclic", p=2, a=3, b=1, k=3, c=0), ("metacyclic",)),
        e("M16", _fam("metacyclic", p=2, a=3, b=1, k=5, c=0), ("metacyclic",)),
        e("C2xD8", _c2_times_d8, ("non-stem",)),
        e("ES(2,2,D)", _fam("extraspecial", p=2, n=2, kind="D"), ("extraspecial",)),
        e("ES(2,2,Q)", _fam("extraspecial", p=2, n=2, kind="Q"), ("extraspecial",)),
        e("ES(3,1,p)", _fam("extraspecial", p=3, n=1, kind="p"), ("extraspecial",)),
        e("ES(3,1,p2)", _fam("extraspecial", p=3, n=1, kind="p2"), ("extraspecial",)),
        e("ES(3,2,p)", _fam("extraspecial", p=3, n=2, kind="p"), ("extraspecial",)),
        e("ES(3,2,p2)", _fam("extraspecial", p=3, n=2, kind="p2"), ("extraspecial",)),
        e("H(2^2)", _fam("heisenberg", p=2, e=2), ("Y",)),
        e("Y(2^1,2)", _fam("central_product_Y", p=2, e=1, m=2), ("Y",)),
        e("Y(2^1,3)", _fam("central_product_Y", p=2, e=1, m=3), ("Y",)),
        e("Y(3^1,2)", _fam("central_product_Y", p=3, e=1, m=2), ("Y",)),
        e("UT3(3^1)", _fam("unitriangular", p=3, m=1), ("unitriangular",)),
        e("UT3(3^2)", _fam("unitriangular", p=3, m=2), ("unitriangular",)),
    ]
    for k in range(4):
        name = f"UT3(3^2)/Z3#{k}"
        out.append(e(name, _quotient_by(_fam("unitriangular", p=3, m=2), _central_order_p, k, name), ("unitriangular",)))
    out += [
        e("K(3,2,0,1)", _fam("metacyclic_K", p=3, r=2, s=0, t=1), ("K",)),
        e("K(3,2,1,1)", _fam("metacyclic_K", p=3, r=2, s=1, t=1), ("K",)),
        e("K(2,3,0,2)", _fam("metacyclic_K", p=2, r=3, s=0, t=2), ("K",)),
        e("K(2,3,1,2)", _fam("metacyclic_K", p=2, r=3, s=1, t=2), ("K",)),
        e("K(2,3,2,2)", _fam("metacyclic_K", p=2, r=3, s=2, t=2), ("K",)),
        e("K(3,3,1,1)/M", _quotient_by(_fam("metacyclic_K", p=3, r=3, s=1, t=1), _gamma3_maximal, 0, "K(3,3,1,1)/M"), ("K",)),
        e("K(3,3,0,1)/M", _quotient_by(_fam("metacyclic_K", p=3, r=3, s=0, t=1), _gamma3_maximal, 0, "K(3,3,0,1)/M"), ("K",)),
        e("NM(3)", _fam("nonmetacyclic", p=3), ("two-generator",)),
        e("G(3;2,2,0,0,0,2,1)", _fam("two_generator_G", p=3, m=2, n=2, i=0, j=0, k=0, r=2, s=1), ("two-generator",)),
    ]
    for name in DESK_PRESENTATIONS:
        out.append(e(name, (lambda n=name: desk_group(n)), ("desk",)))
    return out


def default_isoclinic_pairs() -> list[tuple[str, str]]:
    return [
        ("D8", "Q8"),
        ("D8", "C2xD8"),
        ("ES(2,2,D)", "ES(2,2,Q)"),
        ("ES(2,2,D)", "Y(2^1,2)"),
        ("ES(3,1,p)", "ES(3,1,p2)"),
        ("NM(3)", "K(3,2,0,1)"),
        ("NM(3)", "G(3;2,2,0,0,0,2,1)"),
    ]


# ------------------------------------------------------------ suites

SUITES = ("A", "B", "CD", "lie", "extremal", "quotient")
SMALL_ORDER = 128
QUOTIENT_ORDER = 256


def _single(name: str, check: str, premise: bool, conclusion, detail: str = "") -> SuiteReport:
    rep = SuiteReport(name)
    rep.add(check, premise, conclusion, detail)
    return rep


def suite_a(G: FiniteGroup, budget: int) -> SuiteReport:
    return _single(
        "A", "generating_tuple_equivalence", G.order <= SMALL_ORDER,
        lambda: theorem_a_equivalence(G, budget).holds,
        "" if G.order <= SMALL_ORDER else f"order above {SMALL_ORDER}",
    )


def suite_b(G: FiniteGroup, budget: int, cap: int | None) -> SuiteReport:
    if G.nilpotency_class == 2 and is_camina_type(G):
        return theorem_b_suite(G, budget, cap)
    return _single("B", "class_two_camina_type", False, None, "not a class-2 Camina-type group")


def suite_cd(G: FiniteGroup, budget: int, cap: int | None) -> SuiteReport:
    c = G.nilpotency_class
    if c is not None and c >= 3:
        return theorem_cd_suite(G, budget, cap)
    return _single("CD", "class_at_least_three", False, None, "class below 3")


def suite_lie(G: FiniteGroup, budget: int) -> SuiteReport:
    from .lie import build_graded_lie_ring, centralizer_lemma_checks, macdonald_analysis, mod_p_algebra

    rep = SuiteReport("lie")
    p = G.prime
    premise = (
        G.nilpotency_class == 3 and G.gamma(3).order == p and bool(is_camina_type(G))
    )
    if not premise:
        rep.add("macdonald_conditions", False, None, "needs a class-3 Camina-type group with |γ₃| = p")
        return rep
    Lbar = mod_p_algebra(build_graded_lie_ring(G))
    mac = macdonald_analysis(Lbar)
    rep.add("macdonald_conditions", True, mac.conditions_hold)
    rep.add("m_equals_2n", True, bool(mac.m_eq_2n))
    rep.add("cbar_dim_equals_n", True, mac.cbar_dim == mac.n)
    rep.add("cbar_equals_centralizers", True, bool(mac.cbar_equals_centralizers))
    rep.add("centralizer_dims", True, bool(mac.centralizer_dims_ok))
    rep.add("lambda_surjective_kernel_cbar", True, bool(mac.lambda_surjective and mac.lambda_kernel_is_cbar))
    rep.add("direct_sum", True, bool(mac.direct_sum_ok))
    rep.add("pencil_nonsingular", True, bool(mac.pencil_nonsingular), f"{mac.pencil_checked} forms checked")
    rep.add("centralizer_lemmas", True, lambda: centralizer_lemma_checks(Lbar).all_hold)
    rep.add("d_equals_2", True, G.rank == 2)
    return rep


def suite_extremal(G: FiniteGroup, budget: int) -> SuiteReport:
    v = central_quotient_extremal(G, budget)
    return _single("extremal", "extremal_forces_hypothesis_a", bool(v), lambda: v.certificate["cross_check"])


def suite_quotient(G: FiniteGroup, budget: int) -> SuiteReport:
    """Hypothesis A passes to every proper quotient; Camina-type passes to G/N for N < γ₂."""
    rep = SuiteReport("quotient")
    if G.order > QUOTIENT_ORDER:
        rep.add("quotients", False, None, f"order above {QUOTIENT_ORDER}")
        return rep
    hyp = bool(satisfies_hypothesis_a(G, budget))
    ct = bool(is_camina_type(G))
    if not (hyp or ct):
        rep.add("quotients", False, None, "neither Hypothesis A nor Camina-type")
        return rep
    D = G.derived
    hyp_ok, ct_ok = True, True
    n_hyp = n_ct = 0
    for N in normal_subgroups(G):
        if N.order in (1, G.order):
            continue
        Q, _ = quotient_group(G, N)
        if hyp:
            n_hyp += 1
            hyp_ok &= bool(satisfies_hypothesis_a(Q, budget))
        if ct and N <= D and N != D:
            n_ct += 1
            ct_ok &= bool(is_camina_type(Q))
    rep.add("hypothesis_a_quotients", hyp, hyp_ok, f"{n_hyp} quotients")
    rep.add("camina_type_quotients", ct, ct_ok, f"{n_ct} quotients")
    return rep


def run_suites(
    G: FiniteGroup, suites=SUITES, budget: int = DEFAULT_BUDGET, cap: int | None = DEFAULT_CAP
) -> dict[str, SuiteReport]:
    runners = {
        "A": lambda: suite_a(G, budget),
        "B": lambda: suite_b(G, budget, cap),
        "CD": lambda: suite_cd(G, budget, cap),
        "lie": lambda: suite_lie(G, budget),
        "extremal": lambda: suite_extremal(G, budget),
        "quotient": lambda: suite_quotient(G, budget),
    }
    out = {}
    for s in suites:
        if s not in runners:
            raise ParameterViolation(f"unknown suite {s!r}; known: {', '.join(runners)}")
        out[s] = runners[s]()
    return out


def isoclinism_pair_suite(
    G: FiniteGroup, H: FiniteGroup, budget: int = DEFAULT_BUDGET, cap: int | None = DEFAULT_CAP
) -> SuiteReport:
    """An isoclinic pair shares |Aut_c|, |γ₂|, |G/Z|, and d when both have Z ≤ Φ."""
    from .verdicts import automorphisms

    rep = SuiteReport("isoclinism")
    v = is_isoclinic(G, H, budget, cap)
    iso = bool(v)
    # a declared pair is expected to be isoclinic; the invariants are conditional on it
    rep.add("isoclinic", True, iso)
    rep.add("gamma2_orders_agree", iso, G.derived.order == H.derived.order)
    rep.add("central_quotient_orders_agree", iso, G.order // G.center.order == H.order // H.center.order)
    both_nonabelian = not (G.is_abelian or H.is_abelian)
    rep.add(
        "autc_orders_agree", iso and both_nonabelian,
        lambda: automorphisms(G, "Aut_c", budget).order == automorphisms(H, "Aut_c", budget).order,
    )
    frattini_centres = G.center <= G.frattini and H.center <= H.frattini
    rep.add("ranks_agree", iso and frattini_centres, G.rank == H.rank)
    rep.add(
        "camina_type_passes_to_stem_partner",
        iso and bool(is_camina_type(G)) and bool(is_stem(H)),
        lambda: bool(is_camina_type(H)) and G.rank == H.rank,
    )
    return rep


def entry_lookup(entries: list[CorpusEntry]) -> dict[str, CorpusEntry]:
    return {e.name: e for e in entries}


__all__ = [
    "CorpusEntry",
    "DESK_PRESENTATIONS",
    "FAMILIES",
    "Family",
    "SUITES",
    "default_corpus",
    "default_isoclinic_pairs",
    "desk_group",
    "get_family",
    "isoclinism_pair_suite",
    "run_suites",
]

