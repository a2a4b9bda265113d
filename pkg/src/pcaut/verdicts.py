"""Group-level predicates and theorem suites with tri-state outcomes.

A suite check is "true" when the asserted conclusion was verified, "false" when
it failed (which indicates a bug somewhere in the stack), and "n/a" when the
premise of that particular statement does not hold for the input.
"""

from __future__ import annotations

import math
import time
import weakref
from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from . import autos
from .abelian import invariant_factors, is_homocyclic
from .autos import DEFAULT_BUDGET, _Extender, _search
from .errors import (
    NotCaminaType,
    NotPGroup,
    PcautError,
    SearchBudgetExceeded,
    SizeCapExceeded,
    WrongClass,
)
from .group import DEFAULT_CAP, FiniteGroup, SubgroupSet, quotient_group
from .linalg import rank as fp_rank

TRUE, FALSE, NA = "true", "false", "n/a"


def tri(value: bool | None) -> str:
    if value is None:
        return NA
    return TRUE if value else FALSE


@dataclass(frozen=True)
class Verdict:
    value: str
    reason: str = ""
    certificate: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.value == TRUE

    def to_dict(self) -> dict:
        out = {"value": self.value}
        if self.reason:
            out["reason"] = self.reason
        if self.certificate:
            out["certificate"] = {k: _jsonable(v) for k, v in self.certificate.items()}
        return out


def _jsonable(v):
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (np.bool_,)):
        return bool(v)
    if isinstance(v, np.ndarray):
        return v.tolist()
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if hasattr(v, "to_dict"):
        return v.to_dict()
    return v


@dataclass(frozen=True)
class Check:
    name: str
    value: str
    detail: str = ""

    def to_dict(self) -> dict:
        out = {"name": self.name, "value": self.value}
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class SuiteReport:
    name: str
    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, premise: bool, conclusion: Callable[[], bool] | bool | None, detail: str = ""):
        """Record a check; the conclusion is only evaluated when the premise holds."""
        if not premise:
            self.checks.append(Check(name, NA, detail or "premise not met"))
            return
        try:
            ok = conclusion() if callable(conclusion) else conclusion
        except SearchBudgetExceeded as exc:
            self.checks.append(Check(name, NA, f"skipped: {exc.message}"))
            return
        self.checks.append(Check(name, tri(ok), detail))

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.value == FALSE]

    @property
    def ok(self) -> bool:
        return not self.failures

    def counts(self) -> dict[str, int]:
        out = {TRUE: 0, FALSE: 0, NA: 0}
        for c in self.checks:
            out[c.value] += 1
        return out

    def get(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {"suite": self.name, "ok": self.ok, "checks": [c.to_dict() for c in self.checks]}


# ------------------------------------------------------------ cached searches

_cache: "weakref.WeakKeyDictionary[FiniteGroup, dict]" = weakref.WeakKeyDictionary()

_SEARCHES = {
    "Aut_c": autos.class_preserving_automorphisms,
    "Autcent": autos.central_automorphisms,
    "Cb": autos.basis_conjugating_automorphisms,
    "Aut^gamma2": autos.gamma2_trivial_automorphisms,
}


def automorphisms(G: FiniteGroup, kind: str, budget: int = DEFAULT_BUDGET) -> autos.AutomorphismGroup:
    """Memoized automorphism search of the given kind ("Inn", "Aut_c", "Autcent", "Cb", "Aut^gamma2")."""
    store = _cache.setdefault(G, {})
    if kind not in store:
        if kind == "Inn":
            store[kind] = autos.inner_automorphisms(G)
        else:
            store[kind] = _SEARCHES[kind](G, budget)
    return store[kind]


def _autc_order(G: FiniteGroup, budget: int) -> int:
    return automorphisms(G, "Aut_c", budget).order


def _inn_order(G: FiniteGroup) -> int:
    return G.order // G.center.order


def _d(G: FiniteGroup) -> int:
    return G.rank if G.order > 1 else 0


def _log(n: int, p: int) -> int:
    return round(math.log(n, p)) if n > 1 else 0


def subgroup_rank(H: SubgroupSet) -> int:
    """d(H) for a p-subgroup."""
    if H.order == 1:
        return 0
    return H.as_group().rank


def _is_elementary_abelian(H: SubgroupSet, p: int) -> bool:
    G = H.parent
    sub = G.mul[np.ix_(H.array, H.array)]
    if not (sub == sub.T).all():
        return False
    return bool((p % G.element_orders[H.array] == 0).all())


def _gamma2_mod_gamma3_rank(G: FiniteGroup) -> int:
    """d(γ₂/γ₃) = log_p |γ₂ : γ₂^p γ₃|."""
    p = G.prime
    D = G.derived
    powers = G.power_map(p)[D.array]
    sub = G.subgroup(list(powers) + list(G.gamma(3).members))
    return _log(D.order // sub.order, p)


# ------------------------------------------------------------ predicates


def is_camina_type(G: FiniteGroup) -> Verdict:
    """[x, G] = γ₂(G) for every x outside Φ(G).

    Since [x, G] ⊆ γ₂(G) and |[x, G]| = |x^G|, the test compares class sizes with |γ₂(G)|.
    """
    if G.is_abelian:
        return Verdict(FALSE, "abelian")
    out = ~G.frattini.mask
    bad = np.nonzero(out & (G.class_sizes != G.derived.order))[0]
    if bad.size:
        x = int(bad[0])
        return Verdict(FALSE, "commutator set too small", {"witness": G.labels[x], "class_size": int(G.class_sizes[x])})
    return Verdict(TRUE)


def is_camina(G: FiniteGroup) -> Verdict:
    if G.is_abelian:
        return Verdict(FALSE, "abelian")
    out = ~G.derived.mask
    bad = np.nonzero(out & (G.class_sizes != G.derived.order))[0]
    if bad.size:
        x = int(bad[0])
        return Verdict(FALSE, "commutator set too small", {"witness": G.labels[x], "class_size": int(G.class_sizes[x])})
    return Verdict(TRUE)


def satisfies_hypothesis_a(G: FiniteGroup, budget: int = DEFAULT_BUDGET) -> Verdict:
    autc = _autc_order(G, budget)
    bound = G.derived.order ** _d(G)
    return Verdict(tri(autc == bound), "", {"autc_order": autc, "bound": bound})


def is_stem(G: FiniteGroup) -> Verdict:
    return Verdict(tri(G.center <= G.derived), "", {"center_order": G.center.order, "gamma2_order": G.derived.order})


def y_subgroup(G: FiniteGroup) -> SubgroupSet:
    """γ₄(G) together with the squares of γ₂(G)."""
    if G.prime != 2:
        raise NotPGroup(f"{G.name} is not a 2-group")
    D = G.derived
    squares = G.mul[D.array, D.array]
    return G.subgroup(list(G.gamma(4).members) + [int(s) for s in squares])


def _cyclic_subgroups(G: FiniteGroup):
    seen = set()
    orders = G.element_orders
    for x in np.argsort(-orders, kind="stable"):
        x = int(x)
        if orders[x] == 1:
            continue
        pw = [G.identity]
        cur = x
        while cur != G.identity:
            pw.append(cur)
            cur = int(G.mul[cur, x])
        key = frozenset(pw)
        if key in seen:
            continue
        seen.add(key)
        yield x, key


def is_metacyclic(G: FiniteGroup) -> Verdict:
    """Search for a cyclic normal subgroup with cyclic quotient."""
    if G.order == 1 or (G.is_abelian and G.element_orders.max() == G.order):
        return Verdict(TRUE, "cyclic")
    exp = int(G.element_orders.max())
    for x, members in _cyclic_subgroups(G):
        if len(members) * exp < G.order:
            continue
        N = SubgroupSet(G, tuple(sorted(members)))
        if not N.is_normal():
            continue
        Q, proj = quotient_group(G, N)
        if int(Q.element_orders.max()) == Q.order:
            y = int(np.nonzero(Q.element_orders == Q.order)[0][0])
            rep = int(np.nonzero(proj == y)[0][0])
            return Verdict(TRUE, "", {"normal_generator": G.labels[x], "quotient_generator": G.labels[rep]})
    return Verdict(FALSE, "no cyclic normal subgroup has cyclic quotient")


# ------------------------------------------------------------ generating tuples


@dataclass(frozen=True)
class GeneratingTupleReport:
    d: int
    autc_order: int
    ordered_bases: int
    tuples: int
    min_product: int
    max_product: int
    hypothesis_a: bool

    @property
    def all_tuples_attain(self) -> bool:
        return self.min_product == self.max_product == self.autc_order

    @property
    def holds(self) -> bool:
        return self.all_tuples_attain == self.hypothesis_a

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "autc_order": self.autc_order,
            "ordered_bases": self.ordered_bases,
            "tuples": self.tuples,
            "min_product": self.min_product,
            "max_product": self.max_product,
            "all_tuples_attain": self.all_tuples_attain,
            "hypothesis_a": self.hypothesis_a,
            "holds": self.holds,
        }


def frattini_coordinates(G: FiniteGroup) -> tuple[np.ndarray, np.ndarray]:
    """(coords, proj): proj[x] is the coset of Φ(G) containing x, coords[q] its F_p vector."""
    p = G.prime
    Q, proj = quotient_group(G, G.frattini)
    gens = Q.minimal_generators
    d = len(gens)
    coords = np.zeros((Q.order, d), dtype=np.int64)
    elems = np.array([Q.identity])
    vecs = np.zeros((1, d), dtype=np.int64)
    for k, g in enumerate(gens):
        new_e, new_v = [elems], [vecs]
        cur = elems
        for a in range(1, p):
            cur = Q.mul[cur, g]
            v = vecs.copy()
            v[:, k] = a
            new_e.append(cur)
            new_v.append(v)
        elems, vecs = np.concatenate(new_e), np.concatenate(new_v)
    coords[elems] = vecs
    return coords, proj


def _extreme_basis_weight(vectors: np.ndarray, weights: np.ndarray, p: int, d: int, largest: bool) -> int:
    """Greedy optimum over bases of the vector matroid (exact for matroids)."""
    order = np.argsort(-weights if largest else weights, kind="stable")
    chosen: list[np.ndarray] = []
    total = 0
    for i in order:
        trial = chosen + [vectors[i]]
        if fp_rank(np.array(trial), p) == len(trial):
            chosen = trial
            total += int(weights[i])
            if len(chosen) == d:
                break
    return total


def theorem_a_equivalence(G: FiniteGroup, budget: int = DEFAULT_BUDGET, max_order: int = 256) -> GeneratingTupleReport:
    """Compare |Aut_c(G)| with ∏|x_i^G| over every minimal generating tuple.

    A tuple is minimal generating iff its images form a basis of G/Φ(G). The
    product over a tuple only depends on which class size each entry has, so
    the extremes over all tuples are the extreme basis weights of the vector
    matroid on G/Φ(G), weighting each coset by its least and largest
    log-class-size. The greedy algorithm finds those exactly.
    """
    if G.order > max_order:
        raise SizeCapExceeded(f"generating-tuple check is limited to order {max_order}", order=G.order)
    autc = _autc_order(G, budget)
    hyp = autc == G.derived.order ** _d(G)
    if G.order == 1:
        return GeneratingTupleReport(0, autc, 1, 1, 1, 1, hyp)
    p = G.require_p_group()
    d = G.rank
    coords, proj = frattini_coordinates(G)
    logs = np.round(np.log(G.class_sizes) / np.log(p)).astype(np.int64)
    nq = coords.shape[0]
    lo = np.full(nq, np.iinfo(np.int64).max)
    hi = np.full(nq, -1)
    np.minimum.at(lo, proj, logs)
    np.maximum.at(hi, proj, logs)
    nonzero = coords.any(axis=1)
    vecs = coords[nonzero]
    wmin = _extreme_basis_weight(vecs, lo[nonzero], p, d, largest=False)
    wmax = _extreme_basis_weight(vecs, hi[nonzero], p, d, largest=True)
    bases = math.prod(p**d - p**i for i in range(d))
    phi = G.frattini.order
    return GeneratingTupleReport(d, autc, bases, bases * phi**d, p**wmin, p**wmax, hyp)


# ------------------------------------------------------------ isoclinism


@dataclass(frozen=True)
class IsoclinismWitness:
    """phi maps G/Z(G) cosets to H/Z(H) cosets; theta maps γ₂(G) into γ₂(H)."""

    G: FiniteGroup
    H: FiniteGroup
    phi: dict
    theta: dict

    def to_dict(self) -> dict:
        return {"phi": dict(self.phi), "theta": dict(self.theta)}


def _coset_data(G: FiniteGroup):
    Q, proj = quotient_group(G, G.center)
    _, reps = np.unique(proj, return_index=True)
    a = G.inv[reps]
    comm = G.mul[G.mul[a[:, None], a[None, :]], G.mul[reps[:, None], reps[None, :]]]
    return Q, proj, reps, comm.astype(np.int64)


def _commutator_generators(G: FiniteGroup, values: np.ndarray) -> list[int]:
    target = G.derived.order
    chosen: list[int] = []
    span = np.zeros(G.order, dtype=bool)
    span[G.identity] = True
    for v in values:
        v = int(v)
        if not span[v]:
            chosen.append(v)
            span = G.closure(chosen)
            if span.sum() == target:
                break
    return chosen


def is_isoclinic(
    G: FiniteGroup, H: FiniteGroup, budget: int = DEFAULT_BUDGET, cap: int | None = DEFAULT_CAP
) -> Verdict:
    """Search for an isoclinism (φ, θ) from G onto H.

    φ ranges over isomorphisms G/Z(G) → H/Z(H) built from generator images of
    matching order. The commutator square forces θ on commutator values; θ is
    then extended from commutator generators of γ₂(G) and checked to be an
    isomorphism onto γ₂(H) that agrees with every forced value.
    """
    for X in (G, H):
        if cap is not None and X.order > cap:
            raise SizeCapExceeded(f"{X.name} has order {X.order} > cap {cap}", order=X.order)
    sizes = {
        "central_quotient": (G.order // G.center.order, H.order // H.center.order),
        "gamma2": (G.derived.order, H.derived.order),
    }
    if any(a != b for a, b in sizes.values()):
        return Verdict(FALSE, "invariant mismatch", {k: list(v) for k, v in sizes.items()})
    if G.is_abelian:
        return Verdict(TRUE, "both abelian", {"witness": IsoclinismWitness(G, H, {}, {})})

    QG, projG, repsG, cG = _coset_data(G)
    QH, projH, repsH, cH = _coset_data(H)
    if not np.array_equal(np.sort(QG.element_orders), np.sort(QH.element_orders)):
        return Verdict(FALSE, "central quotients are not isomorphic")

    nq = QG.order
    flat = cG.ravel()
    uniq, first = np.unique(flat, return_index=True)
    canon = first[np.searchsorted(uniq, flat)]
    rows, cols = np.divmod(np.arange(nq * nq), nq)

    Dg = G.derived.as_group()
    local = np.full(G.order, -1, dtype=np.int64)
    local[G.derived.array] = np.arange(G.derived.order)
    cgens = _commutator_generators(G, uniq)
    # position in `flat` of one pair realizing each chosen generator
    gen_pos = first[np.searchsorted(uniq, cgens)]
    dext = _Extender(Dg.mul, [int(local[c]) for c in cgens], Dg.identity)
    forced_local = local[uniq]
    h_gamma = H.derived.mask

    def theta_for(vals: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        gimg = vals[:, gen_pos]
        img = dext.extend(gimg, H.mul, H.identity)
        ok = dext.hom_mask(img, gimg, H.mul)
        ok &= h_gamma[img].all(axis=1)
        ok &= (img == H.identity).sum(axis=1) == 1
        ok &= (img[:, forced_local] == vals[:, first]).all(axis=1)
        return img, ok

    step = max(1, (1 << 22) // max(nq * nq, 1))

    def accept(phis: np.ndarray) -> np.ndarray:
        keep = np.zeros(phis.shape[0], dtype=bool)
        for s in range(0, phis.shape[0], step):
            P = phis[s:s + step]
            vals = cH[P[:, rows], P[:, cols]]
            ok = (vals == vals[:, canon]).all(axis=1)
            if ok.any():
                idx = np.nonzero(ok)[0]
                _, good = theta_for(vals[idx])
                ok[idx] = good
            keep[s:s + step] = ok
        return keep

    if G is H:
        found = np.arange(nq)[None, :]
    else:
        qgens = QG.minimal_generators
        ext = _Extender(QG.mul, qgens, QG.identity)
        horders = QH.element_orders
        cands = [np.nonzero(horders == QG.element_orders[g])[0] for g in qgens]
        found = _search(ext, cands, QH.mul, QH.identity, accept, budget, bijective=True, limit=1)
    if found.shape[0] == 0:
        return Verdict(FALSE, "no isoclinism exists")
    phi = found[0]
    vals = cH[phi[rows], phi[cols]][None, :]
    img, ok = theta_for(vals)
    assert ok[0]
    witness = IsoclinismWitness(
        G,
        H,
        {G.labels[int(repsG[q])]: H.labels[int(repsH[phi[q]])] for q in range(nq)},
        {G.labels[int(x)]: H.labels[int(img[0, k])] for k, x in enumerate(G.derived.array)},
    )
    return Verdict(TRUE, "", {"witness": witness})


# ------------------------------------------------------------ central-quotient extremality


def central_quotient_extremal(G: FiniteGroup, budget: int = DEFAULT_BUDGET) -> Verdict:
    """|G/Z(G)| = |γ₂(G)|^d, cross-checked against Aut_c when it holds.

    Inn(G) ≤ Aut_c(G) and |Aut_c(G)| ≤ |γ₂(G)|^d, so equality here forces
    Aut_c(G) = Inn(G) and Hypothesis A.
    """
    lhs = G.order // G.center.order
    rhs = G.derived.order ** _d(G)
    cert: dict[str, Any] = {"central_quotient_order": lhs, "bound": rhs}
    if lhs != rhs:
        return Verdict(FALSE, "", cert)
    autc = _autc_order(G, budget)
    cert["autc_order"] = autc
    cert["cross_check"] = autc == rhs == _inn_order(G)
    return Verdict(TRUE, "", cert)


# ------------------------------------------------------------ theorem suites


def theorem_b_suite(G: FiniteGroup, budget: int = DEFAULT_BUDGET, cap: int | None = DEFAULT_CAP) -> SuiteReport:
    """Class-2 Camina-type statements."""
    if G.nilpotency_class != 2:
        raise WrongClass(f"{G.name} has class {G.nilpotency_class}, expected 2")
    if not is_camina_type(G):
        raise NotCaminaType(f"{G.name} is not Camina-type")
    p = G.prime
    d = G.rank
    D = G.derived
    rep = SuiteReport("B")
    cyclic = D.is_cyclic()
    rep.add("d_even", True, d % 2 == 0)
    rep.add("d_at_least_twice_rank_gamma2", True, lambda: d >= 2 * subgroup_rank(D))
    rep.add("central_quotient_homocyclic", True, lambda: is_homocyclic(quotient_group(G, G.center)[0]))
    rep.add("hypothesis_a", True, lambda: bool(satisfies_hypothesis_a(G, budget)))
    rep.add(
        "autcent_equals_autc_iff_center_is_gamma2",
        True,
        lambda: (
            automorphisms(G, "Autcent", budget).order == _autc_order(G, budget)
        ) == (G.center == D),
    )
    rep.add(
        "autc_equals_inn_iff_gamma2_cyclic",
        True,
        lambda: (_autc_order(G, budget) == _inn_order(G)) == cyclic,
    )
    rep.add("homc_count_equals_autc", True, lambda: autos.homc_enumerate(G, budget).count == _autc_order(G, budget))

    def isoclinic_to_y() -> bool | None:
        from .pcp import family_central_product_Y

        e = _log(D.order, p)
        Y = family_central_product_Y(p, e, d // 2, cap=cap)
        return bool(is_isoclinic(G, Y, budget, cap=None))

    q = D.order
    fits = cap is None or q ** (d + 1) <= cap
    rep.add("isoclinic_to_central_product_Y", cyclic and d % 2 == 0 and fits, isoclinic_to_y,
            "" if fits or not cyclic else "comparison group exceeds cap")
    return rep


def _k_candidates(p: int, r: int, cap: int | None):
    for t in range(1, r):
        if p == 2 and t < 2:
            continue
        if cap is not None and p ** (2 * r + t) > cap:
            break
        for s in range(t + 1):
            yield s, t


def theorem_cd_suite(G: FiniteGroup, budget: int = DEFAULT_BUDGET, cap: int | None = DEFAULT_CAP) -> SuiteReport:
    """Statements about Camina-type and Hypothesis-A groups of class at least 3."""
    c = G.nilpotency_class
    if c is None or c < 3:
        raise WrongClass(f"{G.name} has class {c}, expected at least 3")
    p = G.require_p_group()
    d = G.rank
    D = G.derived
    g3 = G.gamma(3)
    index = D.order // g3.order
    ct = bool(is_camina_type(G))
    hyp = bool(satisfies_hypothesis_a(G, budget))
    cyclic = D.is_cyclic()
    elem = _is_elementary_abelian(D, p)
    rep = SuiteReport("CD")

    rep.add("camina_type_d_is_twice_rank_gamma2_mod_gamma3", ct, lambda: d == 2 * _gamma2_mod_gamma3_rank(G))
    rep.add("camina_type_d_even", ct, d % 2 == 0)
    rep.add("camina_type_cyclic_gamma2_two_generators", ct and cyclic, d == 2)
    rep.add("camina_type_two_generator_large_index_cyclic_and_hypothesis_a", ct and d == 2 and index > 2, cyclic and hyp)
    rep.add("hypothesis_a_two_generators", hyp, d == 2)
    rep.add("large_index_hypothesis_a_iff_two_generator_cyclic", index > 2, hyp == (d == 2 and cyclic))
    rep.add(
        "index_two_hypothesis_a_iff_small_elementary_gamma2",
        index == 2,
        hyp == (p == 2 and d == 2 and c == 3 and elem and D.order <= 8),
    )

    small_g3 = ct and c == 3 and g3.order == p

    def lemma_class3() -> bool:
        powers = G.power_map(p)[D.array]
        return bool(G.center.mask[powers].all()) and G.upper_central[2] == G.frattini

    rep.add("camina_type_prime_gamma3_power_and_second_center", small_g3, lemma_class3)

    def lie_checks() -> bool:
        from .lie import build_graded_lie_ring, centralizer_lemma_checks, macdonald_analysis, mod_p_algebra

        Lbar = mod_p_algebra(build_graded_lie_ring(G))
        mac = macdonald_analysis(Lbar)
        return bool(mac.all_conclusions_hold and centralizer_lemma_checks(Lbar).all_hold)

    rep.add("camina_type_prime_gamma3_lie_conclusions", small_g3, lie_checks)

    def aut_gamma2_full() -> bool:
        return automorphisms(G, "Aut^gamma2", budget).order == D.order**d

    rep.add(
        "prime_gamma3_full_aut_gamma2_two_generators",
        small_g3,
        lambda: (not aut_gamma2_full()) or d == 2,
    )

    two_gen_2group = p == 2 and d == 2
    rep.add(
        "index_two_hypothesis_a_y_trivial",
        two_gen_2group and hyp and index == 2 and G.order <= 256,
        lambda: y_subgroup(G).order == 1,
    )
    rep.add(
        "index_two_inner_autc_hypothesis_a_iff_class3_order4",
        two_gen_2group and index == 2,
        lambda: (_autc_order(G, budget) != _inn_order(G)) or (hyp == (c == 3 and elem and D.order == 4)),
    )
    desk = two_gen_2group and c <= 3 and G.order <= 128 and elem and D.order <= 8
    rep.add(
        "small_two_group_hypothesis_a_and_inner_iff_order_le4",
        desk,
        lambda: hyp and ((_autc_order(G, budget) == _inn_order(G)) == (D.order <= 4)),
    )

    def isoclinic_to_k() -> bool | None:
        from .pcp import family_metacyclic_K

        r = _log(D.order, p)
        for s, t in _k_candidates(p, r, cap):
            if is_isoclinic(G, family_metacyclic_K(p, r, s, t, cap=cap), budget, cap=None):
                return True
        return False

    r = _log(D.order, p)
    has_k = any(True for _ in _k_candidates(p, r, cap))
    rep.add(
        "camina_type_two_generator_large_index_isoclinic_to_K",
        ct and d == 2 and index > 2 and has_k,
        isoclinic_to_k,
    )
    return rep


# ------------------------------------------------------------ full analysis


SCHEMA_FIELDS = (
    "name", "order", "prime", "nilpotency_class", "d",
    "gamma_orders", "upper_central_orders", "frattini_order", "center_order",
    "autc_order", "inn_order", "autcent_order", "cb_order", "aut_gamma2_order",
)


@dataclass
class AnalysisReport:
    name: str
    order: int
    prime: int | None
    nilpotency_class: int | None
    d: int
    gamma_orders: list[int]
    upper_central_orders: list[int]
    frattini_order: int
    center_order: int
    autc_order: int
    inn_order: int
    autcent_order: int | None = None
    cb_order: int | None = None
    aut_gamma2_order: int | None = None
    flags: dict[str, str] = field(default_factory=dict)
    checks: SuiteReport = field(default_factory=lambda: SuiteReport("consistency"))
    suites: dict[str, SuiteReport] = field(default_factory=dict)
    macdonald: dict | None = None
    skipped: dict[str, str] = field(default_factory=dict)
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def failures(self) -> list[tuple[str, Check]]:
        out = [("consistency", c) for c in self.checks.failures]
        for name, s in self.suites.items():
            out += [(name, c) for c in s.failures]
        return out

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self, timings: bool = True) -> dict:
        out = {k: getattr(self, k) for k in SCHEMA_FIELDS}
        out["flags"] = dict(self.flags)
        out["checks"] = self.checks.to_dict()
        out["suites"] = {k: v.to_dict() for k, v in self.suites.items()}
        out["macdonald"] = self.macdonald
        out["skipped"] = dict(self.skipped)
        if timings:
            out["timings"] = {k: round(v, 6) for k, v in self.timings.items()}
        return out


class _Timer:
    def __init__(self, store: dict):
        self.store = store

    def __call__(self, key: str, fn: Callable, *args, **kw):
        t0 = time.perf_counter()
        try:
            return fn(*args, **kw)
        finally:
            self.store[key] = self.store.get(key, 0.0) + time.perf_counter() - t0


def analyze(
    G: FiniteGroup,
    budget: int = DEFAULT_BUDGET,
    cap: int | None = DEFAULT_CAP,
    suites: bool = True,
    metacyclic: bool = True,
) -> AnalysisReport:
    """Compute invariants, automorphism-group orders, flags, and the applicable suites."""
    p = G.require_p_group() if G.order > 1 else None
    timings: dict[str, float] = {}
    tm = _Timer(timings)
    d = _d(G)
    D = G.derived

    autc = tm("Aut_c", automorphisms, G, "Aut_c", budget)
    inn = tm("Inn", automorphisms, G, "Inn")
    rep = AnalysisReport(
        name=G.name,
        order=G.order,
        prime=p,
        nilpotency_class=G.nilpotency_class,
        d=d,
        gamma_orders=[S.order for S in G.lower_central],
        upper_central_orders=[S.order for S in G.upper_central],
        frattini_order=G.frattini.order,
        center_order=G.center.order,
        autc_order=autc.order,
        inn_order=inn.order,
        timings=timings,
    )
    optional = {}
    for kind, attr in (("Autcent", "autcent_order"), ("Cb", "cb_order"), ("Aut^gamma2", "aut_gamma2_order")):
        try:
            optional[kind] = tm(kind, automorphisms, G, kind, budget)
            setattr(rep, attr, optional[kind].order)
        except SearchBudgetExceeded as exc:
            rep.skipped[kind] = exc.message

    hyp = satisfies_hypothesis_a(G, budget)
    ct = tm("camina_type", is_camina_type, G)
    cam = is_camina(G)
    cq = quotient_group(G, G.center)[0]
    extremal = tm("extremal", central_quotient_extremal, G, budget)
    rep.flags = {
        "camina": cam.value,
        "camina_type": ct.value,
        "hypothesis_a": hyp.value,
        "stem": is_stem(G).value,
        "homocyclic_central_quotient": tri(is_homocyclic(cq) if cq.is_abelian else None),
        "central_quotient_extremal": extremal.value,
        "gamma2_cyclic": tri(D.is_cyclic()),
    }
    if metacyclic:
        rep.flags["metacyclic"] = tm("metacyclic", is_metacyclic, G).value

    chk = rep.checks
    cls = G.nilpotency_class
    gens = G.minimal_generators
    chk.add("inner_le_autc_le_class_product", True,
            inn.order <= autc.order <= math.prod(int(G.class_sizes[x]) for x in gens))
    chk.add("inner_inside_autc", True, inn.issubset(autc))
    chk.add("autc_bounded_by_gamma2_power", True, autc.order <= D.order**d)
    chk.add("hypothesis_a_gives_camina_type", bool(hyp) and not G.is_abelian, bool(ct))
    chk.add("camina_gives_camina_type", bool(cam), bool(ct))
    chk.add("camina_iff_camina_type_and_gamma2_is_frattini", bool(ct), bool(cam) == (D == G.frattini))
    chk.add("class2_camina_type_iff_hypothesis_a", cls == 2, bool(ct) == bool(hyp))
    chk.add("extremal_cross_check", bool(extremal), extremal.certificate.get("cross_check"))
    if "Cb" in optional:
        rep.flags["cb_is_group"] = tri(optional["Cb"].verify_closure())
        chk.add("autc_inside_cb", True, autc.issubset(optional["Cb"]))
    if "Autcent" in optional:
        chk.add("class2_autc_inside_autcent", cls == 2, lambda: autc.issubset(optional["Autcent"]))
        purely = not G.is_abelian and G.center <= G.frattini
        chk.add("autcent_matches_hom_count", purely,
                lambda: autos.adney_yen_check(G, budget).match)
    if "Aut^gamma2" in optional:
        chk.add("aut_gamma2_bounded", True, optional["Aut^gamma2"].order <= D.order**d)
        u_ok = False
        if d == 2 and D.is_cyclic() and D.order > 1:
            u = int(D.array[np.argmax(G.element_orders[D.array])])
            u4 = G.subgroup([G.power(u, 4)])
            u_ok = p != 2 or all(u4.mask[v] for v in _commutator_values(G, u))
        chk.add("two_generator_cyclic_gamma2_trivial_autos_inner", u_ok,
                lambda: optional["Aut^gamma2"].issubset(inn))
    chk.add("class2_homc_count_equals_autc", cls == 2,
            lambda: tm("Hom_c", autos.homc_enumerate, G, budget).count == autc.order)
    if cls is not None and G.order > 1:
        from .lie import build_graded_lie_ring, macdonald_analysis, mod_p_algebra

        Lbar = tm("lie", lambda: mod_p_algebra(build_graded_lie_ring(G)))
        chk.add("d_equals_dim_l1", True, Lbar.m == d)
        if cls >= 2:
            mac = tm("lie", macdonald_analysis, Lbar)
            rep.macdonald = _jsonable(_mac_dict(mac))
            chk.add("macdonald_fields_consistent", True, mac.consistent())

    if suites and p is not None:
        if cls == 2 and ct:
            rep.suites["B"] = tm("suite_B", theorem_b_suite, G, budget, cap)
        if cls is not None and cls >= 3:
            rep.suites["CD"] = tm("suite_CD", theorem_cd_suite, G, budget, cap)
    return rep


def _commutator_values(G: FiniteGroup, x: int) -> np.ndarray:
    return np.unique(G.mul[G.inv[x], G.conj[:, x]])


def _mac_dict(mac) -> dict:
    from dataclasses import asdict

    out = asdict(mac)
    out["status"] = mac.status
    out["all_conclusions_hold"] = mac.all_conclusions_hold if mac.conditions_hold else None
    return out
