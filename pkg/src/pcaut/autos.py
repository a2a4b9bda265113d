"""Automorphism searches constrained by generator-image candidates.

Every search fixes a minimal generating tuple, picks a candidate set for each
generator image, extends each assignment to a full map along a breadth-first
spanning tree of the Cayley graph, and keeps the maps that are bijective
homomorphisms passing a full-element filter. The last generator is handled in
numpy batches, the others by plain iteration.
"""

from __future__ import annotations

import math
import weakref
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Callable, Sequence

import numpy as np

from .abelian import hom_count, invariant_factors
from .errors import PrecondFailed, SearchBudgetExceeded, WrongClass
from .group import FiniteGroup, quotient_group

DEFAULT_BUDGET = 10**7
_BATCH_CELLS = 1 << 22


class _Extender:
    """Extends generator images to whole-group maps along a BFS tree."""

    def __init__(self, mul: np.ndarray, gens: Sequence[int], identity: int):
        n = mul.shape[0]
        self.n = n
        self.gens = [int(g) for g in gens]
        self.identity = identity
        self.mul_src = mul
        seen = np.zeros(n, dtype=bool)
        seen[identity] = True
        frontier = np.array([identity])
        self.levels = []
        while frontier.size:
            nodes, parents, which = [], [], []
            for k, g in enumerate(self.gens):
                nxt = mul[frontier, g]
                fresh = ~seen[nxt]
                # first occurrence wins so each node gets one parent
                cand, idx = np.unique(nxt[fresh], return_index=True)
                seen[cand] = True
                nodes.append(cand)
                parents.append(frontier[fresh][idx])
                which.append(np.full(cand.size, k))
            nodes = np.concatenate(nodes)
            if nodes.size:
                self.levels.append((nodes, np.concatenate(parents), np.concatenate(which)))
            frontier = nodes
        if not seen.all():
            raise ValueError("generators do not generate the group")

    def extend(self, gimg: np.ndarray, mul_dst: np.ndarray, identity_dst: int) -> np.ndarray:
        """gimg: (B, d) images of the generators. Returns (B, n) image arrays."""
        B = gimg.shape[0]
        img = np.empty((B, self.n), dtype=np.int64)
        img[:, self.identity] = identity_dst
        for nodes, parents, which in self.levels:
            img[:, nodes] = mul_dst[img[:, parents], gimg[:, which]]
        return img

    def hom_mask(self, img: np.ndarray, gimg: np.ndarray, mul_dst: np.ndarray) -> np.ndarray:
        ok = np.ones(img.shape[0], dtype=bool)
        for k, g in enumerate(self.gens):
            lhs = img[:, self.mul_src[:, g]]
            rhs = mul_dst[img, gimg[:, k][:, None]]
            ok &= (lhs == rhs).all(axis=1)
        return ok


def _search(
    ext: _Extender,
    candidates: Sequence[np.ndarray],
    mul_dst: np.ndarray,
    identity_dst: int,
    accept: Callable[[np.ndarray], np.ndarray],
    budget: int,
    bijective: bool,
    limit: int | None = None,
) -> np.ndarray:
    sizes = [len(c) for c in candidates]
    total = math.prod(sizes)
    if total > budget:
        raise SearchBudgetExceeded(
            f"search needs {total} generator assignments, budget is {budget}", nodes=total, budget=budget
        )
    d = len(candidates)
    if d == 0:
        return np.full((1, ext.n), identity_dst, dtype=np.int64)
    found = []
    last = np.asarray(candidates[-1], dtype=np.int64)
    chunk = max(1, _BATCH_CELLS // max(ext.n, 1))
    for head in product(*[list(map(int, c)) for c in candidates[:-1]]):
        for start in range(0, last.size, chunk):
            tail = last[start:start + chunk]
            gimg = np.empty((tail.size, d), dtype=np.int64)
            gimg[:, : d - 1] = head
            gimg[:, d - 1] = tail
            img = ext.extend(gimg, mul_dst, identity_dst)
            ok = ext.hom_mask(img, gimg, mul_dst)
            if bijective:
                ok &= (img == identity_dst).sum(axis=1) == 1
            if ok.any():
                img = img[ok]
                keep = accept(img)
                if keep.any():
                    found.append(img[keep])
                    if limit is not None and sum(len(f) for f in found) >= limit:
                        return np.concatenate(found)[:limit]
    if not found:
        return np.zeros((0, ext.n), dtype=np.int64)
    out = np.concatenate(found)
    order = np.lexsort(out.T[::-1])
    return out[order]


def _generators(G: FiniteGroup) -> tuple[int, ...]:
    return G.minimal_generators if G.prime is not None else G.generators


_ext_cache: "weakref.WeakKeyDictionary[FiniteGroup, _Extender]" = weakref.WeakKeyDictionary()


def _extender(G: FiniteGroup) -> _Extender:
    ext = _ext_cache.get(G)
    if ext is None:
        ext = _Extender(G.mul, _generators(G), G.identity)
        _ext_cache[G] = ext
    return ext


# ----------------------------------------------------------------- types


FLAG_NAMES = ("inner", "class_preserving", "central", "basis_conjugating", "gamma2_trivial")


@dataclass(frozen=True, eq=False)
class GroupAutomorphism:
    parent: FiniteGroup
    image: np.ndarray

    def __post_init__(self):
        img = np.asarray(self.image, dtype=np.int32)
        img.setflags(write=False)
        object.__setattr__(self, "image", img)

    def __call__(self, x: int) -> int:
        return int(self.image[x])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GroupAutomorphism)
            and other.parent is self.parent
            and np.array_equal(other.image, self.image)
        )

    def __hash__(self) -> int:
        return hash(self.image.tobytes())

    def compose(self, other: "GroupAutomorphism") -> "GroupAutomorphism":
        """self after other."""
        return GroupAutomorphism(self.parent, self.image[other.image])

    def inverse(self) -> "GroupAutomorphism":
        inv = np.empty_like(self.image)
        inv[self.image] = np.arange(self.image.size, dtype=np.int32)
        return GroupAutomorphism(self.parent, inv)

    def is_valid(self) -> bool:
        G = self.parent
        img = self.image.astype(np.int64)
        if np.unique(img).size != G.order or img[G.identity] != G.identity:
            return False
        return bool((img[G.mul] == G.mul[img[:, None], img[None, :]]).all())

    @cached_property
    def flags(self) -> dict[str, bool]:
        return classify(self.parent, self.image)


def _drift(G: FiniteGroup, img: np.ndarray) -> np.ndarray:
    """x^-1 * img[x] for every x (works on stacked images too)."""
    return G.mul[G.inv[np.arange(G.order)], img]


def _outside_frattini(G: FiniteGroup) -> np.ndarray:
    return np.nonzero(~G.frattini.mask)[0]


def classify(G: FiniteGroup, img: np.ndarray) -> dict[str, bool]:
    img = np.asarray(img, dtype=np.int64)
    cid = G.class_ids
    drift = _drift(G, img)
    out = np.nonzero(~G.frattini.mask)[0] if G.prime is not None else np.arange(G.order)
    return {
        "inner": img.astype(np.int32).tobytes() in _inner_set(G),
        "class_preserving": bool((cid[img] == cid).all()),
        "central": bool(G.center.mask[drift].all()),
        "basis_conjugating": bool((cid[img[out]] == cid[out]).all()),
        "gamma2_trivial": bool(G.derived.mask[drift].all()),
    }


_inner_cache: "weakref.WeakKeyDictionary[FiniteGroup, frozenset]" = weakref.WeakKeyDictionary()


def _inner_images(G: FiniteGroup) -> np.ndarray:
    Q, proj = quotient_group(G, G.center)
    _, reps = np.unique(proj, return_index=True)
    imgs = G.conj[reps].astype(np.int64)
    return imgs[np.lexsort(imgs.T[::-1])]


def _inner_set(G: FiniteGroup) -> frozenset:
    s = _inner_cache.get(G)
    if s is None:
        s = frozenset(row.astype(np.int32).tobytes() for row in _inner_images(G))
        _inner_cache[G] = s
    return s


class AutomorphismGroup:
    """A set of automorphisms of one group, stored as stacked image arrays."""

    def __init__(self, parent: FiniteGroup, images: np.ndarray, kind: str = ""):
        self.parent = parent
        self.images = np.ascontiguousarray(images, dtype=np.int32)
        self.images.setflags(write=False)
        self.kind = kind

    @property
    def order(self) -> int:
        return int(self.images.shape[0])

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"AutomorphismGroup({self.kind or 'auto'} of {self.parent.name}, order={self.order})"

    @cached_property
    def elements(self) -> list[GroupAutomorphism]:
        return [GroupAutomorphism(self.parent, row) for row in self.images]

    def __iter__(self):
        return iter(self.elements)

    @cached_property
    def _keys(self) -> frozenset:
        return frozenset(row.tobytes() for row in self.images)

    def __contains__(self, alpha) -> bool:
        img = alpha.image if isinstance(alpha, GroupAutomorphism) else np.asarray(alpha)
        return img.astype(np.int32).tobytes() in self._keys

    def issubset(self, other: "AutomorphismGroup") -> bool:
        return self._keys <= other._keys

    def generating_set(self) -> list[int]:
        """Row indices of a small generating set, chosen greedily."""
        chosen: list[int] = []
        span = {np.arange(self.parent.order, dtype=np.int32).tobytes()}
        for k, row in enumerate(self.images):
            if row.tobytes() not in span:
                chosen.append(k)
                span = self._close([self.images[j] for j in chosen])
                if len(span) == self.order:
                    break
        return chosen

    def _close(self, gens: list[np.ndarray]) -> set[bytes]:
        ident = np.arange(self.parent.order, dtype=np.int32)
        seen = {ident.tobytes()}
        frontier = [ident]
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    c = a[g]
                    key = c.tobytes()
                    if key not in seen:
                        seen.add(key)
                        nxt.append(c)
            frontier = nxt
        return seen

    def verify_closure(self) -> bool:
        """True iff the stored set is exactly the group generated by its members."""
        if self.order == 0:
            return False
        gens = [self.images[k] for k in self.generating_set()]
        return self._close(gens) == set(self._keys)

    def is_abelian(self) -> bool:
        gens = [self.images[k] for k in self.generating_set()]
        return all(np.array_equal(a[b], b[a]) for a in gens for b in gens)

    def exponent_divides(self, k: int) -> bool:
        imgs = self.images.astype(np.int64)
        pw = np.broadcast_to(np.arange(self.parent.order), imgs.shape).copy()
        base, e = imgs, k
        while e:
            if e & 1:
                pw = np.take_along_axis(base, pw, axis=1)
            base = np.take_along_axis(base, base, axis=1)
            e >>= 1
        return bool((pw == np.arange(self.parent.order)).all())


# --------------------------------------------------------------- searches


def inner_automorphisms(G: FiniteGroup) -> AutomorphismGroup:
    return AutomorphismGroup(G, _inner_images(G), kind="Inn")


def _run(G, candidates, accept, budget, kind) -> AutomorphismGroup:
    ext = _extender(G)
    imgs = _search(ext, candidates, G.mul, G.identity, accept, budget, bijective=True)
    return AutomorphismGroup(G, imgs, kind=kind)


def class_preserving_automorphisms(G: FiniteGroup, budget: int = DEFAULT_BUDGET) -> AutomorphismGroup:
    cid = G.class_ids
    cands = [np.nonzero(cid == cid[x])[0] for x in _generators(G)]
    return _run(G, cands, lambda img: (cid[img] == cid).all(axis=1), budget, "Aut_c")


def central_automorphisms(G: FiniteGroup, budget: int = DEFAULT_BUDGET) -> AutomorphismGroup:
    Z = G.center
    cands = [np.unique(G.mul[x, Z.array]) for x in _generators(G)]
    zmask = Z.mask
    return _run(G, cands, lambda img: zmask[_drift(G, img)].all(axis=1), budget, "Autcent")


def basis_conjugating_automorphisms(G: FiniteGroup, budget: int = DEFAULT_BUDGET) -> AutomorphismGroup:
    cid = G.class_ids
    out = _outside_frattini(G)
    cands = [np.nonzero(cid == cid[x])[0] for x in _generators(G)]
    return _run(G, cands, lambda img: (cid[img[:, out]] == cid[out]).all(axis=1), budget, "Cb")


def gamma2_trivial_automorphisms(G: FiniteGroup, budget: int = DEFAULT_BUDGET) -> AutomorphismGroup:
    D = G.derived
    cands = [np.unique(G.mul[x, D.array]) for x in _generators(G)]
    dmask = D.mask
    return _run(G, cands, lambda img: dmask[_drift(G, img)].all(axis=1), budget, "Aut^gamma2")


def all_automorphisms(G: FiniteGroup, budget: int = DEFAULT_BUDGET) -> AutomorphismGroup:
    orders = G.element_orders
    cands = [np.nonzero(orders == orders[x])[0] for x in _generators(G)]
    return _run(G, cands, lambda img: np.ones(img.shape[0], dtype=bool), budget, "Aut")


# ------------------------------------------------------- Adney-Yen, Hom_c


@dataclass(frozen=True)
class AdneyYenReport:
    autcent_order: int
    hom_count: int

    @property
    def match(self) -> bool:
        return self.autcent_order == self.hom_count


def adney_yen_check(G: FiniteGroup, budget: int = DEFAULT_BUDGET) -> AdneyYenReport:
    """Compare |Autcent(G)| with |Hom(G/γ₂, Z)| for purely non-abelian G.

    Purely non-abelian is certified by the sufficient condition Z(G) ≤ Φ(G).
    """
    if G.is_abelian or not (G.center <= G.frattini):
        raise PrecondFailed("Z(G) is not contained in the Frattini subgroup")
    ab, _ = quotient_group(G, G.derived)
    h = hom_count(invariant_factors(ab), invariant_factors(G.center))
    return AdneyYenReport(central_automorphisms(G, budget).order, h)


@dataclass(frozen=True)
class HomcResult:
    count: int
    quotient: FiniteGroup
    maps: np.ndarray = field(repr=False)  # maps[k, q] = element of γ₂(G) ⊂ G


def homc_enumerate(G: FiniteGroup, budget: int = DEFAULT_BUDGET) -> HomcResult:
    """Homomorphisms f: G/Z → γ₂(G) with f(gZ) ∈ [g, G] for every g."""
    if G.nilpotency_class != 2:
        raise WrongClass(f"{G.name} has class {G.nilpotency_class}, expected exactly 2")
    Q, proj = quotient_group(G, G.center)
    _, reps = np.unique(proj, return_index=True)
    # allowed[q, y]: y ∈ [rep(q), G]
    comm_vals = G.mul[G.inv[reps][:, None], G.conj[:, reps].T]
    allowed = np.zeros((Q.order, G.order), dtype=bool)
    np.put_along_axis(allowed, comm_vals, True, axis=1)
    qgens = Q.minimal_generators
    ext = _Extender(Q.mul, qgens, Q.identity)
    cands = [np.nonzero(allowed[q])[0] for q in qgens]
    accept = lambda img: allowed[np.arange(Q.order), img].all(axis=1)
    maps = _search(ext, cands, G.mul, G.identity, accept, budget, bijective=False)
    return HomcResult(int(maps.shape[0]), Q, maps)
