"""Finite groups as explicit multiplication tables.

Elements are the integers ``0 .. order-1``. All heavy lifting is done with
numpy fancy indexing on the table, so series, classes and quotients stay cheap
up to the size cap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    IncompatibleIdentification,
    InvalidGroupTable,
    NotASubgroup,
    NotCentral,
    NotNormal,
    NotPGroup,
    SizeCapExceeded,
)

DEFAULT_CAP = 4096

__all__ = [
    "DEFAULT_CAP",
    "FiniteGroup",
    "SubgroupSet",
    "ConjugacyClass",
    "prime_power",
    "commutator_set",
    "conjugacy_classes",
    "lower_central_series",
    "upper_central_series",
    "frattini_subgroup",
    "centralizer",
    "quotient_group",
    "direct_product",
    "central_product",
    "relabel",
    "cyclic_group",
    "abelian_group",
]


def prime_power(n: int) -> tuple[int, int] | None:
    """Return ``(p, e)`` with ``n == p**e`` and ``e >= 1``, else None."""
    if n < 2:
        return None
    p = next(q for q in range(2, n + 1) if n % q == 0)
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return (p, e) if n == 1 else None


class FiniteGroup:
    """A finite group given by its full multiplication table.

    ``mul[a, b]`` is the index of ``a*b``. ``generators`` is an ordered tuple of
    distinguished generators; ``labels`` are display strings (normal-form words
    when the group came from a presentation).
    """

    def __init__(
        self,
        mul,
        generators: Sequence[int],
        labels: Sequence[str] | None = None,
        name: str = "G",
        prime: int | None = None,
        cap: int | None = DEFAULT_CAP,
        validate: bool = True,
    ):
        mul = np.asarray(mul)
        if mul.ndim != 2 or mul.shape[0] != mul.shape[1] or mul.shape[0] == 0:
            raise InvalidGroupTable("multiplication table must be a non-empty square array")
        n = mul.shape[0]
        if cap is not None and n > cap:
            raise SizeCapExceeded(f"group order {n} exceeds cap {cap}", order=n, cap=cap)
        self.mul = np.ascontiguousarray(mul, dtype=np.int32)
        self.mul.setflags(write=False)
        self.order = n
        self.name = name
        self.generators = tuple(int(g) for g in generators)
        if labels is None:
            labels = [f"e{k}" for k in range(n)]
        if len(labels) != n:
            raise InvalidGroupTable("label count does not match group order")
        self.labels = tuple(labels)

        ar = np.arange(n)
        rows = np.nonzero((self.mul == ar[None, :]).all(axis=1))[0]
        if rows.size != 1:
            raise InvalidGroupTable("no two-sided identity element")
        self.identity = int(rows[0])
        hits = self.mul == self.identity
        self.inv = np.argmax(hits, axis=1).astype(np.int32)
        self.inv.setflags(write=False)

        pp = prime_power(n)
        if prime is None and pp is not None:
            prime = pp[0]
        elif prime is not None and (pp is None or pp[0] != prime):
            if n != 1:
                raise NotPGroup(f"order {n} is not a power of {prime}")
        self.prime = prime
        if validate:
            self.validate()

    # ------------------------------------------------------------------ checks
    def validate(self) -> None:
        """Verify the five table invariants; raise InvalidGroupTable on failure."""
        n, mul, e = self.order, self.mul, self.identity
        ar = np.arange(n)
        srt_rows = np.sort(mul, axis=1)
        srt_cols = np.sort(mul, axis=0)
        if not (srt_rows == ar[None, :]).all() or not (srt_cols == ar[:, None]).all():
            raise InvalidGroupTable("table is not a Latin square", check="latin")
        if not ((mul[e] == ar).all() and (mul[:, e] == ar).all()):
            raise InvalidGroupTable("identity law fails", check="identity")
        if not (mul[ar, self.inv] == e).all():
            raise InvalidGroupTable("inverse law fails", check="inverse")
        for g in self.generators:
            if not (0 <= g < n):
                raise InvalidGroupTable(f"generator {g} out of range", check="generators")
            # mul[mul[a][b]][g] == mul[a][mul[b][g]] for all a, b
            lhs = mul[mul, g]
            rhs = mul[ar[:, None], mul[:, g][None, :]]
            if not np.array_equal(lhs, rhs):
                raise InvalidGroupTable(
                    f"associativity fails against generator {g}", check="associativity"
                )
        if self.closure(self.generators).sum() != n:
            raise InvalidGroupTable("generators do not generate the group", check="generation")

    # -------------------------------------------------------------- basics
    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name!r}, order={self.order})"

    def product(self, *xs: int) -> int:
        out = self.identity
        for x in xs:
            out = int(self.mul[out, x])
        return out

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = int(self.inv[x]), -k
        out, base = self.identity, int(x)
        while k:
            if k & 1:
                out = int(self.mul[out, base])
            base = int(self.mul[base, base])
            k >>= 1
        return out

    def power_map(self, k: int) -> np.ndarray:
        """Array of ``x**k`` for every element x (k >= 0)."""
        ar = np.arange(self.order)
        out = np.full(self.order, self.identity, dtype=np.int64)
        base = ar.copy()
        while k:
            if k & 1:
                out = self.mul[out, base]
            base = self.mul[base, base]
            k >>= 1
        return out

    def commutator(self, a: int, b: int) -> int:
        """[a, b] = a^-1 b^-1 a b."""
        m, inv = self.mul, self.inv
        return int(m[m[inv[a], inv[b]], m[a, b]])

    @cached_property
    def element_orders(self) -> np.ndarray:
        n = self.order
        ar = np.arange(n)
        orders = np.zeros(n, dtype=np.int64)
        cur = ar.copy()
        k = 1
        while (orders == 0).any():
            hit = (cur == self.identity) & (orders == 0)
            orders[hit] = k
            cur = self.mul[cur, ar]
            k += 1
        return orders

    @cached_property
    def conj(self) -> np.ndarray:
        """``conj[g, x] = g^-1 x g``."""
        m = self.mul
        left = m[self.inv]  # left[g, x] = g^-1 x
        return m[left, np.arange(self.order)[:, None]].astype(np.int32)

    def closure(self, elements: Iterable[int], start: Iterable[int] = ()) -> np.ndarray:
        """Boolean mask of the subgroup generated by ``elements`` (and ``start``)."""
        n = self.order
        gens = np.unique(np.fromiter((int(x) for x in elements), dtype=np.int64))
        mask = np.zeros(n, dtype=bool)
        frontier = np.unique(np.fromiter([self.identity, *map(int, start)], dtype=np.int64))
        mask[frontier] = True
        if gens.size == 0:
            if frontier.size > 1:
                return self.closure(frontier)
            return mask
        gens = np.unique(np.concatenate([gens, frontier]))
        while frontier.size:
            nxt = self.mul[frontier][:, gens].ravel()
            nxt = np.unique(nxt[~mask[nxt]])
            mask[nxt] = True
            frontier = nxt
        return mask

    def subgroup(self, elements: Iterable[int]) -> "SubgroupSet":
        """Subgroup generated by ``elements``."""
        return SubgroupSet.from_mask(self, self.closure(elements))

    @cached_property
    def whole(self) -> "SubgroupSet":
        return SubgroupSet.from_mask(self, np.ones(self.order, dtype=bool))

    @cached_property
    def trivial(self) -> "SubgroupSet":
        m = np.zeros(self.order, dtype=bool)
        m[self.identity] = True
        return SubgroupSet.from_mask(self, m)

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.T))

    @cached_property
    def center(self) -> "SubgroupSet":
        mask = (self.mul == self.mul.T).all(axis=1)
        return SubgroupSet.from_mask(self, mask)

    @cached_property
    def class_ids(self) -> np.ndarray:
        """Class index per element; classes are numbered by least member."""
        n = self.order
        ids = np.full(n, -1, dtype=np.int64)
        k = 0
        for x in range(n):
            if ids[x] < 0:
                ids[self.conj[:, x]] = k
                k += 1
        return ids

    @cached_property
    def class_sizes(self) -> np.ndarray:
        """Per element, the size of its conjugacy class."""
        counts = np.bincount(self.class_ids)
        return counts[self.class_ids]

    @cached_property
    def lower_central(self) -> tuple["SubgroupSet", ...]:
        series = [self.whole]
        while True:
            nxt = commutator_subgroup(series[-1], self.whole)
            if nxt == series[-1]:
                break
            series.append(nxt)
        return tuple(series)

    @cached_property
    def is_nilpotent(self) -> bool:
        return self.lower_central[-1].order == 1

    @cached_property
    def nilpotency_class(self) -> int | None:
        """Nilpotency class (0 for the trivial group), None if not nilpotent."""
        return len(self.lower_central) - 1 if self.is_nilpotent else None

    def gamma(self, i: int) -> "SubgroupSet":
        """γ_i(G), 1-based; terms past the end repeat the last one."""
        lcs = self.lower_central
        return lcs[min(i, len(lcs)) - 1]

    @cached_property
    def derived(self) -> "SubgroupSet":
        return self.gamma(2)

    @cached_property
    def upper_central(self) -> tuple["SubgroupSet", ...]:
        series = [self.trivial]
        while True:
            Q, proj = quotient_group(self, series[-1])
            zq = Q.center.mask
            nxt = SubgroupSet.from_mask(self, zq[proj])
            if nxt == series[-1]:
                break
            series.append(nxt)
        return tuple(series)

    def require_p_group(self) -> int:
        if self.prime is None:
            if self.order == 1:
                raise NotPGroup("trivial group has no distinguished prime")
            raise NotPGroup(f"{self.name} (order {self.order}) is not a p-group")
        return self.prime

    @cached_property
    def frattini(self) -> "SubgroupSet":
        if self.order == 1:
            return self.trivial
        p = self.require_p_group()
        powers = np.unique(self.power_map(p))
        return SubgroupSet.from_mask(self, self.closure(powers, start=self.derived.members))

    @cached_property
    def rank(self) -> int:
        """d(G): minimal number of generators of a p-group."""
        if self.order == 1:
            return 0
        p = self.require_p_group()
        return round(math.log(self.order // self.frattini.order, p))

    @cached_property
    def minimal_generators(self) -> tuple[int, ...]:
        """A minimal generating tuple, preferring the distinguished generators."""
        if self.order == 1:
            return ()
        if self.prime is None:
            return self.generators
        chosen: list[int] = []
        span = self.frattini.mask.copy()
        candidates = list(self.generators) + list(range(self.order))
        for x in candidates:
            if not span[x]:
                chosen.append(int(x))
                span = self.closure(chosen, start=self.frattini.members)
                if span.all():
                    break
        return tuple(chosen)


@dataclass(frozen=True, eq=False)
class SubgroupSet:
    """A subgroup stored as a sorted array of element indices."""

    parent: FiniteGroup
    members: tuple[int, ...]

    @classmethod
    def from_mask(cls, parent: FiniteGroup, mask: np.ndarray) -> "SubgroupSet":
        return cls(parent, tuple(int(x) for x in np.nonzero(mask)[0]))

    @classmethod
    def checked(cls, parent: FiniteGroup, elements: Iterable[int]) -> "SubgroupSet":
        """Build from an explicit element set, verifying the subgroup axioms."""
        mem = sorted(set(int(x) for x in elements))
        mask = np.zeros(parent.order, dtype=bool)
        mask[mem] = True
        arr = np.asarray(mem)
        if not mask[parent.identity]:
            raise NotASubgroup("missing identity")
        if not mask[parent.mul[np.ix_(arr, arr)]].all() or not mask[parent.inv[arr]].all():
            raise NotASubgroup("not closed under multiplication and inverses")
        if parent.order % len(mem):
            raise NotASubgroup("order does not divide group order")
        return cls(parent, tuple(mem))

    @cached_property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.parent.order, dtype=bool)
        m[list(self.members)] = True
        return m

    @cached_property
    def array(self) -> np.ndarray:
        return np.asarray(self.members, dtype=np.int64)

    @property
    def order(self) -> int:
        return len(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, x) -> bool:
        return bool(self.mask[int(x)])

    def __iter__(self):
        return iter(self.members)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SubgroupSet):
            return NotImplemented
        return self.parent is other.parent and self.members == other.members

    def __hash__(self) -> int:
        return hash((id(self.parent), self.members))

    def __le__(self, other: "SubgroupSet") -> bool:
        return bool((~self.mask | other.mask).all())

    def __repr__(self) -> str:
        return f"SubgroupSet(order={self.order} in {self.parent.name})"

    def is_normal(self) -> bool:
        G = self.parent
        gens = G.generators or range(G.order)
        for g in gens:
            if not self.mask[G.conj[g, self.array]].all():
                return False
        return True

    def is_central(self) -> bool:
        return self <= self.parent.center

    def is_cyclic(self) -> bool:
        return bool((self.parent.element_orders[self.array] == self.order).any())

    def join(self, other: "SubgroupSet") -> "SubgroupSet":
        return self.parent.subgroup(self.members + other.members)

    def intersection(self, other: "SubgroupSet") -> "SubgroupSet":
        return SubgroupSet.from_mask(self.parent, self.mask & other.mask)

    def as_group(self, name: str | None = None) -> FiniteGroup:
        """Re-index the subgroup as a standalone FiniteGroup."""
        G = self.parent
        arr = self.array
        index = np.full(G.order, -1, dtype=np.int64)
        index[arr] = np.arange(arr.size)
        table = index[G.mul[np.ix_(arr, arr)]]
        sub = FiniteGroup(table, [0], validate=False, cap=None)
        gens = [int(x) for x in _small_generating_set(sub)]
        return FiniteGroup(
            table,
            gens,
            labels=[G.labels[x] for x in arr],
            name=name or f"sub({G.name})",
            cap=None,
        )


@dataclass(frozen=True)
class ConjugacyClass:
    representative: int
    members: frozenset[int]
    commutator_set: frozenset[int]

    @property
    def size(self) -> int:
        return len(self.members)


def _small_generating_set(G: FiniteGroup) -> list[int]:
    """Greedy generating set: repeatedly add the element of largest order not yet covered."""
    span = np.zeros(G.order, dtype=bool)
    span[G.identity] = True
    gens: list[int] = []
    orders = G.element_orders
    by_order = np.argsort(-orders, kind="stable")
    for x in by_order:
        if not span[x]:
            gens.append(int(x))
            span = G.closure(gens)
            if span.all():
                break
    return gens


def commutator_subgroup(A: SubgroupSet, B: SubgroupSet) -> SubgroupSet:
    """[A, B], the subgroup generated by all [a, b]."""
    G = A.parent
    a = A.array[:, None]
    b = B.array[None, :]
    m = G.mul
    comms = m[G.inv[a], G.conj[b, a]]
    return G.subgroup(np.unique(comms))


# ---------------------------------------------------------------- operations


def commutator_set(G: FiniteGroup, x: int) -> frozenset[int]:
    """[x, G] = {x^-1 g^-1 x g : g in G} as a set."""
    vals = G.mul[G.inv[x], G.conj[:, x]]
    return frozenset(int(v) for v in np.unique(vals))


def conjugacy_classes(G: FiniteGroup) -> list[ConjugacyClass]:
    ids = G.class_ids
    out = []
    for k in range(int(ids.max()) + 1):
        rep = int(np.argmax(ids == k))
        members = frozenset(int(v) for v in np.nonzero(ids == k)[0])
        out.append(ConjugacyClass(rep, members, commutator_set(G, rep)))
    return out


def lower_central_series(G: FiniteGroup) -> list[SubgroupSet]:
    return list(G.lower_central)


def upper_central_series(G: FiniteGroup) -> list[SubgroupSet]:
    return list(G.upper_central)


def frattini_subgroup(G: FiniteGroup) -> SubgroupSet:
    return G.frattini


def centralizer(G: FiniteGroup, S) -> SubgroupSet:
    """C_G(S) for a SubgroupSet, an element index, or an iterable of elements."""
    if isinstance(S, SubgroupSet):
        arr = S.array
    elif isinstance(S, (int, np.integer)):
        arr = np.asarray([int(S)])
    else:
        arr = np.asarray(sorted(set(int(s) for s in S)), dtype=np.int64)
    m = G.mul
    mask = (m[:, arr] == m[arr, :].T).all(axis=1)
    return SubgroupSet.from_mask(G, mask)


def normal_closure(G: FiniteGroup, elements: Iterable[int]) -> SubgroupSet:
    """Smallest normal subgroup containing ``elements``."""
    conj = np.unique(G.conj[:, np.asarray(list(elements), dtype=np.int64)])
    return G.subgroup(conj)


def normal_subgroups(G: FiniteGroup) -> list[SubgroupSet]:
    """All normal subgroups, ordered by size then members.

    Every normal subgroup is a join of normal closures of single elements, so
    the lattice is built by closing those under pairwise joins.
    """
    found: dict[bytes, SubgroupSet] = {}
    reps = np.unique(G.class_ids, return_index=True)[1]
    for x in reps:
        N = normal_closure(G, [int(x)])
        found.setdefault(N.mask.tobytes(), N)
    atoms = list(found.values())
    frontier = list(atoms)
    while frontier:
        nxt = []
        for A in frontier:
            for B in atoms:
                if B <= A:
                    continue
                J = SubgroupSet.from_mask(G, G.closure(B.members, start=A.members))
                key = J.mask.tobytes()
                if key not in found:
                    found[key] = J
                    nxt.append(J)
        frontier = nxt
    return sorted(found.values(), key=lambda S: (S.order, S.members))


def quotient_group(G: FiniteGroup, N: SubgroupSet, name: str | None = None):
    """G/N with its projection array ``proj[x] = coset index of x``.

    Cosets are numbered by their least element index.
    """
    if N.parent is not G:
        raise NotASubgroup("subgroup belongs to a different group")
    if not N.is_normal():
        raise NotNormal(f"subgroup of order {N.order} is not normal in {G.name}")
    reps = G.mul[:, N.array].min(axis=1)
    uniq = np.unique(reps)
    proj = np.searchsorted(uniq, reps)
    table = proj[G.mul[np.ix_(uniq, uniq)]]
    gens = sorted({int(proj[g]) for g in G.generators} - {int(proj[G.identity])})
    Q = FiniteGroup(
        table,
        gens,
        labels=[G.labels[r] for r in uniq],
        name=name or f"{G.name}/N{N.order}",
        cap=None,
        validate=False,
    )
    return Q, proj


def direct_product(groups: Sequence[FiniteGroup], name: str | None = None) -> FiniteGroup:
    """External direct product; element (a, b, ...) is encoded mixed-radix, last factor fastest."""
    if not groups:
        raise ValueError("need at least one factor")
    table = groups[0].mul.astype(np.int64)
    labels = [(l,) for l in groups[0].labels]
    gens = [(g,) for g in groups[0].generators]
    idents = (groups[0].identity,)
    for H in groups[1:]:
        n1, n2 = table.shape[0], H.order
        big = table[:, None, :, None] * n2 + H.mul[None, :, None, :]
        table = big.reshape(n1 * n2, n1 * n2)
        labels = [a + (b,) for a in labels for b in H.labels]
        gens = [g + (H.identity,) for g in gens] + [idents + (h,) for h in H.generators]
        idents = idents + (H.identity,)
    sizes = [H.order for H in groups]

    def encode(t):
        k = 0
        for x, s in zip(t, sizes):
            k = k * s + x
        return k

    total = int(np.prod(sizes))
    cap = max(DEFAULT_CAP, max(H.order for H in groups))
    if total > cap:
        raise SizeCapExceeded(f"direct product of order {total} exceeds cap", order=total)
    return FiniteGroup(
        table,
        [encode(g) for g in gens],
        labels=["(" + ",".join(t) + ")" for t in labels],
        name=name or "x".join(H.name for H in groups),
        cap=None,
        validate=False,
    )


def central_product(
    groups: Sequence[FiniteGroup],
    amalgam: Sequence[int],
    name: str | None = None,
    cap: int | None = DEFAULT_CAP,
) -> FiniteGroup:
    """Central product of ``groups`` with ``amalgam[i]`` generating a central cyclic
    subgroup of ``groups[i]``; the identification sends every ``amalgam[i]`` to
    one common generator of X.
    """
    if len(groups) != len(amalgam):
        raise IncompatibleIdentification("one amalgam generator per factor is required")
    if len(groups) == 1:
        return groups[0]
    q = None
    for G, c in zip(groups, amalgam):
        if not G.center.mask[c]:
            raise NotCentral(f"amalgam element {c} is not central in {G.name}")
        oc = int(G.element_orders[c])
        if q is None:
            q = oc
        elif oc != q:
            raise IncompatibleIdentification(
                f"amalgamated cyclic subgroups have different orders ({q} vs {oc})"
            )
    m = len(groups)
    total = int(np.prod([G.order for G in groups])) // q ** (m - 1)
    if cap is not None and total > cap:
        raise SizeCapExceeded(f"central product of order {total} exceeds cap {cap}", order=total)
    D = direct_product(groups)
    sizes = [G.order for G in groups]

    def encode(t):
        k = 0
        for x, s in zip(t, sizes):
            k = k * s + x
        return k

    # N = {(c1^a1, ..., cm^am) : a1 + ... + am = 0 mod q}, generated by c1 c_i^-1
    n_gens = []
    for i in range(1, m):
        t = [G.identity for G in groups]
        t[0] = groups[0].power(amalgam[0], 1)
        t[i] = groups[i].power(amalgam[i], -1)
        n_gens.append(encode(t))
    N = D.subgroup(n_gens)
    Q, _ = quotient_group(D, N, name=name or "∘".join(G.name for G in groups))
    Q.validate()
    return Q


def relabel(G: FiniteGroup, perm: Sequence[int], name: str | None = None) -> FiniteGroup:
    """Isomorphic copy with element x renamed to ``perm[x]``."""
    perm = np.asarray(perm, dtype=np.int64)
    inv = np.empty_like(perm)
    inv[perm] = np.arange(perm.size)
    table = perm[G.mul[np.ix_(inv, inv)]]
    labels = [G.labels[inv[k]] for k in range(G.order)]
    return FiniteGroup(
        table,
        [int(perm[g]) for g in G.generators],
        labels=labels,
        name=name or G.name,
        cap=None,
    )


def cyclic_group(n: int, name: str | None = None) -> FiniteGroup:
    ar = np.arange(n)
    table = (ar[:, None] + ar[None, :]) % n
    gens = [1] if n > 1 else []
    return FiniteGroup(table, gens, labels=[f"a^{k}" if k else "1" for k in range(n)],
                       name=name or f"C{n}")


def abelian_group(orders: Sequence[int], name: str | None = None) -> FiniteGroup:
    """Direct product of cyclic groups of the given orders."""
    orders = list(orders) or [1]
    G = direct_product([cyclic_group(k) for k in orders])
    G.name = name or "x".join(f"C{k}" for k in orders)
    return G
