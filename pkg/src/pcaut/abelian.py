"""Finite abelian groups: invariant factors and Hom counting."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NotAbelian
from .group import FiniteGroup, SubgroupSet, quotient_group


@dataclass(frozen=True)
class AbelianInvariants:
    invariant_factors: tuple[int, ...]

    def __post_init__(self):
        f = self.invariant_factors
        if any(d <= 1 for d in f):
            raise ValueError("invariant factors must exceed 1")
        if any(b % a for a, b in zip(f, f[1:])):
            raise ValueError(f"divisibility chain fails: {f}")

    @classmethod
    def from_cyclic_orders(cls, orders) -> "AbelianInvariants":
        """Normalize any list of cyclic orders (e.g. [2, 3] -> [6])."""
        prime_parts: dict[int, list[int]] = {}
        for n in orders:
            for p, e in _factor(n).items():
                prime_parts.setdefault(p, []).append(p**e)
        k = max((len(v) for v in prime_parts.values()), default=0)
        factors = [1] * k
        for parts in prime_parts.values():
            parts = sorted(parts)
            for i, q in enumerate(parts):
                factors[k - len(parts) + i] *= q
        return cls(tuple(factors))

    @property
    def order(self) -> int:
        return math.prod(self.invariant_factors)

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    def __iter__(self):
        return iter(self.invariant_factors)


def _factor(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _require_abelian(A: FiniteGroup) -> None:
    if not A.is_abelian:
        raise NotAbelian(f"{A.name} is not abelian")


def invariant_factors(A: FiniteGroup | SubgroupSet) -> AbelianInvariants:
    """Invariant factors d1 | d2 | ... of a finite abelian group.

    Splits off a cyclic subgroup generated by an element of maximal order (always
    a direct factor in an abelian group) and recurses on the quotient.
    """
    if isinstance(A, SubgroupSet):
        A = A.as_group()
    _require_abelian(A)
    factors = []
    G = A
    while G.order > 1:
        orders = G.element_orders
        g = int(np.argmax(orders))
        factors.append(int(orders[g]))
        G, _ = quotient_group(G, G.subgroup([g]))
    return AbelianInvariants(tuple(sorted(factors)))


def hom_count(A: AbelianInvariants, B: AbelianInvariants) -> int:
    """|Hom(A, B)| = product of gcd(a_i, b_j) over cyclic factors."""
    return math.prod(math.gcd(a, b) for a in A for b in B)


def is_homocyclic(A: FiniteGroup | SubgroupSet) -> bool:
    f = invariant_factors(A).invariant_factors
    return len(set(f)) <= 1


def homocyclic_exponent(A: FiniteGroup | SubgroupSet) -> int | None:
    f = invariant_factors(A).invariant_factors
    if not f:
        return 1
    return f[0] if len(set(f)) == 1 else None
