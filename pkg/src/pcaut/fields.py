"""Small prime-power fields F_{p^m} as coefficient vectors over F_p."""

from __future__ import annotations

from itertools import product


def _poly_mod(a: list[int], mod: list[int], p: int) -> list[int]:
    """Remainder of a modulo the monic polynomial mod (coefficients low degree first)."""
    a = list(a)
    dm = len(mod) - 1
    for k in range(len(a) - 1, dm - 1, -1):
        c = a[k] % p
        if c:
            for i in range(dm + 1):
                a[k - dm + i] = (a[k - dm + i] - c * mod[i]) % p
    return [x % p for x in a[:dm]] + [0] * max(0, dm - len(a))


def _monic_polys(p: int, deg: int):
    """All monic polynomials of degree ``deg``."""
    for coeffs in product(range(p), repeat=deg):
        yield list(coeffs) + [1]


def is_irreducible(poly: list[int], p: int) -> bool:
    deg = len(poly) - 1
    if deg <= 1:
        return deg == 1
    for d in range(1, deg // 2 + 1):
        for q in _monic_polys(p, d):
            if not any(_poly_mod(poly, q, p)):
                return False
    return True


def smallest_irreducible(p: int, m: int) -> list[int]:
    """Lexicographically smallest monic irreducible of degree m over F_p.

    Coefficient tuples (c0, c1, ..., c_{m-1}) are compared with c0 first.
    """
    for coeffs in product(range(p), repeat=m):
        poly = list(coeffs) + [1]
        if is_irreducible(poly, p):
            return poly
    raise ValueError(f"no irreducible polynomial of degree {m} over F_{p}")


class GF:
    """F_{p^m}; elements are tuples of m coefficients (low degree first)."""

    def __init__(self, p: int, m: int):
        self.p = p
        self.m = m
        self.modulus = smallest_irreducible(p, m)

    def elements(self):
        return [tuple(c) for c in product(range(self.p), repeat=self.m)]

    def basis(self) -> list[tuple[int, ...]]:
        return [tuple(int(i == k) for i in range(self.m)) for k in range(self.m)]

    def zero(self):
        return (0,) * self.m

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def neg(self, a):
        return tuple((-x) % self.p for x in a)

    def mul(self, a, b):
        prod = [0] * (2 * self.m - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        return tuple(_poly_mod(prod, self.modulus, self.p))
