"""Exact linear algebra over F_p on small integer matrices."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotStronglySkew, OddDimension


@dataclass(frozen=True, eq=False)
class FpMatrix:
    prime: int
    entries: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.entries, dtype=np.int64) % self.prime
        if a.ndim != 2:
            raise ValueError("FpMatrix needs a 2-d array")
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FpMatrix)
            and other.prime == self.prime
            and np.array_equal(other.entries, self.entries)
        )

    def __add__(self, other: "FpMatrix") -> "FpMatrix":
        return FpMatrix(self.prime, self.entries + other.entries)

    def scale(self, c: int) -> "FpMatrix":
        return FpMatrix(self.prime, self.entries * c)

    def rank(self) -> int:
        return rank(self.entries, self.prime)

    def det(self) -> int:
        return det(self.entries, self.prime)

    def is_strongly_skew(self) -> bool:
        return is_strongly_skew(self.entries, self.prime)

    def pfaffian(self) -> int:
        return pfaffian(self.entries, self.prime)


def row_reduce(a, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod p and the pivot columns."""
    m = np.array(a, dtype=np.int64) % p
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        m[[r, k]] = m[[k, r]]
        m[r] = (m[r] * pow(int(m[r, c]), -1, p)) % p
        others = [i for i in range(rows) if i != r and m[i, c]]
        for i in others:
            m[i] = (m[i] - m[i, c] * m[r]) % p
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a, p: int) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    return len(row_reduce(a, p)[1])


def det(a, p: int) -> int:
    m = np.array(a, dtype=np.int64) % p
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("determinant needs a square matrix")
    out = 1
    for c in range(n):
        nz = np.nonzero(m[c:, c])[0]
        if nz.size == 0:
            return 0
        k = c + int(nz[0])
        if k != c:
            m[[c, k]] = m[[k, c]]
            out = -out
        piv = int(m[c, c])
        out = out * piv % p
        inv = pow(piv, -1, p)
        for i in range(c + 1, n):
            if m[i, c]:
                m[i] = (m[i] - m[i, c] * inv * m[c]) % p
    return out % p


def nullspace(a, p: int) -> np.ndarray:
    """Basis of {v : a v = 0} as rows."""
    a = np.asarray(a, dtype=np.int64)
    cols = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    red, pivots = row_reduce(a, p)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = np.zeros(cols, dtype=np.int64)
        v[f] = 1
        for r, c in enumerate(pivots):
            v[c] = (-red[r, f]) % p
        basis.append(v)
    return np.array(basis, dtype=np.int64).reshape(len(basis), cols)


def span_rows(vectors, p: int) -> np.ndarray:
    """Echelon basis of the row span."""
    v = np.asarray(vectors, dtype=np.int64)
    if v.size == 0:
        return v.reshape(0, v.shape[-1] if v.ndim == 2 else 0)
    red, piv = row_reduce(v, p)
    return red[: len(piv)]


def is_strongly_skew(a, p: int) -> bool:
    a = np.asarray(a, dtype=np.int64) % p
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        return False
    return bool((np.diag(a) == 0).all() and ((a + a.T) % p == 0).all())


def pfaffian(a, p: int) -> int:
    """Pfaffian by expansion along the first row."""
    a = np.asarray(a, dtype=np.int64) % p
    if not is_strongly_skew(a, p):
        raise NotStronglySkew("matrix is not strongly skew-symmetric")
    n = a.shape[0]
    if n % 2:
        raise OddDimension(f"Pfaffian needs even dimension, got {n}")
    return _pf(a, list(range(n)), p)


def _pf(a: np.ndarray, idx: list[int], p: int) -> int:
    if not idx:
        return 1
    i = idx[0]
    total = 0
    for k in range(1, len(idx)):
        j = idx[k]
        if a[i, j]:
            rest = idx[1:k] + idx[k + 1:]
            sign = 1 if k % 2 else -1
            total += sign * int(a[i, j]) * _pf(a, rest, p)
    return total % p
