"""Graded Lie ring of the lower central series and its reduction mod p.

Component i of the ring is L_i = γ_i/γ_{i+1}; the bracket of two cosets is the
coset of the group commutator of representatives. The mod-p algebra has
components γ_i/(γ_i^p γ_{i+1}) with greedy bases (least element index first).
Reports built from it only expose basis-independent facts: dimensions, ranks,
subspace relations and pencil nonsingularity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .abelian import AbelianInvariants, invariant_factors
from .errors import ConditionsNotMet, MixedPrimes, NotNilpotent
from .group import FiniteGroup, SubgroupSet, quotient_group
from .linalg import FpMatrix, det, nullspace, rank, span_rows

PENCIL_EXHAUSTIVE_LIMIT = 10**4


def _commutators(G: FiniteGroup, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """Table [x, y] for x in xs (rows) and y in ys (columns)."""
    return G.mul[G.inv[xs][:, None], G.conj[ys[None, :], xs[:, None]]]


def _coset_index(G: FiniteGroup, upper: SubgroupSet, lower: SubgroupSet):
    """Least-element representatives of upper/lower and an index array over G (-1 outside)."""
    reps_all = G.mul[upper.array][:, lower.array].min(axis=1)
    reps = np.unique(reps_all)
    index = np.full(G.order, -1, dtype=np.int64)
    index[upper.array] = np.searchsorted(reps, reps_all)
    return reps, index


@dataclass
class LieComponent:
    degree: int
    upper: SubgroupSet
    lower: SubgroupSet
    reps: np.ndarray
    index: np.ndarray

    @property
    def order(self) -> int:
        return self.upper.order // self.lower.order


class GradedLieRing:
    def __init__(self, G: FiniteGroup):
        if not G.is_nilpotent:
            raise NotNilpotent(f"{G.name} is not nilpotent")
        self.group = G
        lcs = G.lower_central
        self.nilpotency_class = len(lcs) - 1
        self.components: list[LieComponent] = []
        for i in range(self.nilpotency_class):
            reps, index = _coset_index(G, lcs[i], lcs[i + 1])
            self.components.append(LieComponent(i + 1, lcs[i], lcs[i + 1], reps, index))
        self._brackets: dict[tuple[int, int], np.ndarray] = {}

    def component(self, i: int) -> LieComponent:
        return self.components[i - 1]

    def bracket_table(self, i: int, j: int) -> np.ndarray:
        """bracket[a, b] = index in L_{i+j} of [rep_a, rep_b] (zeros past the class)."""
        key = (i, j)
        if key not in self._brackets:
            A, B = self.component(i), self.component(j)
            if i + j > self.nilpotency_class:
                tab = np.zeros((A.reps.size, B.reps.size), dtype=np.int64)
            else:
                comm = _commutators(self.group, A.reps, B.reps)
                tab = self.component(i + j).index[comm]
            self._brackets[key] = tab
        return self._brackets[key]

    def invariants(self, i: int) -> AbelianInvariants:
        C = self.component(i)
        H = C.upper.as_group()
        N = H.subgroup(np.searchsorted(C.upper.array, C.lower.array))
        Q, _ = quotient_group(H, N)
        return invariant_factors(Q)

    def zero_index(self, i: int) -> int:
        C = self.component(i)
        return int(C.index[self.group.identity])

    def verify(self) -> dict[str, bool]:
        """Exhaustive checks of well-definedness, alternation and generation."""
        G = self.group
        c = self.nilpotency_class
        well_defined = True
        for i in range(1, c + 1):
            for j in range(1, c + 1 - i):
                A, B = self.component(i), self.component(j)
                comm = _commutators(G, A.upper.array, B.upper.array)
                got = self.component(i + j).index[comm]
                want = self.bracket_table(i, j)[A.index[A.upper.array][:, None], B.index[B.upper.array][None, :]]
                well_defined &= bool(np.array_equal(got, want))
        alternating = all(
            bool((np.diag(self.bracket_table(i, i)) == self.zero_index(2 * i)).all())
            for i in range(1, c // 2 + 1)
        )
        generated = True
        for i in range(1, c):
            nxt = self.component(i + 1)
            vals = np.unique(self.bracket_table(i, 1))
            span = G.closure(nxt.reps[vals], start=nxt.lower.members)
            generated &= int(span.sum()) == nxt.upper.order
        return {"well_defined": well_defined, "alternating": alternating, "generated_by_degree_one": generated}


def build_graded_lie_ring(G: FiniteGroup) -> GradedLieRing:
    return GradedLieRing(G)


# ------------------------------------------------------------ mod p algebra


@dataclass
class GradedLieAlgebraModP:
    prime: int
    dims: list[int]
    bases: list[list[int]]
    coords: list[np.ndarray] = field(repr=False)
    structure: dict[tuple[int, int], np.ndarray] = field(repr=False)

    @property
    def m(self) -> int:
        return self.dims[0] if self.dims else 0

    @property
    def n(self) -> int:
        return self.dims[1] if len(self.dims) > 1 else 0

    def dim(self, i: int) -> int:
        return self.dims[i - 1] if 1 <= i <= len(self.dims) else 0

    def struct(self, i: int, j: int) -> np.ndarray:
        """Array (dim_i, dim_j, dim_{i+j}) of structure constants."""
        if (i, j) in self.structure:
            return self.structure[(i, j)]
        return np.zeros((self.dim(i), self.dim(j), self.dim(i + j)), dtype=np.int64)

    def bracket(self, i: int, j: int, u, v) -> np.ndarray:
        return np.einsum("a,b,abk->k", np.asarray(u), np.asarray(v), self.struct(i, j)) % self.prime

    def verify(self) -> dict[str, bool]:
        p = self.prime
        c = len(self.dims)
        anti = True
        for i in range(1, c + 1):
            for j in range(1, c + 1):
                s, t = self.struct(i, j), self.struct(j, i)
                anti &= bool(((s + t.transpose(1, 0, 2)) % p == 0).all())
        alternating = all(
            bool((np.einsum("aak->ak", self.struct(i, i)) % p == 0).all()) for i in range(1, c + 1)
        )
        jacobi = True
        for i in range(1, c + 1):
            for j in range(1, c + 1):
                for k in range(1, c + 1):
                    if i + j + k > c:
                        continue
                    # [[a,b],c] + [[b,c],a] + [[c,a],b]
                    t1 = np.einsum("abx,xcy->abcy", self.struct(i, j), self.struct(i + j, k))
                    t2 = np.einsum("bcx,xay->abcy", self.struct(j, k), self.struct(j + k, i))
                    t3 = np.einsum("cax,xby->abcy", self.struct(k, i), self.struct(k + i, j))
                    jacobi &= bool(((t1 + t2 + t3) % p == 0).all())
        generated = True
        for i in range(1, c):
            s = self.struct(i, 1).reshape(-1, self.dim(i + 1))
            generated &= rank(s, p) == self.dim(i + 1)
        return {
            "antisymmetric": anti,
            "alternating": alternating,
            "jacobi": jacobi,
            "generated_by_degree_one": generated,
        }


def _greedy_basis(G: FiniteGroup, upper: SubgroupSet, sub: SubgroupSet) -> list[int]:
    basis: list[int] = []
    span = sub.mask.copy()
    for x in upper.members:
        if not span[x]:
            basis.append(int(x))
            span = G.closure(basis, start=sub.members)
            if int(span.sum()) == upper.order:
                break
    return basis


def mod_p_algebra(L: GradedLieRing) -> GradedLieAlgebraModP:
    G = L.group
    if G.prime is None:
        if G.order == 1:
            raise MixedPrimes("trivial group has no prime")
        raise MixedPrimes(f"{G.name} is nilpotent but not a p-group")
    p = G.prime
    c = L.nilpotency_class
    dims, bases, coords = [], [], []
    for comp in L.components:
        powers = np.unique(G.power_map(p)[comp.upper.array])
        sub = G.subgroup(np.concatenate([powers, comp.lower.array]))
        basis = _greedy_basis(G, comp.upper, sub)
        d = len(basis)
        co = np.full((G.order, d), -1, dtype=np.int64)
        for vec in product(range(p), repeat=d):
            w = G.identity
            for b, e in zip(basis, vec):
                w = int(G.mul[w, G.power(b, e)])
            co[G.mul[w, sub.array]] = vec
        dims.append(d)
        bases.append(basis)
        coords.append(co)
    structure = {}
    for i in range(1, c + 1):
        for j in range(1, c + 1 - i):
            bi, bj = np.asarray(bases[i - 1]), np.asarray(bases[j - 1])
            if bi.size == 0 or bj.size == 0:
                continue
            comm = _commutators(G, bi, bj)
            structure[(i, j)] = coords[i + j - 1][comm]
    return GradedLieAlgebraModP(p, dims, bases, coords, structure)


def structure_matrices(Lbar: GradedLieAlgebraModP) -> list[FpMatrix]:
    """A_k with (A_k)[i, j] the y_k-coefficient of [x_i, x_j]."""
    s = Lbar.struct(1, 1)
    return [FpMatrix(Lbar.prime, s[:, :, k]) for k in range(Lbar.n)]


# ------------------------------------------------------------ subspace analysis


def _vectors(p: int, d: int) -> np.ndarray:
    if d == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return np.array(list(product(range(p), repeat=d)), dtype=np.int64)


def _same_span(a, b, p) -> bool:
    sa, sb = span_rows(a, p), span_rows(b, p)
    return sa.shape == sb.shape and np.array_equal(sa, sb)


class _Context:
    def __init__(self, Lbar: GradedLieAlgebraModP):
        self.p = p = Lbar.prime
        self.m, self.n = Lbar.m, Lbar.n
        self.l3 = Lbar.dim(3)
        self.s11 = Lbar.struct(1, 1)  # (m, m, n)
        self.s21 = Lbar.struct(2, 1)  # (n, m, l3)
        self.vecs = _vectors(p, self.m)
        self.nonzero = self.vecs[(self.vecs != 0).any(axis=1)]

    def left_bracket_matrix(self, y) -> np.ndarray:
        """Rows [x_i, y] in L2 coordinates (m x n)."""
        return np.einsum("j,ijk->ik", y, self.s11) % self.p

    def centralizer(self, z) -> np.ndarray:
        """Basis of C(z) = {x in L1 : [x, z] = 0}."""
        return nullspace(self.left_bracket_matrix(z).T, self.p)

    def lam(self) -> np.ndarray:
        """lambda as an (n*l3) x m matrix: y -> ([w_k, y])_k."""
        return np.einsum("kjl->klj", self.s21).reshape(self.n * self.l3, self.m) % self.p

    def cbar_members(self) -> np.ndarray:
        vals = np.einsum("vj,kjl->vkl", self.vecs, self.s21) % self.p
        return self.vecs[(vals.reshape(len(self.vecs), -1) == 0).all(axis=1)]


@dataclass
class MacdonaldReport:
    m: int
    n: int
    dim_l3: int
    l3_one_dimensional: bool
    brackets_onto_l2: bool
    conditions_hold: bool
    m_even: bool | None = None
    m_ge_2n: bool | None = None
    m_eq_2n: bool | None = None
    cbar_dim: int | None = None
    cbar_equals_centralizers: bool | None = None
    centralizer_dims_ok: bool | None = None
    lambda_surjective: bool | None = None
    lambda_kernel_is_cbar: bool | None = None
    direct_sum_ok: bool | None = None
    pencil_nonsingular: bool | None = None
    pencil_exhaustive: bool | None = None
    pencil_checked: int | None = None

    @property
    def status(self) -> str:
        return "ok" if self.conditions_hold else ConditionsNotMet.code

    @property
    def all_conclusions_hold(self) -> bool:
        if not self.conditions_hold:
            return False
        return bool(
            self.m_even and self.m_ge_2n and self.m_eq_2n and self.cbar_dim == self.n
            and self.cbar_equals_centralizers and self.centralizer_dims_ok
            and self.lambda_surjective and self.lambda_kernel_is_cbar
            and self.direct_sum_ok and self.pencil_nonsingular
        )

    def consistent(self) -> bool:
        if not self.conditions_hold:
            return True
        return not self.m_eq_2n or bool(self.m_ge_2n)


def _conditions(ctx: _Context) -> tuple[bool, bool]:
    one_dim = ctx.l3 == 1
    onto = ctx.n > 0 and all(rank(ctx.left_bracket_matrix(y), ctx.p) == ctx.n for y in ctx.nonzero)
    return one_dim, onto


def macdonald_analysis(Lbar: GradedLieAlgebraModP, seed: int = 0) -> MacdonaldReport:
    ctx = _Context(Lbar)
    p, m, n = ctx.p, ctx.m, ctx.n
    one_dim, onto = _conditions(ctx)
    rep = MacdonaldReport(m, n, ctx.l3, one_dim, onto, one_dim and onto)
    if not rep.conditions_hold:
        return rep
    rep.m_even = m % 2 == 0
    rep.m_ge_2n = m >= 2 * n
    rep.m_eq_2n = m == 2 * n

    cbar = ctx.cbar_members()
    cbar_dim = round(math.log(len(cbar), p))
    rep.cbar_dim = cbar_dim
    cbar_basis = span_rows(cbar, p)
    cbar_set = {tuple(v) for v in cbar}

    rep.cbar_equals_centralizers = all(
        _same_span(ctx.centralizer(y), cbar_basis, p) for y in cbar if y.any()
    )
    rep.centralizer_dims_ok = all(len(ctx.centralizer(z)) == m - n for z in ctx.nonzero)

    lam = ctx.lam()
    rep.lambda_surjective = rank(lam, p) == n
    rep.lambda_kernel_is_cbar = _same_span(nullspace(lam, p), cbar_basis, p)

    ok = True
    for x in ctx.nonzero:
        if tuple(x) in cbar_set:
            continue
        cx = ctx.centralizer(x)
        stacked = np.vstack([cx, cbar_basis]) if len(cx) else cbar_basis
        ok &= len(cx) + cbar_dim == m and rank(stacked, p) == m
    rep.direct_sum_ok = bool(ok)

    mats = np.stack([ctx.s11[:, :, k] for k in range(n)])
    if p**n <= PENCIL_EXHAUSTIVE_LIMIT:
        psis = _vectors(p, n)[1:]
        rep.pencil_exhaustive = True
    else:
        rng = np.random.default_rng(seed)
        psis = rng.integers(0, p, size=(PENCIL_EXHAUSTIVE_LIMIT, n))
        psis = psis[psis.any(axis=1)]
        rep.pencil_exhaustive = False
    rep.pencil_checked = len(psis)
    rep.pencil_nonsingular = all(det(np.einsum("k,kij->ij", psi, mats), p) != 0 for psi in psis)
    return rep


@dataclass
class CentralizerLemmaReport:
    nonzero_brackets: bool
    cbar_proper_nonzero: bool
    centralizer_inside_cbar: bool
    centralizer_meets_cbar_trivially: bool

    @property
    def all_hold(self) -> bool:
        return (
            self.nonzero_brackets and self.cbar_proper_nonzero
            and self.centralizer_inside_cbar and self.centralizer_meets_cbar_trivially
        )


def centralizer_lemma_checks(Lbar: GradedLieAlgebraModP) -> CentralizerLemmaReport:
    """Exhaustive checks of the C-bar lemmas.

    [x, y] ≠ 0 for x outside C̄ and nonzero y in C̄; 0 < dim C̄ < m;
    C(z) ⊆ C̄ for nonzero z in C̄; C(z) ∩ C̄ = 0 for z outside C̄.
    """
    ctx = _Context(Lbar)
    p, m = ctx.p, ctx.m
    one_dim, onto = _conditions(ctx)
    if not (one_dim and onto):
        raise ConditionsNotMet(
            "needs dim L3 = 1 and [L1, y] = L2 for every nonzero y",
            dim_l3=ctx.l3,
            brackets_onto_l2=onto,
        )
    cbar = ctx.cbar_members()
    cbar_set = {tuple(v) for v in cbar}
    cbar_basis = span_rows(cbar, p)
    cdim = len(cbar_basis)
    inside = [y for y in cbar if y.any()]
    outside = [x for x in ctx.nonzero if tuple(x) not in cbar_set]

    nonzero = all(Lbar.bracket(1, 1, x, y).any() for x in outside for y in inside)
    contained, trivial = True, True
    for z in inside:
        cz = ctx.centralizer(z)
        contained &= rank(np.vstack([cbar_basis, cz]), p) == cdim
    for z in outside:
        cz = ctx.centralizer(z)
        stacked = np.vstack([cbar_basis, cz]) if len(cz) else cbar_basis
        trivial &= rank(stacked, p) == cdim + len(cz)
    return CentralizerLemmaReport(bool(nonzero), 0 < cdim < m, bool(contained), bool(trivial))
