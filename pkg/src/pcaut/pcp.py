"""Power-commutator presentations.

A presentation has ordered generators g_1..g_n with relative orders p^{e_i},
power relations g_i^{p^{e_i}} = w_i and commutator relations
[g_j, g_i] = w_ji (j > i), every w a normal-form word in later generators.
``realize`` turns one into a FiniteGroup by collection from the left and then
verifies the table, so an inconsistent presentation is caught after the fact.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .errors import (
    DuplicateRelation,
    EvenPrime,
    ExponentOutOfRange,
    InconsistentPresentation,
    InvalidGroupTable,
    NotPGroup,
    ParameterViolation,
    PresentationSyntaxError,
    SizeCapExceeded,
    UnknownGenerator,
)
from .fields import GF
from .group import DEFAULT_CAP, FiniteGroup, central_product, commutator_subgroup, prime_power

MAX_COLLECTION_STEPS = 10**6

Word = tuple[int, ...]


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, math.isqrt(p) + 1))


@dataclass(frozen=True)
class PcPresentation:
    prime: int
    names: tuple[str, ...]
    relative_orders: tuple[int, ...]
    power_relations: tuple[Word, ...]
    # nontrivial relations only, sorted by (j, i)
    commutator_relations: tuple[tuple[tuple[int, int], Word], ...] = ()

    def __post_init__(self):
        n = len(self.names)
        if len(set(self.names)) != n:
            raise ParameterViolation("generator names must be distinct")
        if len(self.relative_orders) != n or len(self.power_relations) != n:
            raise ParameterViolation("one relative order and one power relation per generator")
        for o in self.relative_orders:
            pp = prime_power(o)
            if pp is None or pp[0] != self.prime:
                raise ParameterViolation(f"relative order {o} is not a power of {self.prime}")
        for i, w in enumerate(self.power_relations):
            self._check_word(w, after=i, what=f"power relation of {self.names[i]}")
        seen = set()
        for (j, i), w in self.commutator_relations:
            if not (0 <= i < j < n):
                raise ParameterViolation(f"commutator relation [{j},{i}] needs j > i")
            if (j, i) in seen:
                raise ParameterViolation(f"duplicate commutator relation [{j},{i}]")
            seen.add((j, i))
            self._check_word(w, after=j, what=f"[{self.names[j]},{self.names[i]}]")

    def _check_word(self, w: Word, after: int, what: str) -> None:
        if len(w) != len(self.names):
            raise ParameterViolation(f"{what}: word has wrong length")
        for k, (a, o) in enumerate(zip(w, self.relative_orders)):
            if not (0 <= a < o):
                raise ParameterViolation(f"{what}: exponent {a} out of range for {self.names[k]}")
            if a and k <= after:
                raise ParameterViolation(f"{what}: uses {self.names[k]}, which is not a later generator")

    @classmethod
    def build(
        cls,
        prime: int,
        names: Sequence[str],
        relative_orders: Sequence[int],
        powers: Mapping[int, Word] | None = None,
        comms: Mapping[tuple[int, int], Word] | None = None,
    ) -> "PcPresentation":
        n = len(names)
        zero = (0,) * n
        pw = tuple(tuple((powers or {}).get(i, zero)) for i in range(n))
        cm = tuple(sorted(((ji, tuple(w)) for ji, w in (comms or {}).items() if any(w))))
        return cls(prime, tuple(names), tuple(relative_orders), pw, cm)

    @property
    def num_generators(self) -> int:
        return len(self.names)

    @property
    def order(self) -> int:
        return math.prod(self.relative_orders)

    def comm_dict(self) -> dict[tuple[int, int], Word]:
        return dict(self.commutator_relations)

    def word_str(self, w: Word) -> str:
        parts = []
        for name, a in zip(self.names, w):
            if a == 1:
                parts.append(name)
            elif a:
                parts.append(f"{name}^{a}")
        return "*".join(parts) if parts else "1"


# ---------------------------------------------------------------- collection


class Collector:
    """Collection from the left on exponent vectors."""

    def __init__(self, pres: PcPresentation):
        self.pres = pres
        n = pres.num_generators
        self.n = n
        self.rel = list(pres.relative_orders)
        self.power_letters = [self._letters(w) for w in pres.power_relations]
        cd = pres.comm_dict()
        # conj_unit[j][k]: letters of g_j^{g_k} = g_j [g_j, g_k], for j > k
        self.conj_unit = [
            [[j] + self._letters(cd.get((j, k), ())) for k in range(n)] for j in range(n)
        ]

    @staticmethod
    def _letters(w: Word) -> list[int]:
        out = []
        for k, a in enumerate(w):
            out.extend([k] * a)
        return out

    def collect(self, exps: Sequence[int], letters: Sequence[int]) -> list[int]:
        """Normal form of (g^exps) * g_{letters[0]} * g_{letters[1]} * ..."""
        e = list(exps)
        n, rel = self.n, self.rel
        pending = list(reversed(letters))
        steps = 0
        while pending:
            steps += 1
            if steps > MAX_COLLECTION_STEPS:
                raise InconsistentPresentation(
                    "collection exceeded the step cap; presentation is not consistent"
                )
            k = pending.pop()
            tail = [(j, e[j]) for j in range(k + 1, n) if e[j]]
            if tail:
                # h * t * g_k = h * g_k * t^{g_k}
                seq = [k]
                for j, a in tail:
                    e[j] = 0
                    seq.extend(self.conj_unit[j][k] * a)
                pending.extend(reversed(seq))
                continue
            e[k] += 1
            if e[k] == rel[k]:
                e[k] = 0
                pending.extend(reversed(self.power_letters[k]))
        return e


def _strides(orders: Sequence[int]) -> list[int]:
    out = [1] * len(orders)
    for i in range(len(orders) - 2, -1, -1):
        out[i] = out[i + 1] * orders[i + 1]
    return out


def realize(pres: PcPresentation, name: str | None = None, cap: int | None = DEFAULT_CAP) -> FiniteGroup:
    """Materialize the presentation as a verified multiplication table."""
    N = pres.order
    if cap is not None and N > cap:
        raise SizeCapExceeded(f"presentation order {N} exceeds cap {cap}", order=N, cap=cap)
    n = pres.num_generators
    orders = pres.relative_orders
    strides = _strides(orders)
    col = Collector(pres)

    # all exponent vectors in index order (first generator most significant)
    grid = np.indices(orders).reshape(n, -1).T if n else np.zeros((1, 0), dtype=np.int64)
    stride_arr = np.asarray(strides, dtype=np.int64)

    right = np.empty((n, N), dtype=np.int64)  # right[k, a] = a * g_k
    for a in range(N):
        ea = grid[a]
        for k in range(n):
            right[k, a] = int(np.dot(col.collect(ea, [k]), stride_arr))

    mul = np.empty((N, N), dtype=np.int64)
    mul[:, 0] = np.arange(N)
    for b in range(1, N):
        eb = grid[b]
        k = int(np.nonzero(eb)[0][-1])
        mul[:, b] = right[k, mul[:, b - strides[k]]]

    labels = [pres.word_str(tuple(int(x) for x in row)) for row in grid]
    gens = [strides[k] for k in range(n)]
    try:
        return FiniteGroup(mul, gens, labels=labels, name=name or "G", prime=pres.prime, cap=cap)
    except InvalidGroupTable as exc:
        raise InconsistentPresentation(
            f"presentation is inconsistent ({exc.message})", check=exc.details.get("check")
        ) from exc


def normal_form_index(pres: PcPresentation, word: Word) -> int:
    return sum(a * s for a, s in zip(word, _strides(pres.relative_orders)))


# ---------------------------------------------------------------- DSL

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


def render(pres: PcPresentation) -> str:
    """Canonical DSL text: relations in generator-index order, single spaces."""
    lines = [f"p {pres.prime}", "gens " + " ".join(pres.names)]
    for nm, o in zip(pres.names, pres.relative_orders):
        lines.append(f"ord {nm} {o}")
    for nm, w in zip(pres.names, pres.power_relations):
        lines.append(f"pow {nm} = {pres.word_str(w)}")
    for (j, i), w in pres.commutator_relations:
        lines.append(f"comm [{pres.names[j]},{pres.names[i]}] = {pres.word_str(w)}")
    return "\n".join(lines) + "\n"


class _Line:
    def __init__(self, text: str, lineno: int):
        self.text = text
        self.lineno = lineno

    def err(self, cls, msg, col):
        return cls(msg, line=self.lineno, column=col + 1)


def _parse_int(tok: str, line: _Line, col: int) -> int:
    if not tok.isdigit():
        raise line.err(PresentationSyntaxError, f"expected a positive integer, got {tok!r}", col)
    return int(tok)


def parse_presentation(text: str) -> PcPresentation:
    """Parse the line-oriented presentation DSL (see ``render``)."""
    lines = []
    for k, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].rstrip()
        if body.strip():
            lines.append(_Line(body, k))
    if len(lines) < 2:
        ln = lines[0] if lines else _Line("", 1)
        raise ln.err(PresentationSyntaxError, "expected 'p <prime>' and 'gens ...' lines", 0)

    def tokens(line: _Line):
        return [(m.group(), m.start()) for m in re.finditer(r"\S+", line.text)]

    head = tokens(lines[0])
    if len(head) != 2 or head[0][0] != "p":
        raise lines[0].err(PresentationSyntaxError, "first line must be 'p <prime>'", 0)
    p = _parse_int(head[1][0], lines[0], head[1][1])
    if not _is_prime(p):
        raise lines[0].err(PresentationSyntaxError, f"{p} is not prime", head[1][1])

    gtoks = tokens(lines[1])
    if not gtoks or gtoks[0][0] != "gens" or len(gtoks) < 2:
        raise lines[1].err(PresentationSyntaxError, "second line must be 'gens <name> ...'", 0)
    names = []
    for tok, c in gtoks[1:]:
        if not _NAME.fullmatch(tok):
            raise lines[1].err(PresentationSyntaxError, f"bad generator name {tok!r}", c)
        if tok in names:
            raise lines[1].err(DuplicateRelation, f"generator {tok!r} declared twice", c)
        names.append(tok)
    index = {nm: i for i, nm in enumerate(names)}
    n = len(names)

    def gen_index(tok, line, c):
        if tok not in index:
            raise line.err(UnknownGenerator, f"unknown generator {tok!r}", c)
        return index[tok]

    orders: dict[int, int] = {}
    pow_words: dict[int, tuple[list[tuple[int, int, int]], _Line]] = {}
    comm_words: dict[tuple[int, int], tuple[list[tuple[int, int, int]], _Line]] = {}

    def parse_word(s: str, line: _Line, offset: int):
        s_strip = s.strip()
        lead = len(s) - len(s.lstrip())
        if s_strip == "1":
            return []
        if not s_strip:
            raise line.err(PresentationSyntaxError, "empty word", offset)
        out = []
        pos = offset + lead
        for factor in s_strip.split("*"):
            m = re.fullmatch(r"\s*([A-Za-z_][A-Za-z0-9_]*)\s*(?:\^\s*(\S+))?\s*", factor)
            if not m:
                raise line.err(PresentationSyntaxError, f"bad word factor {factor!r}", pos)
            g = gen_index(m.group(1), line, pos + m.start(1))
            e = 1
            if m.group(2) is not None:
                e = _parse_int(m.group(2), line, pos + m.start(2))
                if e < 1:
                    raise line.err(PresentationSyntaxError, "exponents must be positive", pos + m.start(2))
            out.append((g, e, pos + m.start(1)))
            pos += len(factor) + 1
        return out

    for line in lines[2:]:
        toks = tokens(line)
        kw, c0 = toks[0]
        if kw == "ord":
            if len(toks) != 3:
                raise line.err(PresentationSyntaxError, "expected 'ord <name> <p^e>'", c0)
            g = gen_index(toks[1][0], line, toks[1][1])
            if g in orders:
                raise line.err(DuplicateRelation, f"relative order of {names[g]} given twice", c0)
            otok, oc = toks[2]
            m = re.fullmatch(r"(\d+)(?:\^(\d+))?", otok)
            if not m:
                raise line.err(PresentationSyntaxError, f"bad relative order {otok!r}", oc)
            o = int(m.group(1)) ** (int(m.group(2)) if m.group(2) else 1)
            pp = prime_power(o)
            if pp is None or pp[0] != p:
                raise line.err(PresentationSyntaxError, f"relative order {o} is not a power of {p}", oc)
            orders[g] = o
        elif kw == "pow":
            m = re.fullmatch(r"pow\s+(\S+)\s*=\s*(.*)", line.text.strip())
            if not m:
                raise line.err(PresentationSyntaxError, "expected 'pow <name> = <word>'", c0)
            lead = len(line.text) - len(line.text.lstrip())
            g = gen_index(m.group(1), line, lead + m.start(1))
            if g in pow_words:
                raise line.err(DuplicateRelation, f"power relation of {names[g]} given twice", c0)
            pow_words[g] = (parse_word(m.group(2), line, lead + m.start(2)), line)
        elif kw == "comm":
            m = re.fullmatch(r"comm\s*\[\s*(\S+?)\s*,\s*(\S+?)\s*\]\s*=\s*(.*)", line.text.strip())
            if not m:
                raise line.err(PresentationSyntaxError, "expected 'comm [<a>,<b>] = <word>'", c0)
            lead = len(line.text) - len(line.text.lstrip())
            j = gen_index(m.group(1), line, lead + m.start(1))
            i = gen_index(m.group(2), line, lead + m.start(2))
            if j <= i:
                raise line.err(
                    PresentationSyntaxError,
                    f"commutator [{names[j]},{names[i]}] must list the later generator first",
                    lead + m.start(1),
                )
            if (j, i) in comm_words:
                raise line.err(DuplicateRelation, f"relation [{names[j]},{names[i]}] given twice", c0)
            comm_words[(j, i)] = (parse_word(m.group(3), line, lead + m.start(3)), line)
        else:
            raise line.err(PresentationSyntaxError, f"unknown keyword {kw!r}", c0)

    missing = [names[g] for g in range(n) if g not in orders]
    if missing:
        raise lines[1].err(PresentationSyntaxError, f"no 'ord' line for {', '.join(missing)}", 0)
    rel = [orders[g] for g in range(n)]

    def to_word(factors, after, line):
        w = [0] * n
        last = after
        for g, e, c in factors:
            if g <= last:
                raise line.err(
                    PresentationSyntaxError,
                    f"{names[g]} out of order: relation words are normal forms in later generators",
                    c,
                )
            if e >= rel[g]:
                raise line.err(ExponentOutOfRange, f"exponent {e} of {names[g]} must be < {rel[g]}", c)
            w[g] = e
            last = g
        return tuple(w)

    powers = {g: to_word(f, g, ln) for g, (f, ln) in pow_words.items()}
    comms = {ji: to_word(f, ji[0], ln) for ji, (f, ln) in comm_words.items()}
    return PcPresentation.build(p, names, rel, powers, comms)


# ---------------------------------------------------------------- from tables


def presentation_from_group(G: FiniteGroup, names: Sequence[str] | None = None) -> PcPresentation:
    """A prime-relative-order pc presentation of a p-group table.

    Generators are picked along a refinement of the lower exponent-p central
    series, so every relation lands in later generators.
    """
    p = G.require_p_group()
    whole = G.whole
    series = [whole]
    while series[-1].order > 1:
        cur = series[-1]
        comm = commutator_subgroup(cur, whole)
        powers = np.unique(G.power_map(p)[cur.array])
        nxt = G.subgroup(np.concatenate([comm.array, powers]))
        series.append(nxt)
    pcgs: list[int] = []
    for upper, lower in zip(series, series[1:]):
        span = lower.mask.copy()
        for x in upper.members:
            if not span[x]:
                pcgs.append(int(x))
                span = G.closure([x], start=np.nonzero(span)[0])
    n = len(pcgs)
    names = list(names) if names else [f"g{k + 1}" for k in range(n)]
    # element -> exponent vector, by building g_k^a * (normal form in later gens)
    nf = {G.identity: (0,) * n}
    for k in range(n - 1, -1, -1):
        new = dict(nf)
        gk = pcgs[k]
        pw = G.identity
        for a in range(1, p):
            pw = int(G.mul[pw, gk])
            for x, e in nf.items():
                w = list(e)
                w[k] = a
                new[int(G.mul[pw, x])] = tuple(w)
        nf = new
    if len(nf) != G.order:
        raise InconsistentPresentation("pc sequence does not yield unique normal forms")
    powers = {k: nf[G.power(pcgs[k], p)] for k in range(n)}
    comms = {}
    for j in range(n):
        for i in range(j):
            w = nf[G.commutator(pcgs[j], pcgs[i])]
            if any(w):
                comms[(j, i)] = w
    return PcPresentation.build(p, names, [p] * n, powers, comms)


# ---------------------------------------------------------------- families


def _digits(v: int, p: int, e: int) -> list[int]:
    out = []
    for _ in range(e):
        v, r = divmod(v, p)
        out.append(r)
    return out


def _check_prime(p: int) -> None:
    if not _is_prime(p):
        raise ParameterViolation(f"{p} is not prime")


def abelian_by_cyclic(
    p: int,
    acting: tuple[str, int],
    base: Sequence[tuple[str, int]],
    base_powers: Mapping[str, Sequence[int]],
    action: Mapping[str, Sequence[int]],
    acting_power: Sequence[int],
) -> PcPresentation:
    """Presentation of B<y> with B abelian normal, y acting on B, y^{p^e} in B.

    ``base`` lists the cyclic generators b of B with exponents e_b, and
    ``base_powers[b]`` gives b^{p^{e_b}} as a coordinate vector over later base
    generators. ``action[b]`` is the vector of b^y. Generators are refined to
    relative order p: y, y1 = y^p, ..., then b, b1 = b^p, ... for each b.
    """
    yname, ey = acting
    q = len(base)
    bexp = [e for _, e in base]
    bpow = [list(base_powers.get(nm, [0] * q)) for nm, _ in base]

    def normalize(v):
        v = list(v)
        for i in range(q):
            c, v[i] = divmod(v[i], p ** bexp[i])
            if c:
                for j in range(q):
                    v[j] += c * bpow[i][j]
        return v

    def add(u, v):
        return normalize([a + b for a, b in zip(u, v)])

    def scale(u, k):
        return normalize([a * k for a in u])

    sigma = [normalize(action[nm]) for nm, _ in base]

    def act(v):
        out = [0] * q
        for i, a in enumerate(v):
            out = add(out, scale(sigma[i], a))
        return out

    def act_pow(v, k):
        for _ in range(k):
            v = act(v)
        return v

    names = [yname] + [f"{yname}{l}" for l in range(1, ey)]
    offsets = []
    for nm, e in base:
        offsets.append(len(names))
        names += [nm] + [f"{nm}{a}" for a in range(1, e)]
    n = len(names)

    def vec_word(v):
        w = [0] * n
        for i, a in enumerate(normalize(v)):
            for d, digit in enumerate(_digits(a, p, bexp[i])):
                w[offsets[i] + d] = digit
        return tuple(w)

    def unit(i, a):
        v = [0] * q
        v[i] = p**a
        return normalize(v)

    powers = {}
    for l in range(ey - 1):
        w = [0] * n
        w[l + 1] = 1
        powers[l] = tuple(w)
    if ey:
        powers[ey - 1] = vec_word(acting_power)
    for i in range(q):
        for a in range(bexp[i] - 1):
            w = [0] * n
            w[offsets[i] + a + 1] = 1
            powers[offsets[i] + a] = tuple(w)
        powers[offsets[i] + bexp[i] - 1] = vec_word(bpow[i])

    comms = {}
    for i in range(q):
        for a in range(bexp[i]):
            b = unit(i, a)
            neg_b = scale(b, -1)
            for l in range(ey):
                diff = add(neg_b, act_pow(b, p**l))
                comms[(offsets[i] + a, l)] = vec_word(diff)
    try:
        return PcPresentation.build(p, names, [p] * n, powers, comms)
    except ParameterViolation as exc:
        raise InconsistentPresentation(f"parameters do not give a pc presentation: {exc.message}") from exc


def metacyclic_presentation(p: int, a: int, b: int, k: int, c: int) -> PcPresentation:
    """<x, y | x^{p^a} = 1, y^{p^b} = x^c, x^y = x^k>."""
    _check_prime(p)
    return abelian_by_cyclic(p, ("y", b), [("x", a)], {}, {"x": [k]}, [c])


def metacyclic_K_presentation(p: int, r: int, s: int, t: int) -> PcPresentation:
    _check_prime(p)
    if not (1 <= t < r and 0 <= s <= t):
        raise ParameterViolation("metacyclic_K requires 1 <= t < r and 0 <= s <= t", p=p, r=r, s=s, t=t)
    if p == 2 and t < 2:
        raise ParameterViolation("metacyclic_K requires t >= 2 when p = 2", p=p, r=r, s=s, t=t)
    # [x, y] = x^{p^t}  <=>  x^y = x^{1 + p^t};  y^{p^r} = x^{p^{r+s}}
    return abelian_by_cyclic(p, ("y", r), [("x", r + t)], {}, {"x": [1 + p**t]}, [p ** (r + s)])


def two_generator_G_presentation(p, m, n, i, j, k, r, s) -> PcPresentation:
    """x^{p^m} = u^i, y^{p^n} = x^j u^k, [x,y] = u, u^{p^r} = 1 = [u,x], [u,y] = u^{p^s}."""
    _check_prime(p)
    if not 1 <= s < r:
        raise ParameterViolation("two_generator_G requires 1 <= s < r")
    if p == 2 and s < 2:
        raise ParameterViolation("two_generator_G requires s >= 2 when p = 2")
    if m < 1 or n < 1 or min(i, j, k) < 0:
        raise ParameterViolation("two_generator_G requires m, n >= 1 and i, j, k >= 0")
    # B = <x, u> abelian; x^y = x[x,y] = xu, u^y = u[u,y] = u^{1+p^s}
    return abelian_by_cyclic(
        p,
        ("y", n),
        [("x", m), ("u", r)],
        {"x": [0, i]},
        {"x": [1, 1], "u": [0, 1 + p**s]},
        [j, k],
    )


def nonmetacyclic_presentation(p: int) -> PcPresentation:
    """<x, y, u | x^{p^2} = y^{p^2} = u^{p^2} = 1, [x,y] = u, [u,x] = u^p, [u,y] = 1>."""
    _check_prime(p)
    if p == 2:
        raise EvenPrime("the non-metacyclic example needs an odd prime")
    # B = <y, u> abelian, x acts: y^x = y[y,x] = y u^{-1}, u^x = u[u,x] = u^{1+p}
    return abelian_by_cyclic(
        p, ("x", 2), [("y", 2), ("u", 2)], {}, {"y": [1, -1], "u": [0, 1 + p]}, [0, 0]
    )


def heisenberg_presentation(p: int, e: int) -> PcPresentation:
    """Two-generator class-2 group over Z/p^e: [b, a] = c central, all of order p^e."""
    _check_prime(p)
    if e < 1:
        raise ParameterViolation("heisenberg requires e >= 1")
    return abelian_by_cyclic(p, ("a", e), [("b", e), ("c", e)], {}, {"b": [1, 1], "c": [0, 1]}, [0, 0])


def cyclic_presentation(p: int, e: int) -> PcPresentation:
    _check_prime(p)
    names = ["a"] + [f"a{k}" for k in range(1, e)]
    powers = {k: tuple(int(i == k + 1) for i in range(e)) for k in range(e - 1)}
    return PcPresentation.build(p, names, [p] * e, powers)


def abelian_presentation(p: int, exponents: Sequence[int]) -> PcPresentation:
    """Direct product of cyclic groups of orders p^e."""
    _check_prime(p)
    names, orders, powers = [], [], {}
    letters = "abcdefghijklmnopqrstuvw"
    total = sum(exponents)
    for idx, e in enumerate(exponents):
        base = len(names)
        nm = letters[idx]
        names += [nm] + [f"{nm}{k}" for k in range(1, e)]
        for k in range(e - 1):
            powers[base + k] = tuple(int(i == base + k + 1) for i in range(total))
    return PcPresentation.build(p, names, [p] * total, powers)


def extraspecial_presentation(p: int, n: int, kind: str) -> PcPresentation:
    """Extraspecial group of order p^{2n+1}.

    kind: 'D' / 'Q' for p = 2 (central products of D8s, with one Q8 for 'Q');
    'p' (exponent p) / 'p2' (exponent p^2) for odd p.
    """
    _check_prime(p)
    if n < 1:
        raise ParameterViolation("extraspecial requires n >= 1")
    kind = str(kind)
    allowed = {"D", "Q"} if p == 2 else {"p", "p2", "1", "2"}
    if kind not in allowed:
        raise ParameterViolation(f"kind must be one of {sorted(allowed)} for p = {p}")
    names = []
    for k in range(1, n + 1):
        names += [f"a{k}", f"b{k}"]
    names.append("z")
    N = len(names)
    z = tuple(int(i == N - 1) for i in range(N))
    powers = {}
    comms = {}
    for k in range(n):
        comms[(2 * k + 1, 2 * k)] = z
    if kind == "Q" or kind in ("p2", "2"):
        powers[0] = z
        if kind == "Q":
            powers[1] = z
    return PcPresentation.build(p, names, [p] * N, powers, comms)


def unitriangular_presentation(p: int, m: int) -> PcPresentation:
    """UT(3, F_{p^m}) via triples (a, b, c) with (a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab')."""
    _check_prime(p)
    if p == 2:
        raise EvenPrime("unitriangular family is defined for odd p")
    if m < 1:
        raise ParameterViolation("unitriangular requires m >= 1")
    F = GF(p, m)
    names = [f"a{k + 1}" for k in range(m)] + [f"b{k + 1}" for k in range(m)] + [f"c{k + 1}" for k in range(m)]
    N = 3 * m
    basis = F.basis()

    def tmul(X, Y):
        return (F.add(X[0], Y[0]), F.add(X[1], Y[1]), F.add(F.add(X[2], Y[2]), F.mul(X[0], Y[1])))

    def tinv(X):
        return (F.neg(X[0]), F.neg(X[1]), F.add(F.neg(X[2]), F.mul(X[0], X[1])))

    def comm(X, Y):
        return tmul(tmul(tinv(X), tinv(Y)), tmul(X, Y))

    zero = F.zero()
    comms = {}
    for i in range(m):
        A = (basis[i], zero, zero)
        for j in range(m):
            B = (zero, basis[j], zero)
            C = comm(B, A)
            assert C[0] == zero and C[1] == zero
            w = [0] * N
            w[2 * m:] = list(C[2])
            comms[(m + j, i)] = tuple(w)
    return PcPresentation.build(p, names, [p] * N, {}, comms)


# ------------------------------------------------------------ realized families


def family_metacyclic_K(p: int, r: int, s: int, t: int, cap: int | None = DEFAULT_CAP) -> FiniteGroup:
    return realize(metacyclic_K_presentation(p, r, s, t), name=f"K({p},{r},{s},{t})", cap=cap)


def family_two_generator_G(p, m, n, i, j, k, r, s, cap: int | None = DEFAULT_CAP) -> FiniteGroup:
    return realize(
        two_generator_G_presentation(p, m, n, i, j, k, r, s),
        name=f"G({p};{m},{n},{i},{j},{k},{r},{s})",
        cap=cap,
    )


def family_nonmetacyclic_example(p: int = 3, cap: int | None = DEFAULT_CAP) -> FiniteGroup:
    return realize(nonmetacyclic_presentation(p), name=f"NM({p})", cap=cap)


def family_unitriangular(p: int, m: int, cap: int | None = DEFAULT_CAP) -> FiniteGroup:
    if p != 2 and cap is not None and p ** (3 * m) > cap:
        raise SizeCapExceeded(f"UT(3, F_{p}^{m}) has order {p ** (3 * m)} > cap {cap}")
    return realize(unitriangular_presentation(p, m), name=f"UT3({p}^{m})", cap=cap)


def family_extraspecial(p: int, n: int, kind: str, cap: int | None = DEFAULT_CAP) -> FiniteGroup:
    return realize(extraspecial_presentation(p, n, kind), name=f"ES({p},{n},{kind})", cap=cap)


def family_heisenberg(p: int, e: int, cap: int | None = DEFAULT_CAP) -> FiniteGroup:
    return realize(heisenberg_presentation(p, e), name=f"H({p}^{e})", cap=cap)


def family_metacyclic(p, a, b, k, c, cap: int | None = DEFAULT_CAP) -> FiniteGroup:
    return realize(metacyclic_presentation(p, a, b, k, c), name=f"M({p};{a},{b},{k},{c})", cap=cap)


def family_abelian(p: int, exponents: Sequence[int], cap: int | None = DEFAULT_CAP) -> FiniteGroup:
    name = "x".join(f"C{p ** e}" for e in exponents)
    return realize(abelian_presentation(p, exponents), name=name, cap=cap)


def family_central_product_Y(p: int, e: int, m: int, cap: int | None = DEFAULT_CAP) -> FiniteGroup:
    """m copies of the order-q^3 two-generator group (q = p^e) glued along their centres."""
    if m < 1:
        raise ParameterViolation("central product needs m >= 1")
    q = p**e
    if cap is not None and q ** (2 * m + 1) > cap:
        raise SizeCapExceeded(f"Y has order {q ** (2 * m + 1)} > cap {cap}")
    H = family_heisenberg(p, e, cap=cap)
    z = H.commutator(H.labels.index("b"), H.labels.index("a"))
    name = f"Y({p}^{e},{m})"
    Y = central_product([H] * m, [z] * m, name=name, cap=cap)
    Y.name = name
    return Y
