"""Acceptance criteria 1-11, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v`` or directly with
``python3 tests/test_acceptance.py``. Every equality is exact; the only
tolerances are the wall-clock limits pinned in ``LIMITS`` (seconds).
"""

import contextlib
import io
import json
import math
import os
import sys
import time

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(__file__))

import oracles as O  # noqa: E402
from pcaut import autos, linalg  # noqa: E402
from pcaut.cli import main  # noqa: E402
from pcaut.corpus import default_corpus, run_suites  # noqa: E402
from pcaut.lie import build_graded_lie_ring, macdonald_analysis, mod_p_algebra  # noqa: E402
from pcaut.verdicts import (  # noqa: E402
    analyze,
    is_camina_type,
    satisfies_hypothesis_a,
    theorem_a_equivalence,
    y_subgroup,
)

LIMITS = {1: 300, 2: 30, 3: 300, 4: 10, 5: 600, 6: 300, 7: 5, 8: 600, 9: 600, 10: 300, 11: 60}

_built = {}


def corpus_groups():
    if not _built:
        for e in default_corpus():
            _built[e.name] = e.build()
    return _built


def _cli_report(*argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(["analyze", *argv, "--json", "-", "--no-timings"])
    assert code == 0
    return json.loads(buf.getvalue())


def criterion_1():
    rep = _cli_report("--family", "unitriangular", "--p", "3", "--m", "2")
    assert rep["order"] == 729 and rep["d"] == 4 and rep["gamma_orders"][1] == 9
    assert rep["autc_order"] == 6561 == 9**4
    assert rep["inn_order"] < rep["autc_order"]
    assert rep["flags"]["hypothesis_a"] == "true"
    G = corpus_groups()["UT3(3^2)"]
    A = autos.class_preserving_automorphisms(G)
    assert A.is_abelian() and A.exponent_divides(3)
    assert autos.inner_automorphisms(G).issubset(A)
    return "|Aut_c| = 6561 = 9^4, elementary abelian"


def criterion_2():
    rep = _cli_report("--family", "metacyclic_K", "--p", "3", "--r", "2", "--s", "1", "--t", "1")
    assert rep["order"] == 243
    assert rep["autc_order"] == rep["inn_order"] == 81 == rep["gamma_orders"][1] ** 2
    assert rep["flags"]["hypothesis_a"] == "true"
    assert rep["flags"]["central_quotient_extremal"] == "true"
    return "|Aut_c| = |Inn| = 81"


def criterion_3():
    rep = _cli_report("--family", "nonmetacyclic", "--p", "3")
    G = corpus_groups()["NM(3)"]
    assert rep["order"] == 729 and rep["nilpotency_class"] == 3
    D, Z = G.derived, G.center
    assert D.order == Z.order == 9 and D.is_cyclic() and Z.is_cyclic() and D != Z
    assert rep["gamma_orders"][2] == 3
    assert rep["autc_order"] == rep["inn_order"] == 81
    assert rep["flags"]["hypothesis_a"] == "true" and rep["flags"]["metacyclic"] == "false"
    return "class 3, not metacyclic, |Aut_c| = 81"


def criterion_4():
    rep = _cli_report("--family", "central_product_Y", "--p", "2", "--e", "1", "--m", "2")
    G = corpus_groups()["Y(2^1,2)"]
    assert rep["order"] == 32 and rep["d"] == 4
    assert G.derived.order == 2 and G.derived.is_cyclic()
    assert rep["autc_order"] == rep["inn_order"] == 16 == 2**4
    assert rep["flags"]["hypothesis_a"] == "true"
    return "|Aut_c| = |Inn| = 16"


def criterion_5():
    members, failures = [], []
    for name, G in corpus_groups().items():
        if G.nilpotency_class == 2 and is_camina_type(G):
            rep = run_suites(G, ["B"])["B"]
            members.append(name)
            for key in ("d_even", "d_at_least_twice_rank_gamma2", "central_quotient_homocyclic"):
                assert rep.get(key).value == "true", (name, key)
            failures += [(name, c.name) for c in rep.failures]
    assert not failures, failures
    required = {"D8", "Q8", "ES(3,1,p)", "ES(3,1,p2)", "ES(2,2,D)", "ES(3,2,p)", "Y(2^1,2)", "UT3(3^2)/Z3#0", "UT3(3^2)"}
    assert required <= set(members), required - set(members)
    return f"{len(members)} groups, zero failures"


def criterion_6():
    members = []
    for name, G in corpus_groups().items():
        p = G.prime
        if not (G.nilpotency_class == 3 and G.gamma(3).order == p and is_camina_type(G)):
            continue
        mac = macdonald_analysis(mod_p_algebra(build_graded_lie_ring(G)))
        assert mac.conditions_hold and mac.m_eq_2n and mac.cbar_dim == mac.n, name
        assert mac.lambda_surjective and mac.lambda_kernel_is_cbar and mac.direct_sum_ok, name
        assert p**mac.n <= 10**4 and mac.pencil_exhaustive and mac.pencil_checked == p**mac.n - 1, name
        assert mac.pencil_nonsingular, name
        assert run_suites(G, ["lie"])["lie"].ok, name
        members.append(name)
    assert {"NM(3)", "K(3,3,1,1)/M", "K(3,3,0,1)/M"} <= set(members)
    return f"{len(members)} groups, pencils exhaustive"


def _strongly_skew(rng, n, p):
    a = np.zeros((n, n), dtype=np.int64)
    iu = np.triu_indices(n, 1)
    a[iu] = rng.integers(0, p, size=len(iu[0]))
    return (a - a.T) % p


def criterion_7():
    rng = np.random.default_rng(20240601)
    count = 0
    for k in range(300):
        p = (2, 3, 5)[k % 3]
        n = int(rng.integers(2, 9))
        a = _strongly_skew(rng, n, p)
        d = O.det_mod_p(a, p)
        assert linalg.det(a, p) == d
        if n % 2:
            assert d == 0
        else:
            assert linalg.pfaffian(a, p) ** 2 % p == d
        count += 1
    return f"{count} matrices"


def criterion_8():
    n = 0
    for name, G in corpus_groups().items():
        if G.order > 128 or G.is_abelian:
            continue
        rep = theorem_a_equivalence(G)
        assert rep.holds, name
        assert rep.all_tuples_attain == bool(satisfies_hypothesis_a(G)), name
        n += 1
    return f"{n} groups"


def criterion_9():
    n = 0
    for name, G in corpus_groups().items():
        if G.order > 128:
            continue
        rep = run_suites(G, ["quotient"])["quotient"]
        assert rep.ok, (name, [c.name for c in rep.failures])
        n += rep.counts()["true"]
    assert n > 0
    return f"{n} quotient checks"


def criterion_10():
    groups = corpus_groups()
    desk = {k: v for k, v in groups.items() if k.startswith("desk_")}
    assert len(desk) >= 3
    for name, G in desk.items():
        D = G.derived
        assert G.prime == 2 and G.rank == 2 and G.order <= 2**7 and G.nilpotency_class <= 3, name
        assert D.order in (2, 4, 8) and set(G.element_orders[D.array].tolist()) <= {1, 2}, name
        rep = analyze(G, suites=False, metacyclic=False)
        assert rep.flags["hypothesis_a"] == "true", name
        assert (rep.autc_order == rep.inn_order) == (D.order <= 4), name
        assert y_subgroup(G).order == 1, name
    return f"{len(desk)} presentations"


def criterion_11():
    n = 0
    for name, G in corpus_groups().items():
        if G.order > 16:
            continue
        fast = {row.tobytes() for row in autos.class_preserving_automorphisms(G).images}
        brute = {np.asarray(a, dtype=np.int32).tobytes() for a in O.class_preserving(G, O.all_automorphisms(G))}
        assert fast == brute, name
        n += 1
    return f"{n} groups"


CRITERIA = {k: globals()[f"criterion_{k}"] for k in range(1, 12)}


def check(k):
    t0 = time.perf_counter()
    try:
        note = CRITERIA[k]()
        elapsed = time.perf_counter() - t0
        assert elapsed <= LIMITS[k], f"took {elapsed:.1f}s, limit {LIMITS[k]}s"
    except AssertionError as exc:
        return False, f"FAIL criterion {k}: {exc!r} ({time.perf_counter() - t0:.1f}s)"
    return True, f"PASS criterion {k}: {note} ({elapsed:.1f}s)"


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k, capsys):
    ok, line = check(k)
    with capsys.disabled():
        print(line)
    assert ok, line


if __name__ == "__main__":
    results = [check(k) for k in sorted(CRITERIA)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
