"""Command-line interface: analyze, family, corpus, isoclinic.

Exit codes: 0 success, 1 usage or input error, 2 a verification check failed.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import corpus as C
from . import pcp
from .autos import DEFAULT_BUDGET
from .errors import InputNotFound, PcautError, UsageError
from .group import DEFAULT_CAP, FiniteGroup
from .verdicts import analyze, automorphisms, is_isoclinic

SCHEMA_VERSION = 1
EXIT_OK, EXIT_USAGE, EXIT_CHECK_FAILED = 0, 1, 2
ALL_SUITES = C.SUITES + ("isoclinism",)

log = logging.getLogger("pcaut")

FAMILY_PARAMS = {
    "p": int, "m": int, "n": int, "e": int, "r": int, "s": int, "t": int,
    "a": int, "b": int, "k": int, "c": int, "i": int, "j": int,
    "kind": str, "exponents": lambda v: [int(x) for x in v.split(",")],
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _common() -> argparse.ArgumentParser:
    # SUPPRESS defaults so flags may appear before or after the subcommand.
    p = argparse.ArgumentParser(add_help=False)
    S = argparse.SUPPRESS
    p.add_argument("--cap", type=int, default=S, help=f"largest group order to tabulate (default {DEFAULT_CAP})")
    p.add_argument("--budget", type=int, default=S, help=f"automorphism search budget (default {DEFAULT_BUDGET})")
    p.add_argument("--jobs", type=int, default=S, help="worker processes for corpus runs (default 1)")
    p.add_argument("--json", metavar="PATH", default=S, help="write the JSON report to PATH ('-' for stdout)")
    p.add_argument("--no-timings", action="store_true", default=S, help="omit timings for byte-stable output")
    p.add_argument("--verbose", action="store_true", default=S, help="log progress and include automorphism lists")
    return p


def _family_args(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("family parameters")
    for name, typ in FAMILY_PARAMS.items():
        g.add_argument(f"--{name}", type=typ, default=None)


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="pcaut", description="Class-preserving automorphisms of finite p-groups.", parents=[common])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", parents=[common], help="analyze one group")
    a.add_argument("file", nargs="?", help="presentation file")
    a.add_argument("--family", help="build from a named family instead of a file")
    _family_args(a)

    f = sub.add_parser("family", parents=[common], help="list families or emit a family presentation")
    fsub = f.add_subparsers(dest="action", required=True, parser_class=_Parser)
    fsub.add_parser("list", parents=[common])
    fb = fsub.add_parser("build", parents=[common])
    fb.add_argument("name")
    _family_args(fb)

    c = sub.add_parser("corpus", parents=[common], help="run verification suites over a corpus")
    c.add_argument("--spec", help="corpus spec JSON (default: the built-in corpus)")
    c.add_argument("--suites", help=f"comma-separated subset of {','.join(ALL_SUITES)}")
    c.add_argument("--empty", action="store_true", help="run over an empty corpus")

    i = sub.add_parser("isoclinic", parents=[common], help="decide whether two groups are isoclinic")
    i.add_argument("A", help="presentation file, corpus name, or family:key=value,...")
    i.add_argument("B")
    return parser


# ------------------------------------------------------------ inputs

def load_presentation_file(path: str, cap: int | None) -> FiniteGroup:
    fp = Path(path)
    if not fp.is_file():
        raise InputNotFound(f"no such presentation file: {path}", path=path)
    pres = pcp.parse_presentation(fp.read_text(encoding="utf-8"))
    return pcp.realize(pres, name=fp.stem, cap=cap)


def build_family(name: str, params: dict, cap: int | None) -> FiniteGroup:
    fam = C.get_family(name)
    unknown = set(params) - set(fam.params)
    if unknown:
        raise UsageError(f"family {name} does not take: {', '.join(sorted(unknown))}")
    return fam.build(cap=cap, **params)


def parse_descriptor(text: str) -> dict:
    """``family:k=v,k=v`` becomes a family descriptor; anything else is a file or corpus name."""
    if ":" in text:
        name, _, rest = text.partition(":")
        params = {}
        for item in filter(None, rest.split(";" if ";" in rest else ",")):
            k, eq, v = item.partition("=")
            if not eq or k not in FAMILY_PARAMS:
                raise UsageError(f"bad family parameter {item!r}")
            params[k] = FAMILY_PARAMS[k](v)
        return {"family": name, "params": params}
    if Path(text).suffix or "/" in text:
        return {"file": text}
    return {"corpus": text}


def resolve(desc: dict, cap: int | None) -> FiniteGroup:
    if "file" in desc:
        G = load_presentation_file(desc["file"], cap)
    elif "family" in desc:
        G = build_family(desc["family"], dict(desc.get("params", {})), cap)
    elif "corpus" in desc:
        entries = C.entry_lookup(C.default_corpus())
        if desc["corpus"] not in entries:
            raise UsageError(f"unknown corpus group {desc['corpus']!r}")
        G = entries[desc["corpus"]].build()
    else:
        raise UsageError(f"unresolvable descriptor {desc!r}")
    if desc.get("name"):
        G.name = desc["name"]
    return G


def _descriptor_name(desc: dict) -> str:
    if desc.get("name"):
        return desc["name"]
    if "family" in desc:
        ps = ",".join(f"{k}={v}" for k, v in desc.get("params", {}).items())
        return f"{desc['family']}({ps})"
    return str(desc.get("file") or desc.get("corpus"))


# ------------------------------------------------------------ output

def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _emit(obj, dest: str | None) -> None:
    text = _dump(obj)
    if dest and dest != "-":
        Path(dest).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _automorphism_listing(G: FiniteGroup, budget: int) -> dict:
    gens = [int(g) for g in G.minimal_generators]
    out = {"generators": [G.labels[g] for g in gens]}
    for kind in ("Inn", "Aut_c"):
        A = automorphisms(G, kind, budget)
        out[kind] = [[G.labels[int(x)] for x in img[gens]] for img in A.images]
    return out


def report_dict(G: FiniteGroup, budget: int, cap: int | None, timings: bool, verbose: bool) -> tuple[dict, bool]:
    rep = analyze(G, budget=budget, cap=cap)
    out = {"schema_version": SCHEMA_VERSION, **rep.to_dict(timings=timings)}
    if verbose:
        out["automorphisms"] = _automorphism_listing(G, budget)
    return out, rep.ok


# ------------------------------------------------------------ commands

def cmd_analyze(args) -> int:
    if bool(args.file) == bool(args.family):
        raise UsageError("give exactly one of a presentation file or --family")
    if args.file:
        G = load_presentation_file(args.file, args.cap)
    else:
        params = {k: getattr(args, k) for k in FAMILY_PARAMS if getattr(args, k) is not None}
        G = build_family(args.family, params, args.cap)
    log.info("analyzing %s (order %d)", G.name, G.order)
    out, ok = report_dict(G, args.budget, args.cap, not args.no_timings, args.verbose)
    _emit(out, args.json)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_family(args) -> int:
    if args.action == "list":
        fams = [f.describe() for f in C.FAMILIES.values()]
        if args.json:
            _emit({"schema_version": SCHEMA_VERSION, "families": fams}, args.json)
        else:
            for f in fams:
                print(f"{f['name']}({', '.join(f['params'])}): {f['constraints']}")
        return EXIT_OK
    fam = C.get_family(args.name)
    params = {k: getattr(args, k) for k in fam.params}
    sys.stdout.write(pcp.render(fam.build_presentation(cap=args.cap, **params)))
    return EXIT_OK


def _load_spec(args) -> tuple[list[dict], list[tuple[str, str]], tuple[str, ...], int, int | None]:
    budget, cap = args.budget, args.cap
    suites = ALL_SUITES
    if args.empty:
        groups, pairs = [], []
    elif args.spec:
        fp = Path(args.spec)
        if not fp.is_file():
            raise InputNotFound(f"no such corpus spec: {args.spec}", path=args.spec)
        try:
            spec = json.loads(fp.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise UsageError(f"corpus spec is not valid JSON: {exc}") from None
        groups = [parse_descriptor(g) if isinstance(g, str) else dict(g) for g in spec.get("groups", [])]
        pairs = [tuple(p) for p in spec.get("pairs", [])]
        suites = tuple(spec.get("suites", suites))
        budget = spec.get("budget", budget)
        cap = spec.get("cap", cap)
    else:
        groups = [{"corpus": e.name} for e in C.default_corpus()]
        pairs = C.default_isoclinic_pairs()
    if args.suites:
        suites = tuple(s.strip() for s in args.suites.split(",") if s.strip())
    bad = [s for s in suites if s not in ALL_SUITES]
    if bad:
        raise UsageError(f"unknown suites: {', '.join(bad)}")
    return groups, pairs, suites, budget, cap


def _run_entry(job) -> dict:
    desc, suites, budget, cap = job
    name = _descriptor_name(desc)
    try:
        G = resolve(desc, cap)
        row: dict = {"name": name, "order": G.order}
        group_suites = [s for s in suites if s != "isoclinism"]
        reps = C.run_suites(G, group_suites, budget=budget, cap=cap)
        row["suites"] = {k: r.to_dict() for k, r in reps.items()}
        row["counts"] = {k: r.counts() for k, r in reps.items()}
        row["failed"] = sorted(f"{k}:{c.name}" for k, r in reps.items() for c in r.failures)
    except PcautError as exc:
        return {"name": name, "error": exc.to_dict()}
    return row


def _run_pair(job) -> dict:
    a, b, budget, cap, by_name = job
    name = f"{a} ~ {b}"
    try:
        G = resolve(by_name.get(a) or parse_descriptor(a), cap)
        H = resolve(by_name.get(b) or parse_descriptor(b), cap)
        rep = C.isoclinism_pair_suite(G, H, budget=budget, cap=cap)
    except PcautError as exc:
        return {"name": name, "error": exc.to_dict()}
    return {
        "name": name,
        "suites": {"isoclinism": rep.to_dict()},
        "counts": {"isoclinism": rep.counts()},
        "failed": [f"isoclinism:{c.name}" for c in rep.failures],
    }


def _map(fn, jobs: list, workers: int) -> list:
    if workers <= 1 or len(jobs) <= 1:
        return [fn(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, jobs))


def _summary_table(rows: list[dict]) -> str:
    lines = [f"{'group':32s} {'order':>6s} {'pass':>5s} {'fail':>5s} {'n/a':>5s}  status"]
    totals = [0, 0, 0]
    for r in rows:
        if "error" in r:
            lines.append(f"{r['name']:32s} {'-':>6s} {'-':>5s} {'-':>5s} {'-':>5s}  error {r['error']['error']}")
            continue
        t = [sum(c[k] for c in r["counts"].values()) for k in ("true", "false", "n/a")]
        totals = [x + y for x, y in zip(totals, t)]
        status = "FAIL " + " ".join(r["failed"]) if r["failed"] else "ok"
        order = str(r.get("order", "-"))
        lines.append(f"{r['name']:32s} {order:>6s} {t[0]:5d} {t[1]:5d} {t[2]:5d}  {status}")
    errors = sum("error" in r for r in rows)
    lines.append(f"{len(rows)} rows, {totals[0]} passed, {totals[1]} failed, {totals[2]} not applicable, {errors} errors")
    return "\n".join(lines) + "\n"


def cmd_corpus(args) -> int:
    groups, pairs, suites, budget, cap = _load_spec(args)
    log.info("corpus: %d groups, %d pairs, suites %s", len(groups), len(pairs), ",".join(suites))
    rows = _map(_run_entry, [(g, suites, budget, cap) for g in groups], args.jobs)
    if "isoclinism" in suites and pairs:
        by_name = {_descriptor_name(g): g for g in groups}
        rows += _map(_run_pair, [(a, b, budget, cap, by_name) for a, b in pairs], args.jobs)
    sys.stdout.write(_summary_table(rows))
    if args.json:
        _emit({"schema_version": SCHEMA_VERSION, "suites": list(suites), "rows": rows}, args.json)
    return EXIT_CHECK_FAILED if any(r.get("failed") for r in rows) else EXIT_OK


def cmd_isoclinic(args) -> int:
    G = resolve(parse_descriptor(args.A), args.cap)
    H = resolve(parse_descriptor(args.B), args.cap)
    v = is_isoclinic(G, H, budget=args.budget, cap=args.cap)
    out = {"schema_version": SCHEMA_VERSION, "A": G.name, "B": H.name, "isoclinic": v.to_dict()}
    if not args.verbose:
        out["isoclinic"].pop("certificate", None)
    _emit(out, args.json)
    return EXIT_OK


COMMANDS = {"analyze": cmd_analyze, "family": cmd_family, "corpus": cmd_corpus, "isoclinic": cmd_isoclinic}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    defaults = {"cap": DEFAULT_CAP, "budget": DEFAULT_BUDGET, "jobs": 1, "json": None, "no_timings": False, "verbose": False}
    for k, v in defaults.items():
        if not hasattr(args, k):
            setattr(args, k, v)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return COMMANDS[args.command](args)
    except PcautError as exc:
        sys.stderr.write(_dump(exc.to_dict()))
        return EXIT_USAGE
    except OSError as exc:
        sys.stderr.write(_dump({"error": "IO_ERROR", "message": str(exc)}))
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
