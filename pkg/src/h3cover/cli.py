"""Command-line front end tying construction, verification, covering checks,
bound tables, exhaustive search, and partition recovery into reproducible runs.

Exit codes are a stable contract: 0 ok, 1 I/O failure, 2 usage error,
3 claim failure, 4 budget exhaustion.  JSON output is byte-identical for
identical invocations (seeds default to 0, never to entropy; wall-clock
timings appear only in table mode).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .analysis import c2_bounds, c2_exact, recover_partition, verify_construction
from .constructions import (
    ConstructionClaims,
    Tripartition,
    admissible_sample,
    blow_up,
    f1,
    f1_variant,
    f2,
    f3,
    f4,
    f32_tripartite,
    fano_bipartite,
    steiner,
)
from .core import load_h3, write_h3
from .patterns import pattern, uncovered_vertices

SCHEMA = 1

CONSTRUCTION_NAMES = ("f1", "f1e", "f1p", "f2", "f3", "f4", "sts", "blowup", "fano2", "f32tri")


def _emit(payload: dict, fmt: str, table_lines=None) -> None:
    if fmt == "json":
        print(json.dumps(payload, sort_keys=True, separators=(",", ":")))
    else:
        for line in table_lines or [json.dumps(payload, indent=2, sort_keys=True)]:
            print(line)


def _claims_path(h3_path: str) -> Path:
    p = Path(h3_path)
    if p.suffix == ".h3":
        return p.with_suffix(".claims.json")
    return Path(str(p) + ".claims.json")


def cmd_construct(args) -> int:
    name = args.name
    if name == "sts":
        if args.t is None:
            raise ValueError("sts needs --t")
        g = steiner(args.t)
        claims = ConstructionClaims(
            name="sts",
            n=args.t,
            min_codegree=1,
            uncovered=(),
            partition=Tripartition(apex=None, parts=()),
            params=(("t", args.t),),
        )
    elif name == "blowup":
        if args.base is None:
            raise ValueError("blowup needs --base pointing at a .h3 file")
        base = load_h3(args.base)
        g, claims = blow_up(base, args.factor)
    else:
        if args.n is None:
            raise ValueError(f"{name} needs --n")
        n = args.n
        if name == "f1":
            g, claims = f1(n)
        elif name == "f1e":
            case = args.case if args.case is not None else str(n % 3)
            pairs = admissible_sample(case, n, args.seed)
            g, claims = f1_variant(case, pairs, n)
        elif name == "f1p":
            pairs = admissible_sample("2p", n, args.seed)
            g, claims = f1_variant("2p", pairs, n)
        elif name == "f2":
            g, claims = f2(n)
        elif name == "f3":
            g, claims = f3(n)
        elif name == "f4":
            g, claims = f4(n)
        elif name == "fano2":
            g, claims = fano_bipartite(n)
        elif name == "f32tri":
            g, claims = f32_tripartite(n)
        else:
            raise ValueError(f"unknown construction {name!r}")
    out = args.output or f"{name}_{claims.n}.h3"
    write_h3(g, out, args.fmt)
    cpath = _claims_path(out)
    with open(cpath, "w", encoding="ascii") as fh:
        json.dump(claims.as_json(), fh, sort_keys=True, separators=(",", ":"))
        fh.write("\n")
    payload = {
        "schema": SCHEMA,
        "command": "construct",
        "output": str(out),
        "claims_path": str(cpath),
        "claims": claims.as_json(),
    }
    _emit(payload, args.format, [f"wrote {out} and {cpath}", f"claimed min codegree: {claims.min_codegree}"])
    return 0


def cmd_verify(args) -> int:
    g = load_h3(args.input)
    cpath = args.claims or _claims_path(args.input)
    with open(cpath, "r", encoding="ascii") as fh:
        claims = ConstructionClaims.from_json(json.load(fh))
    pat = pattern(args.pattern)
    report = verify_construction(g, claims, pat)
    payload = {
        "schema": SCHEMA,
        "command": "verify",
        "input": str(args.input),
        "pattern": pat.name,
        **report.as_json(),
    }
    lines = [
        f"{'PASS' if c.passed else 'FAIL'}  {c.name}: expected {c.expected}, measured {c.measured}"
        for c in report.checks
    ]
    _emit(payload, args.format, lines)
    return 0 if report.ok else 3


def cmd_cover(args) -> int:
    g = load_h3(args.input)
    pat = pattern(args.pattern)
    unc = uncovered_vertices(g, pat)
    payload = {
        "schema": SCHEMA,
        "command": "cover",
        "input": str(args.input),
        "pattern": pat.name,
        "n": g.n,
        "uncovered": list(unc),
        "covered_count": g.n - len(unc),
    }
    _emit(payload, args.format, [f"uncovered vertices: {list(unc)}"])
    return 0


def cmd_search(args) -> int:
    pat = pattern(args.pattern)
    rep = c2_exact(
        pat,
        args.n,
        budget_seconds=args.budget_seconds,
        workers=args.workers,
        prune_iso=args.prune_iso if args.prune_iso else None,
        engine=args.engine,
    )
    payload = {
        "schema": SCHEMA,
        "command": "search",
        "pattern": rep.pattern,
        "n": rep.n,
        "value": rep.value,
        "exhaustive": rep.exhaustive,
        "engine": rep.engine,
        "workers": args.workers,
        "prune_iso": bool(args.prune_iso),
        "graphs_scanned": rep.graphs_scanned,
        "witness": {"n": rep.witness.n, "edges": [list(e) for e in rep.witness.edges()]}
        if rep.witness
        else None,
        "uncovered_vertex": rep.uncovered_vertex,
        "note": rep.note,
    }
    lines = [
        f"c2({rep.pattern}, n={rep.n}) = {rep.value}"
        + ("" if rep.exhaustive else "  [PARTIAL: not exhaustive]"),
        f"graphs scanned: {rep.graphs_scanned}  engine: {rep.engine}  wall: {rep.wall_ms:.1f} ms",
    ]
    _emit(payload, args.format, lines)
    return 0 if rep.exhaustive else 4


def cmd_bounds(args) -> int:
    pat = pattern(args.pattern)
    span = args.n
    if ".." in span:
        lo_s, hi_s = span.split("..", 1)
        lo, hi = int(lo_s), int(hi_s)
    else:
        lo = hi = int(span)
    rows = []
    for n in range(lo, hi + 1):
        br = c2_bounds(pat, n)
        rows.append(
            {
                "n": n,
                "lower": br.lower,
                "upper": br.upper,
                "exact": br.exact,
                "provenance": br.provenance,
            }
        )
    payload = {"schema": SCHEMA, "command": "bounds", "pattern": pat.name, "rows": rows}
    lines = [f"{'n':>4} {'lower':>6} {'upper':>6} {'exact':>6}"]
    for r in rows:
        lines.append(f"{r['n']:>4} {r['lower']:>6} {r['upper']:>6} {str(r['exact']):>6}")
    _emit(payload, args.format, lines)
    return 0


def cmd_recover(args) -> int:
    g = load_h3(args.input)
    rec = recover_partition(g, args.apex, Fraction(args.delta))
    if rec is None:
        payload = {
            "schema": SCHEMA,
            "command": "recover",
            "input": str(args.input),
            "apex": args.apex,
            "found": False,
        }
        _emit(payload, args.format, ["no partition recovered"])
        return 0
    d = rec.diagnostics
    payload = {
        "schema": SCHEMA,
        "command": "recover",
        "input": str(args.input),
        "apex": args.apex,
        "found": True,
        "parts": [list(p) for p in rec.partition.parts],
        "seed_triangle": list(rec.seed_triangle),
        "bucket_sizes": list(rec.bucket_sizes),
        "violations": {
            "within_part_link": d.within_part_link,
            "missing_cross_link": d.missing_cross_link,
            "tripartite_edges": d.tripartite_edges,
            "missing_two_part": d.missing_two_part,
        },
        "sizes": list(d.sizes),
        "max_size_deviation": str(d.max_size_deviation),
        "delta": str(rec.slack),
        "guarantee_applies": rec.guarantee_applies,
    }
    lines = [
        f"parts: {[list(p) for p in rec.partition.parts]}",
        f"violations: {payload['violations']}",
    ]
    _emit(payload, args.format, lines)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="h3cover", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="generate a construction plus its claims sidecar")
    p.add_argument("name", choices=CONSTRUCTION_NAMES)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--t", type=int, default=None, help="vertex count for sts")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--case", choices=("0", "1", "2", "2p"), default=None)
    p.add_argument("--base", default=None, help=".h3 file with the base graph for blowup")
    p.add_argument("--factor", type=int, default=2, help="part size for blowup")
    p.add_argument("-o", "--output", default=None)
    p.add_argument("--fmt", choices=("text", "hex"), default="text")
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="re-measure a claims sidecar against its graph")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--claims", default=None)
    p.add_argument("--pattern", required=True)
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("cover", help="list the vertices no pattern copy passes through")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--pattern", required=True)
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("search", help="exact threshold by exhaustion at tiny n")
    p.add_argument("--pattern", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--prune-iso", action="store_true")
    p.add_argument("--budget-seconds", type=float, default=None)
    p.add_argument("--engine", choices=("auto", "scan", "dfs"), default="auto")
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("bounds", help="closed-form bracket table over a range of n")
    p.add_argument("--pattern", required=True)
    p.add_argument("--n", required=True, help="single value or range like 7..18")
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("recover", help="recover an apex tripartition and measure violations")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--apex", type=int, required=True)
    p.add_argument("--delta", default="1/429")
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.set_defaults(func=cmd_recover)

    return top


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
