"""Command-line front end.

Every subcommand writes machine-readable output to stdout and diagnostics
to stderr. Exit codes: 0 success, 1 counterexample or failed audit,
2 usage or runtime error, 3 negative Hamilton decision.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys
from pathlib import Path

from .errors import ConvergenceError, GraphError, ParameterError
from .families import FamilySpec, build
from .graph import BipartiteGraph, parse_graph
from .hamiltonian import b_closure, hamilton_cycle, hamilton_path, max_biclique
from .search import EnumFilter, enum_all, enum_dense, extremal_audit, reports_to_csv, verify
from .spectral import DEFAULT_TOL, all_bounds, spectral_report
from .theorems import THEOREMS

EXIT_OK, EXIT_FOUND, EXIT_ERROR, EXIT_NEGATIVE = 0, 1, 2, 3


def _positive(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return value


def _default_tol() -> float:
    env = os.environ.get("SPECTRAL_TOL")
    if env is None:
        return DEFAULT_TOL
    try:
        return _positive(env)
    except (ValueError, argparse.ArgumentTypeError):
        raise ParameterError(f"SPECTRAL_TOL must be a positive number, got {env!r}") from None


def read_graph(source: str) -> BipartiteGraph:
    """``-`` reads stdin, an existing path reads the file, anything else is inline text."""
    if source == "-":
        text = sys.stdin.read()
    elif os.path.exists(source):
        text = Path(source).read_text()
    else:
        text = source
    return parse_graph(text)


def _emit_graph(g: BipartiteGraph, compact: bool) -> None:
    print(g.to_compact() if compact else g.to_json())


def _emit_json(obj, indent: int | None = 2) -> None:
    print(json.dumps(obj, indent=indent))


# subcommands


def cmd_gen(args) -> int:
    _emit_graph(build(FamilySpec(args.family, args.n, args.k)), args.compact)
    return EXIT_OK


def cmd_enum(args) -> int:
    flt = EnumFilter(args.min_degree, args.min_edges, args.max_edges, args.dedup)
    if args.max_missing is None:
        stream = enum_all(args.m, args.n, flt)
    else:
        stream = enum_dense(args.m, args.n, args.max_missing, flt)
    count = 0
    for g in stream:
        count += 1
        if not args.count:
            _emit_graph(g, not args.json)
    if args.count:
        print(count)
    return EXIT_OK


def cmd_spectrum(args) -> int:
    _emit_json(spectral_report(read_graph(args.graph), args.tol).to_dict())
    return EXIT_OK


def cmd_bounds(args) -> int:
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["bound", "left", "right", "satisfied", "slack"])
    for check in all_bounds(read_graph(args.graph), args.tol):
        w.writerow(check.csv_row())
    return EXIT_OK


def cmd_closure(args) -> int:
    trace = b_closure(read_graph(args.graph), reverse=args.reverse)
    if args.compact:
        print(trace.graph.to_compact())
    else:
        _emit_json(trace.to_dict(), indent=None)
    return EXIT_OK


def cmd_hamilton(args) -> int:
    g = read_graph(args.graph)
    if args.cycle:
        cert = hamilton_cycle(g, args.limit)
        kind = "cycle"
    else:
        cert = hamilton_path(g, args.limit)
        kind = "path"
    if cert is None:
        _emit_json({"kind": kind, "exists": False})
        return EXIT_NEGATIVE
    _emit_json({"kind": kind, "exists": True, "vertices": cert.to_list()}, indent=None)
    return EXIT_OK


def cmd_biclique(args) -> int:
    w = max_biclique(read_graph(args.graph))
    _emit_json({"s": w.s, "t": w.t, "order": w.order, "x_set": list(w.x_set), "y_set": list(w.y_set)})
    return EXIT_OK


def cmd_verify(args) -> int:
    report = verify(
        args.theorem, args.n, args.k, mode=args.mode, budget=args.budget, seed=args.seed,
        dedup=not args.no_dedup, max_missing=args.max_missing, workers=args.workers,
    )
    if args.out:
        Path(args.out).write_text(json.dumps(report.to_dict(), indent=2))
    if args.csv:
        sys.stdout.write(reports_to_csv([report]))
    else:
        summary = {k: v for k, v in report.to_dict().items() if k != "exceptions"}
        _emit_json(summary)
    if not report.in_range:
        print(f"note: {report.theorem} at n={args.n}, k={args.k} is outside the stated range", file=sys.stderr)
    for err in report.errors:
        print(f"error: {err}", file=sys.stderr)
    if report.counterexamples:
        return EXIT_FOUND
    return EXIT_ERROR if report.errors else EXIT_OK


def cmd_audit(args) -> int:
    report = extremal_audit(args.family, args.n, args.k)
    _emit_json(report.to_dict())
    for note in report.notes:
        print(f"audit: {note}", file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_FOUND


# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bispec", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def graph_cmd(name, helptext):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("graph", help="graph file, inline m:n:HEX or JSON, or - for stdin")
        return p

    def fmt(p):
        g = p.add_mutually_exclusive_group()
        g.add_argument("--json", action="store_true", help="JSON graph object (default)")
        g.add_argument("--compact", action="store_true", help="m:n:HEX encoding")

    p = sub.add_parser("gen", help="build a named graph")
    p.add_argument("--family", required=True, help="B, Q, R, S, T, Gamma0, Lspider, L1 or L2")
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    fmt(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("enum", help="stream graphs on fixed parts, one per line")
    p.add_argument("--m", type=int, required=True, help="size of X")
    p.add_argument("--n", type=int, required=True, help="size of Y")
    p.add_argument("--min-degree", type=int, default=0)
    p.add_argument("--min-edges", type=int, default=0)
    p.add_argument("--max-edges", type=int)
    p.add_argument("--max-missing", type=int, help="only graphs missing at most this many edges")
    p.add_argument("--dedup", action="store_true", help="one graph per isomorphism class")
    p.add_argument("--count", action="store_true", help="print only the number of graphs")
    fmt(p)
    p.set_defaults(func=cmd_enum)

    tol = _default_tol()
    p = graph_cmd("spectrum", "spectral radii as JSON")
    p.add_argument("--tol", type=_positive, default=tol)
    p.set_defaults(func=cmd_spectrum)

    p = graph_cmd("bounds", "edge and degree bounds on the spectral radii as CSV")
    p.add_argument("--tol", type=_positive, default=tol)
    p.set_defaults(func=cmd_bounds)

    p = graph_cmd("closure", "B-closure of a balanced graph")
    p.add_argument("--reverse", action="store_true", help="scan pairs in reverse order")
    p.add_argument("--compact", action="store_true", help="print only the closed graph")
    p.set_defaults(func=cmd_closure)

    p = graph_cmd("hamilton", "exact Hamilton path or cycle with certificate")
    kind = p.add_mutually_exclusive_group(required=True)
    kind.add_argument("--path", action="store_true")
    kind.add_argument("--cycle", action="store_true")
    p.add_argument("--limit", type=int, default=24, help="maximum number of vertices")
    p.set_defaults(func=cmd_hamilton)

    p = graph_cmd("biclique", "largest complete bipartite subgraph")
    p.set_defaults(func=cmd_biclique)

    p = sub.add_parser("verify", help="run a theorem campaign")
    p.add_argument("--theorem", required=True, help=", ".join(THEOREMS))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--mode", choices=("exhaustive", "dense", "random"), default="exhaustive")
    p.add_argument("--budget", type=int, default=1000, help="samples in random mode")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-missing", type=int, help="dense mode override")
    p.add_argument("--no-dedup", action="store_true", help="scan labelled graphs")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", help="write the full JSON report here")
    p.add_argument("--csv", action="store_true", help="print a CSV summary row")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("audit", help="check a named exception graph")
    p.add_argument("--family", required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.set_defaults(func=cmd_audit)
    return parser


def run(argv=None) -> int:
    try:
        parser = build_parser()
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr)
    try:
        return args.func(args)
    except (GraphError, ParameterError, ConvergenceError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def main() -> None:
    sys.exit(run())
