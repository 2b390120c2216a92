"""Command line front end.

Exit status: 0 success, 1 predicate false (verify), 2 usage error,
3 infeasible (partition plan does not fit, exact guard exceeded),
4 copy-enumeration cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import bounds as bnd
from .colouring import (INFINITY, Colouring, check_tree_unique, eta_violations,
                        proper_violations, r_violations)
from .construct import (PlanDoesNotFit, partition_colouring, random_colouring,
                        resample_tree_unique)
from .exact import MODES, ExactQuery, GuardExceeded, exact_chromatic
from .graph import GenParams, Graph, generate
from .montecarlo import (ExperimentConfig, estimate_event_probability, results_to_csv,
                         run_experiment, summarise)
from .patterns import DEFAULT_COPY_CAP, CopyCapExceeded, parse_pattern

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_INFEASIBLE, EXIT_CAP = 0, 1, 2, 3, 4


def _r_arg(text: str):
    if text.lower() in ("inf", "infinity", "oo"):
        return INFINITY
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("r must be >= 1 or 'inf'")
    return value


def _seed_arg(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return value


def _constants_arg(text: str) -> dict:
    out = {}
    for item in filter(None, text.split(",")):
        key, _, val = item.partition("=")
        if not _:
            raise argparse.ArgumentTypeError(f"expected key=value, got {item!r}")
        out[key.strip()] = float(val)
    return out


def _write(path: str | None, text: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _load_graph(path: str) -> Graph:
    return Graph.from_edge_list(Path(path).read_text())


def _add_mode_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--mode", choices=MODES, required=True)
    p.add_argument("--eta", type=float)
    p.add_argument("--r", type=_r_arg)
    p.add_argument("--pattern", type=str)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="uniqcol", description="Unique colourings of random graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="sample G(n, p) as an edge list")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--seed", type=_seed_arg, required=True)
    p.add_argument("-o", "--output")

    p = sub.add_parser("colour", help="build a colouring with one of the strategies")
    p.add_argument("graph")
    p.add_argument("--strategy", choices=("partition", "random", "resample"), required=True)
    p.add_argument("--seed", type=_seed_arg)
    p.add_argument("--r", type=_r_arg, default=1)
    p.add_argument("--p", type=float, help="generation probability (partition)")
    p.add_argument("--M", type=float, help="class-count constant (partition)")
    p.add_argument("--q", type=int, help="palette size (random, resample)")
    p.add_argument("--pattern", type=str, help="tree pattern (resample)")
    p.add_argument("--max-iters", type=int)
    p.add_argument("--cap", type=int, default=DEFAULT_COPY_CAP, help="copy-enumeration cap (resample)")
    p.add_argument("-o", "--output", help="colouring file (default stdout)")
    p.add_argument("--outcome", help="outcome JSON file (default stderr)")

    p = sub.add_parser("verify", help="check a colouring against a predicate")
    p.add_argument("graph")
    p.add_argument("colouring")
    _add_mode_args(p)
    p.add_argument("--cap", type=int, default=DEFAULT_COPY_CAP, help="copy-enumeration cap (tree mode)")

    p = sub.add_parser("exact", help="exact colour number on a small graph")
    p.add_argument("graph")
    _add_mode_args(p)
    p.add_argument("--guard", type=int, default=12)
    p.add_argument("-o", "--output", help="witness colouring file")

    p = sub.add_parser("bounds", help="evaluate theoretical bounds as JSON")
    p.add_argument("--kind", choices=bnd.KINDS, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--eta", type=float)
    p.add_argument("--r", type=_r_arg)
    p.add_argument("--t", type=int)
    p.add_argument("--constants", type=_constants_arg, default={})

    p = sub.add_parser("experiment", help="run a JSON-configured sweep, writing CSV")
    p.add_argument("config")
    p.add_argument("-o", "--output")
    p.add_argument("--workers", type=int)

    p = sub.add_parser("estimate", help="estimate P(G(n,p) contains a copy of a tree)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--pattern", required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=_seed_arg, required=True)
    return parser


def _need(parser, args, *names):
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        parser.error(f"{args.command} needs {', '.join(missing)}")


def _cmd_gen(args, parser):
    try:
        g = generate(GenParams(args.n, args.p, args.seed))
    except ValueError as exc:
        parser.error(str(exc))
    _write(args.output, g.to_edge_list())
    return EXIT_OK


def _cmd_colour(args, parser):
    g = _load_graph(args.graph)
    if args.strategy == "partition":
        _need(parser, args, "p", "M")
        try:
            out = partition_colouring(g, args.r, args.p, args.M)
        except PlanDoesNotFit as exc:
            print(f"infeasible: {exc}", file=sys.stderr)
            return EXIT_INFEASIBLE
    elif args.strategy == "random":
        _need(parser, args, "seed", "q")
        out = random_colouring(g, args.q, args.seed)
    else:
        _need(parser, args, "seed", "q", "pattern")
        try:
            out = resample_tree_unique(g, parse_pattern(args.pattern), args.q, args.seed,
                                       max_iters=args.max_iters, cap=args.cap)
        except CopyCapExceeded as exc:
            print(f"cap exceeded: {exc}", file=sys.stderr)
            return EXIT_CAP
    _write(args.output, out.colouring.to_text())
    outcome = {"strategy": out.strategy, "colours_used": out.colours_used,
               "attempts": out.attempts, "verified": out.verified, "seed": out.seed,
               "reason": out.reason,
               "details": {k: (str(v) if v == math.inf else v) for k, v in out.details.items()}}
    text = json.dumps(outcome, sort_keys=True) + "\n"
    if args.outcome:
        Path(args.outcome).write_text(text)
    else:
        sys.stderr.write(text)
    return EXIT_OK


def _query(args, parser, g: Graph, guard=12) -> ExactQuery:
    if args.mode == "eta":
        _need(parser, args, "eta")
    if args.mode == "r":
        _need(parser, args, "r")
    if args.mode == "tree":
        _need(parser, args, "pattern")
    pattern = parse_pattern(args.pattern) if args.mode == "tree" else None
    return ExactQuery(g, args.mode, eta=args.eta, r=args.r, pattern=pattern, guard=guard)


def _cmd_verify(args, parser):
    g = _load_graph(args.graph)
    f = Colouring.from_text(Path(args.colouring).read_text())
    q = _query(args, parser, g)
    if f.n != g.n:
        parser.error(f"colouring has {f.n} vertices, graph has {g.n}")
    if q.mode == "proper":
        bad = proper_violations(g, f)
        witness = {"edge": list(bad[0])} if bad else None
    elif q.mode == "eta":
        bad = eta_violations(g, f, q.eta)
        witness = {"vertex": bad[0]} if bad else None
    elif q.mode == "r":
        bad = r_violations(g, f, q.r)
        witness = {"vertex": bad[0]} if bad else None
    else:
        try:
            res = check_tree_unique(g, f, q.pattern, cap=args.cap)
        except CopyCapExceeded as exc:
            print(f"cap exceeded: {exc}", file=sys.stderr)
            return EXIT_CAP
        witness = {"copy": list(res.witness.mapping)} if res.witness else None
    verdict = witness is None
    report = {"verdict": verdict, "mode": q.mode}
    if witness:
        report["witness"] = witness
    print(json.dumps(report, sort_keys=True))
    return EXIT_OK if verdict else EXIT_FALSE


def _cmd_exact(args, parser):
    g = _load_graph(args.graph)
    try:
        res = exact_chromatic(_query(args, parser, g, guard=args.guard))
    except GuardExceeded as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    print(res.k)
    if args.output:
        Path(args.output).write_text(res.witness.to_text())
    else:
        sys.stdout.write(res.witness.to_text())
    return EXIT_OK


def _cmd_bounds(args, parser):
    try:
        rep = bnd.theorem_bounds(args.kind, args.n, args.p, eta=args.eta, r=args.r, t=args.t,
                                 constants=args.constants)
    except ValueError as exc:
        parser.error(str(exc))
    print(json.dumps(rep.as_dict(), sort_keys=True, default=str))
    return EXIT_OK


def _cmd_experiment(args, parser):
    cfg = ExperimentConfig.from_json(args.config)
    if args.workers:
        cfg.workers = args.workers
    results = run_experiment(cfg, output=args.output)
    if not (args.output or cfg.output):
        sys.stdout.write(results_to_csv(results))
    else:
        print(json.dumps({"cells": summarise(results)}, sort_keys=True, indent=2))
    return EXIT_OK


def _cmd_estimate(args, parser):
    est = estimate_event_probability(args.n, args.p, parse_pattern(args.pattern), args.trials, args.seed)
    print(json.dumps(est.as_dict(), sort_keys=True))
    return EXIT_OK


COMMANDS = {"gen": _cmd_gen, "colour": _cmd_colour, "verify": _cmd_verify, "exact": _cmd_exact,
            "bounds": _cmd_bounds, "experiment": _cmd_experiment, "estimate": _cmd_estimate}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args, parser)
    except (ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
