"""Command-line front end.

Exit codes: 0 success / valid, 1 semantic failure (invalid colouring or
unknown exact value), 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import asdict

from . import exact, generators, harness
from .graph import GraphFormatError, degeneracy, format_edge_list, power_graph, read_edge_list
from .paths import PathBudgetExceeded, enumerate_paths
from .twophase import RankingBug, rank_bounded_degree, rank_degenerate
from .verify import RankedColouring, find_violations, violation_report


def positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _read_colouring(path: str) -> RankedColouring:
    with open(path) as fh:
        text = fh.read()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError:
        obj = None
    if isinstance(obj, dict):
        values = obj["colours"]
    elif isinstance(obj, list):
        values = obj
    else:
        values = []
        for lineno, line in enumerate(text.splitlines(), start=1):
            line = line.split("#", 1)[0]
            for tok in line.split():
                try:
                    values.append(int(tok))
                except ValueError:
                    raise GraphFormatError(f"non-integer colour {tok!r}", lineno) from None
    return RankedColouring.of(values)


def cmd_rank(args) -> int:
    g = read_edge_list(args.graph)
    d = args.d if args.d is not None else degeneracy(g)
    if args.delta is not None:
        res = rank_bounded_degree(g, args.ell, d, args.delta, args.seed)
    else:
        res = rank_degenerate(g, args.ell, d, args.seed)
    valid = not find_violations(g, args.ell, res.colouring)
    out = dict(res.to_dict(), valid=valid)
    _emit(json.dumps(out), args.out)
    return 0 if valid else 1


def cmd_verify(args) -> int:
    g = read_edge_list(args.graph)
    col = _read_colouring(args.colouring)
    if len(col) != g.n:
        raise GraphFormatError(f"colouring has {len(col)} entries, graph has {g.n} vertices")
    violations = find_violations(g, args.ell, col)
    sys.stdout.write(violation_report(violations, col, "json" if args.format == "json" else "text"))
    if args.format == "json":
        sys.stdout.write("\n")
    return 0 if not violations else 1


def cmd_exact(args) -> int:
    g = read_edge_list(args.graph)
    res = exact.exact_ranking_number(g, args.ell, budget=args.budget, method=args.method)
    print(json.dumps(res.to_dict()))
    return 0 if res.exhaustive else 1


def cmd_gen(args) -> int:
    spec = generators.GenSpec(args.family, args.n, d=args.d if args.d is not None else 1,
                              delta=args.delta, seed=args.seed, cols=args.cols)
    _emit(generators.generate_text(spec), args.out, newline=False)
    return 0


def cmd_power(args) -> int:
    g = read_edge_list(args.graph)
    _emit(format_edge_list(power_graph(g, args.ell).graph), args.out, newline=False)
    return 0


def cmd_paths(args) -> int:
    g = read_edge_list(args.graph)
    _emit(enumerate_paths(g, args.ell).dump(), args.out, newline=False)
    return 0


def _bench_output(args, records, summaries=()) -> None:
    if args.format == "json":
        trials = [asdict(r) for r in records]
        if not args.timing:
            for t in trials:
                del t["wall_time"]
        text = json.dumps({"trials": trials, "summary": list(summaries)})
        _emit(text, args.out)
    else:
        _emit(harness.records_csv(records, summaries, timing=args.timing), args.out, newline=False)


def cmd_bench_scaling(args) -> int:
    seeds = range(args.seed, args.seed + args.trials)
    records, summaries = harness.bench_scaling(
        args.family, args.n, args.ell, args.d if args.d is not None else 2, seeds,
        delta=args.delta, workers=args.workers, measure_tail=args.tail,
    )
    _bench_output(args, records, summaries)
    return 0


def cmd_bench_tail(args) -> int:
    seeds = range(args.seed, args.seed + args.trials)
    records = harness.bench_tail(
        args.family, args.n, args.ell, args.d if args.d is not None else 2, seeds,
        delta=args.delta, workers=args.workers,
    )
    _bench_output(args, records)
    return 0


def _emit(text: str, out: str | None, newline: bool = True) -> None:
    if newline:
        text += "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lvrank", description="ell-vertex-rankings of degenerate graphs")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, graph=True, ell=True):
        if graph:
            p.add_argument("graph", help="edge-list file: 'n m' header then 'u v' lines")
        if ell:
            p.add_argument("--ell", type=positive_int, default=2)
        p.add_argument("--out", default=None, help="write to this file instead of stdout")

    p = sub.add_parser("rank", help="compute an ell-vertex-ranking")
    common(p)
    p.add_argument("--d", type=int, default=None, help="degeneracy bound (default: computed)")
    p.add_argument("--delta", type=positive_int, default=None,
                   help="use the bounded-degree algorithm with this maximum degree")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("verify", help="check a colouring, listing violations")
    p.add_argument("graph")
    p.add_argument("colouring", help="JSON with a 'colours' list, a JSON list, or integers")
    p.add_argument("--ell", type=positive_int, default=2)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("exact", help="exact ranking number by exhaustive search")
    p.add_argument("graph")
    p.add_argument("--ell", type=positive_int, default=2)
    p.add_argument("--budget", type=positive_int, default=exact.DEFAULT_BUDGET)
    p.add_argument("--method", choices=("classes", "assign"), default="classes",
                   help="top-class peeling (default) or per-vertex branch-and-bound")
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("gen", help="generate an instance in edge-list format")
    p.add_argument("family", choices=generators.FAMILIES)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--delta", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cols", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("power", help="emit G^ell as an edge list")
    common(p)
    p.set_defaults(func=cmd_power)

    p = sub.add_parser("paths", help="dump all paths of length <= ell")
    common(p)
    p.set_defaults(func=cmd_paths)

    for name, func, multi in (("bench-scaling", cmd_bench_scaling, True),
                              ("bench-tail", cmd_bench_tail, False)):
        p = sub.add_parser(name)
        p.add_argument("--family", default="random_d_degenerate", choices=generators.FAMILIES)
        if multi:
            p.add_argument("--n", type=int, nargs="*", default=[])
            p.add_argument("--tail", action="store_true", help="also measure phase-2 load")
        else:
            p.add_argument("--n", type=int, default=4096)
        p.add_argument("--ell", type=positive_int, default=2)
        p.add_argument("--d", type=int, default=None)
        p.add_argument("--delta", type=positive_int, default=None)
        p.add_argument("--seed", type=int, default=0, help="first seed")
        p.add_argument("--trials", type=int, default=5, help="seeds per n")
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--timing", action="store_true", help="add wall-time column")
        p.add_argument("--out", default=None)
        p.set_defaults(func=func)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except (GraphFormatError, ValueError, PathBudgetExceeded, OSError) as e:
        print(f"lvrank: error: {e}", file=sys.stderr)
        return 2
    except RankingBug as e:
        print(f"lvrank: verification failed: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
