"""Command-line front end.

Exit codes: 0 success, 1 failed invariant suites, 2 fuel exhausted,
3 parse error, 4 closed evaluation stuck on a free variable.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import warnings
from pathlib import Path

from .bench import run_family, to_csv, to_json
from .checks import SUITES, Workbench, run_suites
from .corpus import generate
from .engines import DEFAULT_FUEL, Strategy, run
from .normalforms import onorm, ufnorm
from .syntax import BinderRenamingWarning, ParseError, parse_program, show, size
from .varsets import anv, nv, sorted_names, unv, useless

EXIT_OK = 0
EXIT_SUITE_FAILED = 1
EXIT_FUEL = 2
EXIT_PARSE = 3
EXIT_STUCK = 4


def _program_text(arg: str) -> str:
    if arg.startswith("@"):
        return Path(arg[1:]).read_text()
    return arg


def _fuel(args) -> int:
    if args.fuel is not None:
        fuel = args.fuel
    else:
        fuel = int(os.environ.get("CBNEED_FUEL", DEFAULT_FUEL))
    if fuel < 1:
        raise SystemExit("fuel must be positive")
    return fuel


def _parse(arg: str):
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", BinderRenamingWarning)
        p = parse_program(_program_text(arg))
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    return p


def _braces(names) -> str:
    return "{" + ",".join(sorted_names(names)) + "}"


def cmd_run(args) -> int:
    p = _parse(args.program)
    strategy = Strategy(args.strategy)
    report = run(p, strategy, _fuel(args), keep_trace=args.trace is not None)
    if args.trace is not None:
        with open(args.trace, "w") as out:
            for i, s in enumerate(report.steps, 1):
                out.write(json.dumps({"i": i, "kind": str(s.kind), "pos": s.path,
                                      "prog": show(s.after), "size": size(s.after)})
                          + "\n")
        if report.trace_truncated:
            print(f"warning: trace truncated after {len(report.steps)} steps",
                  file=sys.stderr)
    print(f"final: {show(report.final)}")
    print("counts: " + " ".join(f"{k}={v}" for k, v in report.counts.items()))
    if report.stuck is not None:
        print(f"stuck: free variable {report.stuck}")
        return EXIT_STUCK
    if report.fuel_exhausted:
        print(f"fuel exhausted after {report.total} steps")
        return EXIT_FUEL
    cls = ufnorm(report.final) if strategy is Strategy.USEFUL else onorm(report.final)
    print(f"class: {cls}")
    return EXIT_OK


def cmd_check(args) -> int:
    p = _parse(args.program)
    if args.predicate == "onorm":
        print(onorm(p))
    elif args.predicate == "ufnorm":
        print(ufnorm(p))
    else:
        print(f"nv={_braces(nv(p))} anv={_braces(anv(p))} "
              f"unv={_braces(unv(p))} useless={_braces(useless(p))}")
    return EXIT_OK


def cmd_oracle(args) -> int:
    if args.max_size is not None:
        os.environ.setdefault("CBNEED_ORACLE_MAX_SIZE", str(max(200, args.max_size)))
    bench = Workbench(generate(args.count, args.max_size, args.seed))
    results = run_suites(bench, args.suite or None)
    for r in results:
        print(r.summary())
    if all(r.passed for r in results):
        print(f"all suites passed ({len(bench.programs)} programs)")
        return EXIT_OK
    return EXIT_SUITE_FAILED


def cmd_bench(args) -> int:
    points = run_family(args.max_n, unfold_cap=args.unfold_cap)
    text = to_csv(points) if args.format == "csv" else to_json(points) + "\n"
    sys.stdout.write(text)
    capped = [p.n for p in points if p.unfold_size == "capped"]
    if capped:
        print(f"note: unfolding capped for n in {capped}", file=sys.stderr)
    if args.plot:
        from .plotting import plot_family
        plot_family(points, args.plot)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cbneed", description="Closed, open and useful call-by-need evaluation.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="evaluate a program")
    p_run.add_argument("program", help="program text, or @FILE")
    p_run.add_argument("--strategy", choices=[s.value for s in Strategy],
                       default="useful")
    p_run.add_argument("--fuel", type=int, default=None,
                       help="step limit (default: $CBNEED_FUEL or 10000)")
    p_run.add_argument("--trace", metavar="FILE",
                       help="write one JSON line per step")
    p_run.set_defaults(func=cmd_run)

    p_check = sub.add_parser("check", help="classify a program")
    p_check.add_argument("program", help="program text, or @FILE")
    p_check.add_argument("--predicate", choices=["onorm", "ufnorm", "varsets"],
                         default="ufnorm")
    p_check.set_defaults(func=cmd_check)

    p_oracle = sub.add_parser("oracle", help="run invariant suites on a random corpus")
    p_oracle.add_argument("--count", type=int, default=500)
    p_oracle.add_argument("--max-size", type=int, default=40)
    p_oracle.add_argument("--seed", type=int, default=7)
    p_oracle.add_argument("--suite", action="append", choices=sorted(SUITES),
                          help="restrict to one suite (repeatable)")
    p_oracle.set_defaults(func=cmd_oracle)

    p_bench = sub.add_parser("bench", help="benchmark reports")
    p_bench.add_argument("family", choices=["size-explosion"])
    p_bench.add_argument("--max-n", type=int, default=12)
    p_bench.add_argument("--format", choices=["csv", "json"], default="csv")
    p_bench.add_argument("--unfold-cap", type=int, default=None)
    p_bench.add_argument("--plot", metavar="FILE",
                         help="also render a figure (any matplotlib format)")
    p_bench.set_defaults(func=cmd_bench)
    return parser


def main(argv: list | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as err:
        print(f"parse error: {err}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
