"""Command-line front end.

One experiment per invocation; composition happens in the shell::

    curvedchain energy --config sweep.cfg --out energy.csv
    curvedchain fit --config sweep.cfg --input energy.csv --out report.txt
    curvedchain check --criteria 1,2,3

Subcommands: spectrum | energy | entropy | potential | force | fit | check.
`check` (also reachable as `curvedchain --check`) runs the built-in
acceptance suite and prints one pass/fail line per criterion.
"""

from __future__ import annotations

import argparse
import sys

from .acceptance import format_table, run_criteria
from .config import parse_config
from .errors import ConfigError, ConvergenceError, CurvedChainError
from .runner import run_experiment

RUN_COMMANDS = ("spectrum", "energy", "entropy", "potential", "force", "fit")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="curvedchain",
        description="Dirac vacuum on deformed free-fermionic chains: "
        "sweeps, CSV output, scaling fits, acceptance checks.",
    )
    parser.add_argument(
        "--check", action="store_true", help="run the acceptance suite and exit"
    )
    sub = parser.add_subparsers(dest="command")
    for name in RUN_COMMANDS:
        p = sub.add_parser(name, help=f"run a {name} experiment from a config file")
        p.add_argument("--config", required=True, help="path to the config document")
        p.add_argument("--out", help="output path (overrides the config)")
        p.add_argument("--jobs", type=int, default=1, help="worker threads")
        p.add_argument(
            "--variant",
            choices=("eq19", "eq20"),
            help="force-prediction form (overrides the config)",
        )
        if name == "fit":
            p.add_argument("--input", help="energy-sweep CSV (overrides the config)")
    p = sub.add_parser(name="check", help="run the built-in acceptance suite")
    p.add_argument(
        "--criteria",
        help="comma-separated criterion numbers (default: all eleven)",
    )
    p.add_argument("--quiet", action="store_true", help="suppress detail lines")
    return parser


def _run_check(args) -> int:
    ids = None
    if getattr(args, "criteria", None):
        ids = [int(tok) for tok in args.criteria.split(",") if tok.strip()]
    results = run_criteria(ids)
    print(format_table(results, verbose=not getattr(args, "quiet", False)))
    return 0 if all(r.passed for r in results) else 1


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.check:
        return _run_check(args)
    if args.command is None:
        parser.print_help()
        return 2
    if args.command == "check":
        return _run_check(args)
    try:
        with open(args.config) as fh:
            text = fh.read()
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return 2
    overrides = {}
    if args.out:
        overrides["output_path"] = args.out
    if args.variant:
        overrides["variant"] = args.variant
    if getattr(args, "input", None):
        overrides["input_path"] = args.input
    try:
        cfg = parse_config(text, default_experiment=args.command, overrides=overrides)
        out = run_experiment(cfg, jobs=args.jobs)
    except ConfigError as exc:
        where = f" (line {exc.line})" if exc.line else ""
        print(f"config error{where}: {exc}", file=sys.stderr)
        return 2
    except ConvergenceError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    except CurvedChainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
