"""Command-line front end for the simulation harness.

Subcommands:
    sweep-ratio   mean deviation per method over the ratio grid -2..2 (0.1 steps)
    sweep-n       mean deviation per method over n in {10, ..., 100}
    dump          raw per-trial deviation records for one cell
    bounds        per-method deviation half-widths for one cell

Exit codes: 0 success, 2 invalid arguments, 3 I/O failure.
"""

import argparse
import sys

from .bounds import BOUNDED_METHODS
from .estimators import ALL_METHODS
from .harness import (
    BOUNDS_HEADER,
    DUMP_HEADER,
    SWEEP_HEADER,
    DataModel,
    ExperimentConfig,
    bounds_table,
    dump_deviations,
    sweep_n,
    sweep_ratio,
    write_csv,
)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="smoothmean",
        description="Deviation experiments for smoothed-perturbation mean estimators.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("sweep-ratio", "mean deviation over the mean-to-SD ratio grid (--ratio is ignored)"),
        ("sweep-n", "mean deviation over the sample-size grid (--n is ignored)"),
        ("dump", "raw per-trial deviation records for one cell"),
        ("bounds", "per-method deviation half-widths for one cell"),
    ):
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("--dist", choices=("normal", "lognormal"), default="normal")
        cmd.add_argument("--var-level", choices=("low", "mid", "high"), default="low")
        cmd.add_argument("--ratio", type=float, default=1.0, help="mean-to-SD ratio in [-2, 2]")
        cmd.add_argument("--n", type=int, default=20, help="sample size")
        cmd.add_argument("--trials", type=int, default=10_000)
        cmd.add_argument("--delta", type=float, default=0.01, help="confidence parameter in (0, 1/2)")
        cmd.add_argument("--seed", type=int, default=0)
        cmd.add_argument("--methods", default=",".join(ALL_METHODS), help="comma-separated method ids")
        cmd.add_argument("--out", required=True, help="output CSV path")
        cmd.add_argument("--workers", type=int, default=1)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)

    methods = tuple(m.strip() for m in args.methods.split(",") if m.strip())
    if not methods:
        parser.error("--methods must name at least one method")
    for m in methods:
        if m not in ALL_METHODS:
            parser.error(f"unknown method {m!r}; valid ids: {', '.join(ALL_METHODS)}")
    if args.command == "bounds":
        unbounded = [m for m in methods if m not in BOUNDED_METHODS]
        if unbounded:
            parser.error(f"no deviation bound exists for: {', '.join(unbounded)}")
    if args.workers < 1:
        parser.error("--workers must be a positive integer")

    try:
        model = DataModel(family=args.dist, variance_level=args.var_level, ratio=args.ratio)
        config = ExperimentConfig(
            model=model,
            n=args.n,
            trials=args.trials,
            delta=args.delta,
            seed=args.seed,
            methods=methods,
            name=args.command,
        )
    except ValueError as exc:
        parser.error(str(exc))

    if args.command == "sweep-ratio":
        header, rows = SWEEP_HEADER, sweep_ratio(config, workers=args.workers)
    elif args.command == "sweep-n":
        header, rows = SWEEP_HEADER, sweep_n(config, workers=args.workers)
    elif args.command == "dump":
        header, rows = DUMP_HEADER, dump_deviations(config, workers=args.workers)
    else:
        header, rows = BOUNDS_HEADER, bounds_table(config)

    try:
        write_csv(args.out, header, rows)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
