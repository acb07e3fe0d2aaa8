"""Figure-rendering CLI.

    smoothmean-figures render --kind KIND --in CSV [CSV ...] \
        [--bounds CSV] --out IMAGE --methods LIST

Exit codes: 0 success, 2 invalid arguments, 3 I/O failure,
4 input schema mismatch (offending column named on stderr).
"""

import argparse
import sys

from .csvio import SchemaError
from .render import KINDS, FigureSpec, render
from .theme import METHOD_COLORS


def _build_parser():
    parser = argparse.ArgumentParser(prog="smoothmean-figures", description="Render figures from smoothmean CSV output.")
    sub = parser.add_subparsers(dest="command", required=True)
    cmd = sub.add_parser("render", help="render one figure from experiment CSVs")
    cmd.add_argument("--kind", choices=KINDS, required=True)
    cmd.add_argument("--in", dest="inputs", nargs="+", required=True, help="input CSV path(s)")
    cmd.add_argument("--bounds", default=None, help="bounds CSV for histogram overlays")
    cmd.add_argument("--out", required=True, help="output image path")
    cmd.add_argument("--methods", required=True, help="comma-separated method ids")
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)

    methods = tuple(m.strip() for m in args.methods.split(",") if m.strip())
    if not methods:
        parser.error("--methods must name at least one method")
    for m in methods:
        if m not in METHOD_COLORS:
            parser.error(f"unknown method {m!r}; valid ids: {', '.join(METHOD_COLORS)}")

    try:
        spec = FigureSpec(kind=args.kind, inputs=tuple(args.inputs), out=args.out, methods=methods, bounds_path=args.bounds)
    except ValueError as exc:
        parser.error(str(exc))

    try:
        render(spec)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: cannot render to {args.out}: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
