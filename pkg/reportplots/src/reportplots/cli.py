"""Command line: render one diagnostics series to an image file.

Exit codes: 0 figure written, 2 bad arguments or missing series,
3 unreadable input.
"""

from __future__ import annotations

import argparse
import sys

from .figures import prepare_plot, render
from .loading import LoadError, load_envelopes, load_records


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="reportplots",
        description="Plot a diagnostics series with its fitted envelope.",
    )
    parser.add_argument("--input", required=True,
                        help="diagnostics NDJSON stream")
    parser.add_argument("--envelope", default=None,
                        help="envelope fits JSON (optional)")
    parser.add_argument("--quantity", default=None,
                        help="series name, e.g. lqZeta or lqRho_4")
    parser.add_argument("--scale", choices=("linear", "log"),
                        default="linear")
    parser.add_argument("--out", default=None, help="output image path")
    parser.add_argument("--title", default=None)
    parser.add_argument("--list", action="store_true", dest="list_series",
                        help="print available series names and exit")
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if not args.list_series and (args.quantity is None or args.out is None):
        parser.error("--quantity and --out are required unless --list is given")
    try:
        records = load_records(args.input)
    except LoadError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3

    if args.list_series:
        from .loading import available_quantities

        for name in available_quantities(records):
            print(name)
        return 0

    fits = None
    if args.envelope:
        try:
            fits = load_envelopes(args.envelope)
        except LoadError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 3

    try:
        data = prepare_plot(records, fits, args.quantity, scale=args.scale)
    except LoadError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    try:
        render(data, args.out, title=args.title)
    except OSError as exc:
        print(f"error: cannot write figure: {exc}", file=sys.stderr)
        return 3
    print(args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
