"""Command line entry point: plot_bounds <input.csv> <output image>."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .core import PlotConfig, PlotDataError, render


def _parse_orders(text: str) -> tuple[int, ...]:
    try:
        orders = tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad order list {text!r}")
    if not orders or any(order < 1 for order in orders):
        raise argparse.ArgumentTypeError("orders must be positive integers")
    return orders


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plot_bounds",
        description="Plot bound-per-order curves from a plotdata CSV.",
    )
    parser.add_argument("input", type=Path, help="plotdata CSV file")
    parser.add_argument("output", type=Path, help="output image path (png, pdf, svg)")
    parser.add_argument(
        "--orders",
        type=_parse_orders,
        default=(1, 2, 3, 4, 5),
        help="comma separated list of orders to draw (default 1,2,3,4,5)",
    )
    parser.add_argument(
        "--linear-y",
        action="store_true",
        help="use a linear y axis instead of the default log scale",
    )
    parser.add_argument(
        "--g-range",
        metavar="LO..HI",
        default=None,
        help="restrict the genus range, e.g. 5..40",
    )
    return parser


def _parse_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    if not sep:
        raise PlotDataError(f"bad genus range {text!r}, expected LO..HI")
    try:
        return int(lo), int(hi)
    except ValueError:
        raise PlotDataError(f"bad genus range {text!r}, expected LO..HI")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        genus_range = _parse_range(args.g_range) if args.g_range else None
        config = PlotConfig(
            input_path=args.input,
            output_path=args.output,
            orders=args.orders,
            log_y=not args.linear_y,
            genus_range=genus_range,
        )
        render(config)
    except PlotDataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
