"""Load plotdata CSV files and draw the per-order bound comparison figure.

The input contract is the CSV emitted by `weilbounds plotdata`: a `g` column
followed by `order_<n>` columns holding real-valued bounds, with empty cells
where an order does not apply at that genus.  Nothing is recomputed here;
the curves are the CSV values verbatim, empty cells become gaps in the line.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt


class PlotDataError(Exception):
    """Malformed or incomplete input CSV."""


@dataclass(frozen=True)
class PlotConfig:
    input_path: Path
    output_path: Path
    orders: tuple[int, ...] = (1, 2, 3, 4, 5)
    log_y: bool = True
    genus_range: tuple[int, int] | None = None

    def __post_init__(self):
        if not self.orders:
            raise PlotDataError("at least one order must be requested")
        if self.genus_range is not None and self.genus_range[0] > self.genus_range[1]:
            raise PlotDataError("genus range must be increasing")


@dataclass
class BoundSeries:
    """One curve per order; gaps are NaN entries, never zeros."""

    genus: list[int]
    curves: dict[int, list[float]] = field(default_factory=dict)


def load_series(config: PlotConfig) -> BoundSeries:
    path = Path(config.input_path)
    if not path.exists():
        raise PlotDataError(f"input file not found: {path}")
    with open(path, newline="") as handle:
        reader = csv.DictReader(handle)
        header = reader.fieldnames or []
        if "g" not in header:
            raise PlotDataError("missing column: g")
        for order in config.orders:
            if f"order_{order}" not in header:
                raise PlotDataError(f"missing column: order_{order}")
        series = BoundSeries(genus=[], curves={order: [] for order in config.orders})
        for row in reader:
            try:
                genus = int(row["g"])
            except (TypeError, ValueError) as exc:
                raise PlotDataError(f"bad genus cell {row.get('g')!r}") from exc
            if config.genus_range is not None:
                lo, hi = config.genus_range
                if not lo <= genus <= hi:
                    continue
            series.genus.append(genus)
            for order in config.orders:
                cell = row[f"order_{order}"]
                if cell is None or cell == "":
                    series.curves[order].append(math.nan)
                else:
                    try:
                        series.curves[order].append(float(cell))
                    except ValueError as exc:
                        raise PlotDataError(
                            f"bad value {cell!r} in column order_{order}"
                        ) from exc
    if not series.genus:
        raise PlotDataError("no data rows after filtering")
    return series


def build_figure(config: PlotConfig, series: BoundSeries):
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    for order in config.orders:
        ax.plot(series.genus, series.curves[order], label=f"order {order}")
    if config.log_y:
        ax.set_yscale("log")
    ax.set_xlabel("genus")
    ax.set_ylabel("upper bound on the point count")
    ax.legend()
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    return fig


def render(config: PlotConfig) -> Path:
    """Write the figure for the configured CSV; returns the output path."""
    series = load_series(config)
    fig = build_figure(config, series)
    out = Path(config.output_path)
    fig.savefig(out)
    plt.close(fig)
    return out
