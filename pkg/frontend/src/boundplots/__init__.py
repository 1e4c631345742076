"""Plot per-order point-count bound curves from plotdata CSV files."""

from .core import BoundSeries, PlotConfig, PlotDataError, build_figure, load_series, render

__all__ = [
    "BoundSeries",
    "PlotConfig",
    "PlotDataError",
    "build_figure",
    "load_series",
    "render",
]

__version__ = "0.1.0"
