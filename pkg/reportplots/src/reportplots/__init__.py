"""Plots for solver diagnostic streams: series data with envelope overlays.

Consumes the solver's file formats only (NDJSON diagnostics, envelope
JSON); it never imports the solver itself.
"""

from .figures import LOG_FLOOR, PlotData, prepare_plot, render
from .loading import (
    LoadError,
    available_quantities,
    load_envelopes,
    load_records,
    series,
)

__version__ = "0.1.0"

__all__ = [
    "LOG_FLOOR",
    "LoadError",
    "PlotData",
    "available_quantities",
    "load_envelopes",
    "load_records",
    "prepare_plot",
    "render",
    "series",
]
