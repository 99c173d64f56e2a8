"""Figure assembly: a tracked series with its fitted envelope curve.

Rendering is split into a pure preparation step (arrays in, arrays out)
and a matplotlib step, so the numerical behaviour is testable without
decoding images.  Output bytes are deterministic for fixed inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import matplotlib
import numpy as np

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .loading import LoadError, series

__all__ = ["PlotData", "prepare_plot", "render", "LOG_FLOOR"]

# values at or below this are clamped before a log-scale plot
LOG_FLOOR = 1e-16


@dataclass(frozen=True)
class PlotData:
    quantity: str
    ts: np.ndarray
    values: np.ndarray           # as plotted (clamped on log scale)
    raw_values: np.ndarray       # as read from the stream
    envelope: np.ndarray | None  # A e^{B t} sampled at ts, or None
    scale: str
    clamped: bool
    fit: dict | None


def prepare_plot(records: list, fits: dict | None, quantity: str,
                 scale: str = "linear") -> PlotData:
    if scale not in ("linear", "log"):
        raise LoadError(f"scale must be 'linear' or 'log', got '{scale}'")
    ts, raw = series(records, quantity)
    if not np.isfinite(raw).all():
        raise LoadError(f"series '{quantity}' contains non-finite samples")

    values = raw
    clamped = False
    if scale == "log":
        clamped = bool((raw <= LOG_FLOOR).any())
        values = np.maximum(raw, LOG_FLOOR)

    fit = fits.get(quantity) if fits else None
    envelope = None
    if fit is not None:
        envelope = float(fit["A"]) * np.exp(float(fit["B"]) * ts)
        if scale == "log":
            envelope = np.maximum(envelope, LOG_FLOOR)
    return PlotData(quantity, ts, values, raw, envelope, scale, clamped, fit)


def render(data: PlotData, out_path: str, title: str | None = None) -> None:
    """Draw the series (and envelope, if fitted) to an image file."""
    fig, ax = plt.subplots(figsize=(7.0, 4.5), dpi=110)
    try:
        ax.plot(data.ts, data.values, marker="o", markersize=3.0,
                linewidth=1.2, label=data.quantity)
        if data.envelope is not None:
            b = float(data.fit["B"])
            ax.plot(data.ts, data.envelope, linestyle="--", linewidth=1.4,
                    label=f"envelope, rate {b:+.3g}")
        if data.scale == "log":
            ax.set_yscale("log")
        ax.set_xlabel("t")
        ax.set_ylabel(data.quantity)
        note = " (values clamped for log scale)" if data.clamped else ""
        ax.set_title((title or data.quantity) + note)
        ax.grid(True, alpha=0.3)
        ax.legend(loc="best")
        fig.tight_layout()
        fig.savefig(out_path, metadata=_stable_metadata(out_path))
    finally:
        plt.close(fig)


def _stable_metadata(out_path: str) -> dict:
    """Strip writer fields that would vary between renders."""
    if out_path.lower().endswith(".png"):
        return {"Software": "reportplots"}
    if out_path.lower().endswith(".svg"):
        return {"Date": None, "Creator": "reportplots"}
    return {}
