"""Figure preparation and deterministic rendering."""

import json
import math

import numpy as np
import pytest

from reportplots import LOG_FLOOR, LoadError, prepare_plot, render


def _records(ts, fn):
    return [{"t": t, "lqZeta": fn(t), "lqRho": {"2": 0.0}} for t in ts]


def test_envelope_curve_bounds_data_everywhere():
    ts = np.linspace(0.0, 2.0, 41)
    records = _records(ts, lambda t: math.exp(t))
    # a fit produced by the solver always covers the data; mimic one
    fits = {"lqZeta": {"quantity": "lqZeta", "A": 1.0 + 1e-9, "B": 1.0,
                       "maxRelExcess": 0.0, "degenerate": False}}
    data = prepare_plot(records, fits, "lqZeta")
    assert data.envelope is not None
    assert np.all(data.envelope >= data.raw_values * (1.0 - 1e-12))


def test_zero_series_on_log_scale_is_clamped():
    records = _records([0.0, 0.5, 1.0], lambda t: 0.0)
    data = prepare_plot(records, None, "lqZeta", scale="log")
    assert data.clamped
    assert np.all(data.values == LOG_FLOOR)
    # raw values survive unchanged for anyone who wants them
    assert np.all(data.raw_values == 0.0)


def test_linear_scale_never_clamps():
    records = _records([0.0, 1.0], lambda t: 0.0)
    data = prepare_plot(records, None, "lqZeta")
    assert not data.clamped
    assert np.all(data.values == 0.0)


def test_unknown_quantity_raises():
    records = _records([0.0], lambda t: 1.0)
    with pytest.raises(LoadError):
        prepare_plot(records, None, "mystery")


def test_bad_scale_rejected():
    records = _records([0.0], lambda t: 1.0)
    with pytest.raises(LoadError):
        prepare_plot(records, None, "lqZeta", scale="cubic")


def test_nonfinite_series_rejected():
    records = _records([0.0, 1.0], lambda t: float("nan"))
    with pytest.raises(LoadError, match="non-finite"):
        prepare_plot(records, None, "lqZeta")


def test_render_writes_png(tmp_path):
    ts = np.linspace(0.0, 1.0, 11)
    records = _records(ts, lambda t: math.exp(0.5 * t))
    data = prepare_plot(records, None, "lqZeta")
    out = tmp_path / "fig.png"
    render(data, str(out))
    blob = out.read_bytes()
    assert blob[:8] == b"\x89PNG\r\n\x1a\n"
    assert len(blob) > 1000


def test_render_zero_series_log_scale_does_not_crash(tmp_path):
    records = _records([0.0, 0.5, 1.0], lambda t: 0.0)
    data = prepare_plot(records, None, "lqZeta", scale="log")
    out = tmp_path / "flat.png"
    render(data, str(out))
    assert out.exists()


def test_rerender_is_byte_identical(tmp_path):
    ts = np.linspace(0.0, 1.0, 11)
    records = _records(ts, lambda t: 0.3 * math.exp(0.8 * t))
    fits = {"lqZeta": {"quantity": "lqZeta", "A": 0.30001, "B": 0.8,
                       "maxRelExcess": 0.0, "degenerate": False}}
    data = prepare_plot(records, fits, "lqZeta", scale="log")
    a, b = tmp_path / "a.png", tmp_path / "b.png"
    render(data, str(a), title="series")
    render(data, str(b), title="series")
    assert a.read_bytes() == b.read_bytes()
