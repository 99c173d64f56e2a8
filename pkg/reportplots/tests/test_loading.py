"""Stream and envelope parsing."""

import json

import numpy as np
import pytest

from reportplots import (
    LoadError,
    available_quantities,
    load_envelopes,
    load_records,
    series,
)


def _write_stream(path, rows):
    path.write_text("\n".join(json.dumps(r) for r in rows) + "\n")


def _rows(ts, fn):
    return [
        {
            "t": t,
            "lqRho": {"2": 1.0, "4": 0.8},
            "lqZeta": fn(t),
            "lipU": 0.3,
        }
        for t in ts
    ]


def test_load_records_and_series(tmp_path):
    stream = tmp_path / "d.ndjson"
    _write_stream(stream, _rows([0.0, 0.5, 1.0], lambda t: 2.0 * t + 1.0))
    records = load_records(str(stream))
    assert len(records) == 3
    ts, values = series(records, "lqZeta")
    np.testing.assert_allclose(ts, [0.0, 0.5, 1.0])
    np.testing.assert_allclose(values, [1.0, 2.0, 3.0])


def test_grouped_series_flattened_name(tmp_path):
    stream = tmp_path / "d.ndjson"
    _write_stream(stream, _rows([0.0, 1.0], lambda t: t))
    records = load_records(str(stream))
    assert "lqRho_4" in available_quantities(records)
    _, values = series(records, "lqRho_4")
    np.testing.assert_allclose(values, [0.8, 0.8])


def test_missing_series_is_reported_with_available_names(tmp_path):
    stream = tmp_path / "d.ndjson"
    _write_stream(stream, _rows([0.0], lambda t: t))
    records = load_records(str(stream))
    with pytest.raises(LoadError, match="lqZeta"):
        series(records, "nope")


def test_blank_lines_tolerated(tmp_path):
    stream = tmp_path / "d.ndjson"
    rows = _rows([0.0, 1.0], lambda t: t)
    stream.write_text(
        json.dumps(rows[0]) + "\n\n" + json.dumps(rows[1]) + "\n"
    )
    assert len(load_records(str(stream))) == 2


def test_malformed_stream_rejected(tmp_path):
    stream = tmp_path / "d.ndjson"
    stream.write_text('{"t": 0.0}\nnot json\n')
    with pytest.raises(LoadError, match="line 2"):
        load_records(str(stream))
    stream.write_text("[1, 2, 3]\n")
    with pytest.raises(LoadError):
        load_records(str(stream))
    stream.write_text("")
    with pytest.raises(LoadError, match="no records"):
        load_records(str(stream))


def test_load_envelopes(tmp_path):
    env = tmp_path / "e.json"
    env.write_text(json.dumps({
        "fits": [
            {"quantity": "lqZeta", "A": 1.5, "B": 0.2,
             "maxRelExcess": 0.0, "degenerate": False},
        ]
    }))
    fits = load_envelopes(str(env))
    assert fits["lqZeta"]["A"] == 1.5


def test_envelope_validation(tmp_path):
    env = tmp_path / "e.json"
    env.write_text(json.dumps({"fits": [{"quantity": "x", "A": 1.0}]}))
    with pytest.raises(LoadError, match="missing keys"):
        load_envelopes(str(env))
    env.write_text(json.dumps({"other": []}))
    with pytest.raises(LoadError, match="fits"):
        load_envelopes(str(env))
    with pytest.raises(LoadError):
        load_envelopes(str(tmp_path / "missing.json"))
