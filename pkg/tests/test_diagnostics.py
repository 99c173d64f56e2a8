"""Diagnostics sampling, envelope fits, and the persistence verdict."""

import dataclasses
import json
import math

import numpy as np
import pytest

from fracbouss.diagnostics import (
    DiagnosticsConfig,
    DiagnosticsRecord,
    DiagnosticsTracker,
    NumericsError,
    envelope_report,
    fit_envelope,
    persistence_verdict,
    tail_fraction,
)
from fracbouss.dynamics import Formulation, SolverState
from fracbouss.fields import ScalarField
from fracbouss.grid import SpectralGrid
from fracbouss.multipliers import apply_multiplier, s_operator
from fracbouss.norms import lq_norm
from fracbouss.presets import random_state
from fracbouss.randomfields import random_scalar


def _synthetic(ts, value_fn, tail=0.0, diss_fn=None):
    records = []
    for t in ts:
        v = value_fn(t)
        records.append(DiagnosticsRecord(
            t=t,
            lq_rho={2.0: 1.0, 4.0: 0.8, 8.0: 0.7},
            lq_zeta=v,
            lq_omega=v,
            sobolev_rho_sq=1.0,
            sobolev_zeta=v,
            lq_u=v,
            lip_u=v,
            diss_integral=(diss_fn(t) if diss_fn else 0.1 * t),
            tail_energy=tail,
        ))
    return records


def test_record_key_order():
    rec = _synthetic([0.0], lambda t: 1.0)[0]
    d = rec.to_json_dict()
    assert list(d) == ["t", "lqRho", "lqZeta", "lqOmega", "sobolevRhoSQ",
                       "sobolevZeta", "lqU", "lipU", "dissIntegral",
                       "tailEnergy"]
    # and the line parses back to the same values
    assert json.loads(rec.to_ndjson_line()) == d


def test_config_validation():
    with pytest.raises(ValueError):
        DiagnosticsConfig(s=0.5)
    with pytest.raises(ValueError):
        DiagnosticsConfig(q=1.0)
    with pytest.raises(ValueError):
        DiagnosticsConfig(q=math.inf)


def test_tracker_sample_matches_direct_norms():
    cfg = DiagnosticsConfig(s=1.5, q=4.0)
    tracker = DiagnosticsTracker(cfg)
    st = random_state(64, 1.5, seed=2, formulation=Formulation.ZETA)
    rec = tracker.sample(st)
    assert rec.t == 0.0
    assert rec.diss_integral == 0.0
    assert rec.lq_rho[2.0] == pytest.approx(lq_norm(st.rho, 2.0), rel=1e-13)
    assert rec.lq_zeta == pytest.approx(lq_norm(st.vort, 4.0), rel=1e-13)
    # the triangle inequality ties the three tracked fields together
    s_rho = apply_multiplier(st.rho, s_operator(1.5))
    assert rec.lq_omega <= rec.lq_zeta + lq_norm(s_rho, 4.0) + 1e-12


def test_trapezoid_accumulation():
    cfg = DiagnosticsConfig()
    tracker = DiagnosticsTracker(cfg)
    st = random_state(32, 1.5, seed=3, formulation=Formulation.ZETA)
    r0 = tracker.sample(st)
    # same fields later in time: constant integrand, so the integral is
    # exactly dt times it
    later = dataclasses.replace(st, t=0.5)
    r1 = tracker.sample(later)
    assert r0.diss_integral == 0.0
    assert r1.diss_integral == pytest.approx(
        0.5 * tracker._prev_integrand, rel=1e-13
    )
    assert r1.diss_integral > 0.0


def test_tracker_raises_on_nonfinite():
    cfg = DiagnosticsConfig()
    tracker = DiagnosticsTracker(cfg)
    g = SpectralGrid(32)
    bad = np.zeros((32, 32))
    bad[5, 5] = np.nan
    st = SolverState(
        rho=ScalarField.from_physical(g, bad),
        vort=random_scalar(g, seed=1, band=4),
        formulation=Formulation.VORTICITY,
        t=0.0,
        alpha=1.5,
    )
    with pytest.raises(NumericsError):
        tracker.sample(st)


def test_tail_fraction_windows():
    g = SpectralGrid(96)  # retained band 32, window beyond 21.33
    x1, _ = g.coordinates()
    low = ScalarField.from_physical(g, np.cos(4 * x1))
    high = ScalarField.from_physical(g, np.cos(30 * x1))
    assert tail_fraction(low) < 1e-20  # fft rounding dust only
    assert tail_fraction(high) == pytest.approx(1.0, abs=1e-12)
    mixed = ScalarField.from_physical(g, np.cos(4 * x1) + np.cos(30 * x1))
    assert tail_fraction(mixed) == pytest.approx(0.5, abs=1e-12)
    const = ScalarField.from_physical(g, np.full((96, 96), 3.0))
    assert tail_fraction(const) == 0.0


# -- envelope fitting --------------------------------------------------------


def test_envelope_recovers_exact_exponential():
    ts = np.linspace(0.0, 2.0, 41)
    values = 0.7 * np.exp(1.3 * ts)
    fit = fit_envelope(ts, values, "demo")
    assert fit.b == pytest.approx(1.3, abs=1e-9)
    assert fit.a == pytest.approx(0.7, rel=1e-9)
    assert fit.max_rel_excess == 0.0
    assert not fit.degenerate


def test_envelope_bounds_noisy_series():
    rng = np.random.default_rng(17)
    ts = np.linspace(0.0, 1.0, 30)
    values = np.exp(0.5 * ts) * (1.0 + 0.2 * rng.random(30))
    fit = fit_envelope(ts, values, "noisy")
    assert fit.max_rel_excess == 0.0
    envelope = fit.a * np.exp(fit.b * ts)
    assert np.all(values <= envelope * (1.0 + 1e-12))


def test_envelope_degenerate_series():
    ts = np.linspace(0.0, 1.0, 5)
    fit = fit_envelope(ts, np.zeros(5), "flat")
    assert fit.degenerate
    assert fit.b == 0.0
    assert fit.a == 1e-14
    assert fit.max_rel_excess == 0.0


def test_envelope_single_sample():
    fit = fit_envelope([0.0], [2.5], "point")
    assert fit.a == 2.5 and fit.b == 0.0


def test_envelope_input_validation():
    with pytest.raises(ValueError):
        fit_envelope([0.0, 1.0], [1.0], "bad")
    with pytest.raises(ValueError):
        fit_envelope([0.0, 1.0], [1.0, -2.0], "negative")


def test_envelope_report_structure():
    records = _synthetic(np.linspace(0, 1, 11), lambda t: math.exp(0.3 * t))
    cfg = DiagnosticsConfig()
    report = envelope_report(records, cfg)
    names = [f["quantity"] for f in report["fits"]]
    assert names == ["lqRho_2", "lqRho_4", "lqRho_8", "lqZeta", "lqOmega",
                     "sobolevRhoSQ", "sobolevZeta", "lqU", "lipU"]
    for f in report["fits"]:
        assert set(f) == {"quantity", "A", "B", "maxRelExcess", "degenerate"}
        assert f["maxRelExcess"] == 0.0


# -- the verdict --------------------------------------------------------------


def _ts():
    return np.linspace(0.0, 1.0, 21)


def test_verdict_passes_for_tame_run():
    records = _synthetic(_ts(), lambda t: math.exp(0.4 * t), tail=1e-9)
    v = persistence_verdict(records, DiagnosticsConfig())
    assert v.passed
    assert v.violated == ()
    d = v.to_json_dict()
    assert d["verdict"] == "PASS"
    assert set(d["clauses"]) == {"envelopes", "rhoConservation",
                                 "tailEnergy", "dissIntegral"}


def test_verdict_flags_runaway_growth():
    records = _synthetic(_ts(), lambda t: math.exp(20.0 * t))
    v = persistence_verdict(records, DiagnosticsConfig(b_ceiling=10.0))
    assert not v.passed
    assert "envelopes" in v.violated
    assert "lqZeta" in v.clauses["envelopes"]["failedQuantities"]


def test_verdict_flags_rho_drift():
    records = _synthetic(_ts(), lambda t: 1.0)
    drifted = []
    for i, r in enumerate(records):
        rho = dict(r.lq_rho)
        rho[4.0] = 0.8 * (1.0 + 0.01 * i)
        drifted.append(dataclasses.replace(r, lq_rho=rho))
    v = persistence_verdict(drifted, DiagnosticsConfig())
    assert "rhoConservation" in v.violated


def test_verdict_flags_tail_energy():
    records = _synthetic(_ts(), lambda t: 1.0, tail=1e-3)
    v = persistence_verdict(records, DiagnosticsConfig(tail_threshold=1e-6))
    assert not v.passed
    assert "tailEnergy" in v.violated
    assert v.clauses["tailEnergy"]["worst"] == pytest.approx(1e-3)


def test_verdict_flags_decreasing_dissipation():
    records = _synthetic(_ts(), lambda t: 1.0, diss_fn=lambda t: -t)
    v = persistence_verdict(records, DiagnosticsConfig())
    assert "dissIntegral" in v.violated


def test_verdict_empty_run_rejected():
    with pytest.raises(ValueError):
        persistence_verdict([], DiagnosticsConfig())
