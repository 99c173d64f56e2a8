"""Norm tracking along a run, exponential envelope fits, and the
persistence verdict.

The regularity argument controls every tracked norm by constants times
exp(C t) (twice-iterated for the Lipschitz norm of the velocity), so the
certificate this module produces is: fit A e^{B t} above each series,
require finite B below a ceiling, require the density norms conserved,
the spectral tail quiet, and the dissipation integral finite.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .dynamics import Formulation, SolverState, biot_savart, convert
from .fields import ScalarField, partial_derivative
from .multipliers import apply_multiplier, fractional_laplacian
from .norms import lq_norm, sobolev_norm

__all__ = [
    "DiagnosticsConfig",
    "DiagnosticsRecord",
    "DiagnosticsTracker",
    "EnvelopeFit",
    "PersistenceVerdict",
    "NumericsError",
    "fit_envelope",
    "series_from_records",
    "envelope_report",
    "persistence_verdict",
    "tail_fraction",
]


class NumericsError(RuntimeError):
    """A tracked quantity stopped being finite."""


@dataclass(frozen=True)
class DiagnosticsConfig:
    """What to measure and what the verdict demands."""

    s: float = 1.5
    q: float = 4.0
    norm_qs: tuple = (2.0, 4.0, 8.0)
    tail_threshold: float = 1e-6
    b_ceiling: float = 10.0
    rho_drift_tol: float = 1e-6
    envelope_floor: float = 1e-14

    def __post_init__(self) -> None:
        if self.s < 1.0:
            raise ValueError(
                f"diagnostics need s >= 1 (they track W^(s-1,q) of zeta), got {self.s}"
            )
        if not 1.0 < self.q < math.inf:
            raise ValueError(f"q must lie in (1, inf), got {self.q}")


@dataclass(frozen=True)
class DiagnosticsRecord:
    """One sample of every tracked quantity.

    NDJSON key order is fixed: t, lqRho, lqZeta, lqOmega, sobolevRhoSQ,
    sobolevZeta, lqU, lipU, dissIntegral, tailEnergy.
    """

    t: float
    lq_rho: dict
    lq_zeta: float
    lq_omega: float
    sobolev_rho_sq: float
    sobolev_zeta: float
    lq_u: float
    lip_u: float
    diss_integral: float
    tail_energy: float

    def to_json_dict(self) -> dict:
        return {
            "t": self.t,
            "lqRho": {f"{q:g}": v for q, v in self.lq_rho.items()},
            "lqZeta": self.lq_zeta,
            "lqOmega": self.lq_omega,
            "sobolevRhoSQ": self.sobolev_rho_sq,
            "sobolevZeta": self.sobolev_zeta,
            "lqU": self.lq_u,
            "lipU": self.lip_u,
            "dissIntegral": self.diss_integral,
            "tailEnergy": self.tail_energy,
        }

    def to_ndjson_line(self) -> str:
        return json.dumps(self.to_json_dict(), separators=(",", ":"))


def tail_fraction(f: ScalarField) -> float:
    """Spectral energy fraction in the outer third of the retained band.

    Window: max(|k1|, |k2|) > (2/3)(n/3).  Content beyond n/3 is held at
    zero by the dealiased dynamics, so spectral blocking shows up as
    pile-up just below the cutoff, inside this window.  The mean mode is
    excluded; an empty spectrum scores 0.
    """
    g = f.grid
    kmax = np.maximum(np.abs(g.k1), np.abs(g.k2))
    window = kmax > (2.0 / 3.0) * (g.n / 3.0)
    power = np.abs(f.spectral) ** 2
    total = float(power.sum() - power[0, 0])
    if total <= 0.0:
        return 0.0
    return float(power[window].sum()) / total


class DiagnosticsTracker:
    """Accumulates samples; owns the trapezoid dissipation integral."""

    def __init__(self, cfg: DiagnosticsConfig):
        self.cfg = cfg
        self._prev_t: float | None = None
        self._prev_integrand = 0.0
        self._integral = 0.0

    def sample(self, state: SolverState) -> DiagnosticsRecord:
        cfg = self.cfg
        zeta_state = convert(state, Formulation.ZETA)
        omega_state = convert(state, Formulation.VORTICITY)
        rho = state.rho
        zeta = zeta_state.vort
        omega = omega_state.vort

        u = biot_savart(omega)
        lip = 0.0
        for comp in (u.u1, u.u2):
            for axis in (1, 2):
                lip = max(
                    lip, float(np.abs(partial_derivative(comp, axis).physical).max())
                )

        w = ScalarField.from_physical(
            rho.grid, np.abs(zeta.physical) ** (cfg.q / 2.0)
        )
        integrand = lq_norm(
            apply_multiplier(w, fractional_laplacian(state.alpha / 2.0)), 2.0
        ) ** 2

        if self._prev_t is not None:
            dt = state.t - self._prev_t
            self._integral += 0.5 * (self._prev_integrand + integrand) * dt
        self._prev_t = state.t
        self._prev_integrand = integrand

        speed = ScalarField.from_physical(rho.grid, u.magnitude())
        record = DiagnosticsRecord(
            t=state.t,
            lq_rho={q: lq_norm(rho, q) for q in cfg.norm_qs},
            lq_zeta=lq_norm(zeta, cfg.q),
            lq_omega=lq_norm(omega, cfg.q),
            sobolev_rho_sq=sobolev_norm(rho, cfg.s, cfg.q),
            sobolev_zeta=sobolev_norm(zeta, cfg.s - 1.0, cfg.q),
            lq_u=lq_norm(speed, cfg.q),
            lip_u=lip,
            diss_integral=self._integral,
            tail_energy=max(tail_fraction(omega), tail_fraction(rho)),
        )
        for key, value in record.to_json_dict().items():
            values = value.values() if isinstance(value, dict) else (value,)
            if not all(math.isfinite(v) for v in values):
                raise NumericsError(f"{key} is not finite at t = {state.t:.6g}")
        return record


# -- envelope fits ---------------------------------------------------------


@dataclass(frozen=True)
class EnvelopeFit:
    """A e^{B t} fitted over a nonnegative series as a pointwise bound."""

    quantity: str
    a: float
    b: float
    max_rel_excess: float
    degenerate: bool = False

    def to_json_dict(self) -> dict:
        return {
            "quantity": self.quantity,
            "A": self.a,
            "B": self.b,
            "maxRelExcess": self.max_rel_excess,
            "degenerate": self.degenerate,
        }


def fit_envelope(
    ts, values, quantity: str, floor: float = 1e-14
) -> EnvelopeFit:
    """Least-squares exponential envelope over a series.

    Values are clamped to ``floor`` before taking logs; the fitted
    prefactor is then inflated so the envelope bounds every sample, which
    makes ``max_rel_excess`` exactly 0.  A series entirely at or below
    the floor is flagged degenerate (A = floor, B = 0).
    """
    ts = np.asarray(ts, dtype=float)
    values = np.asarray(values, dtype=float)
    if ts.shape != values.shape or ts.ndim != 1 or ts.size == 0:
        raise ValueError("need matching one-dimensional time and value arrays")
    if np.any(values < 0.0):
        raise ValueError(f"series '{quantity}' has negative entries")
    clipped = np.maximum(values, floor)
    if np.all(values <= floor):
        return EnvelopeFit(quantity, floor, 0.0, 0.0, degenerate=True)
    if ts.size == 1 or np.ptp(ts) == 0.0:
        return EnvelopeFit(quantity, float(clipped.max()), 0.0, 0.0)
    b, log_a = np.polyfit(ts, np.log(clipped), 1)
    a0 = math.exp(log_a)
    ratios = clipped / (a0 * np.exp(b * ts))
    bump = float(ratios.max())
    a = a0 * bump
    excess = float((ratios / bump).max() - 1.0)
    return EnvelopeFit(quantity, a, float(b), excess)


def series_from_records(records) -> dict:
    """Flatten records into {name: (ts, values)} for envelope fitting."""
    ts = np.array([r.t for r in records])
    out: dict = {}
    if not records:
        return out
    for q in records[0].lq_rho:
        out[f"lqRho_{q:g}"] = (ts, np.array([r.lq_rho[q] for r in records]))
    for name, attr in (
        ("lqZeta", "lq_zeta"),
        ("lqOmega", "lq_omega"),
        ("sobolevRhoSQ", "sobolev_rho_sq"),
        ("sobolevZeta", "sobolev_zeta"),
        ("lqU", "lq_u"),
        ("lipU", "lip_u"),
    ):
        out[name] = (ts, np.array([getattr(r, attr) for r in records]))
    return out


def envelope_report(records, cfg: DiagnosticsConfig) -> dict:
    """JSON-ready envelope fits for every tracked norm series."""
    fits = [
        fit_envelope(ts, vals, name, cfg.envelope_floor)
        for name, (ts, vals) in series_from_records(records).items()
    ]
    return {"fits": [f.to_json_dict() for f in fits]}


# -- the verdict -----------------------------------------------------------


@dataclass(frozen=True)
class PersistenceVerdict:
    passed: bool
    violated: tuple
    clauses: dict
    fits: tuple

    def to_json_dict(self) -> dict:
        return {
            "verdict": "PASS" if self.passed else "FAIL",
            "violated": list(self.violated),
            "clauses": self.clauses,
            "fits": [f.to_json_dict() for f in self.fits],
        }


def persistence_verdict(records, cfg: DiagnosticsConfig) -> PersistenceVerdict:
    """Certify a run against the Gronwall-envelope persistence criteria.

    Clauses: (a) every tracked norm admits an exponential envelope with
    finite rate B <= ceiling, (b) density L^q norms are conserved within
    tolerance, (c) tail energy stays below threshold (resolution was
    adequate), (d) the dissipation integral is finite and nondecreasing.
    """
    if not records:
        raise ValueError("cannot judge an empty run")
    clauses: dict = {}

    fits = tuple(
        fit_envelope(ts, vals, name, cfg.envelope_floor)
        for name, (ts, vals) in series_from_records(records).items()
    )
    bad_fits = [
        f.quantity
        for f in fits
        if not (math.isfinite(f.b) and f.a > 0.0 and f.b <= cfg.b_ceiling)
    ]
    clauses["envelopes"] = {
        "passed": not bad_fits,
        "bCeiling": cfg.b_ceiling,
        "failedQuantities": bad_fits,
    }

    drifts = {}
    for q in records[0].lq_rho:
        v0 = records[0].lq_rho[q]
        worst = max(abs(r.lq_rho[q] - v0) for r in records)
        drifts[f"{q:g}"] = worst / v0 if v0 > cfg.envelope_floor else worst
    clauses["rhoConservation"] = {
        "passed": all(d <= cfg.rho_drift_tol for d in drifts.values()),
        "tolerance": cfg.rho_drift_tol,
        "relativeDrift": drifts,
    }

    worst_tail = max(r.tail_energy for r in records)
    clauses["tailEnergy"] = {
        "passed": worst_tail <= cfg.tail_threshold,
        "threshold": cfg.tail_threshold,
        "worst": worst_tail,
    }

    diss = np.array([r.diss_integral for r in records])
    nondecreasing = bool(np.all(np.diff(diss) >= -1e-12 * max(1.0, diss.max())))
    clauses["dissIntegral"] = {
        "passed": bool(np.isfinite(diss).all()) and nondecreasing,
        "final": float(diss[-1]),
        "nondecreasing": nondecreasing,
    }

    violated = tuple(name for name, c in clauses.items() if not c["passed"])
    return PersistenceVerdict(not violated, violated, clauses, fits)
