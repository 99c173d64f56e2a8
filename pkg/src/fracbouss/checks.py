"""Numerical verification of the commutator identity and the inequalities
the global-regularity argument rests on.

Every check reports a signed margin (slack of the inequality, or minus
the residual of an identity) so the pass criterion is uniformly
"worst margin >= -tolerance".  Trial t of a suite is seeded with
``seed + t`` and can be replayed alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .fields import (
    ScalarField,
    VectorField,
    advect,
    dealias,
    multiply_dealias,
    partial_derivative,
)
from .grid import SpectralGrid
from .multipliers import (
    MultiplierSpec,
    apply_multiplier,
    fractional_laplacian,
    hm_decay_check,
    n_smoothing_ratio,
    n_tilde_multiplier,
    s_operator,
    sbar_operator,
)
from .norms import lq_norm
from .randomfields import max_clean_band, random_divfree_velocity, random_scalar

__all__ = [
    "InequalityReport",
    "advect",
    "commutator_s_advection",
    "commutator_identity_residual",
    "cordoba_terms",
    "cordoba_check",
    "gn_ratio",
    "kato_ponce_ratio",
    "inhom_kp_ratio",
    "run_suite",
    "SUITES",
]

#: max allowed relative residual for the exact commutator identity
IDENTITY_TOL = 1e-10

#: allowed one-sided growth of inequality ratios under n -> 2n
RATIO_GROWTH_TOL = 0.15

#: allowed two-sided change of the N-smoothing ratio under refinement
NSMOOTH_CHANGE_TOL = 0.10


@dataclass(frozen=True)
class InequalityReport:
    """Outcome of a seeded multi-trial check."""

    name: str
    trials: int
    worst_margin: float
    worst_seed: int
    passed: bool
    details: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "trials": self.trials,
            "worstMargin": self.worst_margin,
            "worstSeed": self.worst_seed,
            "passed": bool(self.passed),
            "details": self.details,
        }


# -- commutators ----------------------------------------------------------


def _require_divfree(u: VectorField) -> None:
    speed = lq_norm(
        ScalarField.from_physical(u.grid, u.magnitude()), 2.0
    )
    div = lq_norm(dealias(u.divergence()), 2.0)
    if div > 1e-10 * max(1.0, speed):
        raise ValueError(
            f"velocity is not divergence-free: ||div u||_2 = {div:.3e} "
            f"against speed scale {speed:.3e}"
        )


def commutator_s_advection(u: VectorField, rho: ScalarField, alpha: float) -> ScalarField:
    """[S, u.grad] rho = S(u.grad rho) - u.grad(S rho), products dealiased."""
    _require_divfree(u)
    s_mult = s_operator(alpha)
    term1 = apply_multiplier(advect(u, rho), s_mult)
    term2 = advect(u, apply_multiplier(rho, s_mult))
    return term1 - term2


def commutator_identity_residual(
    u: VectorField,
    rho: ScalarField,
    s: float,
    alpha: float,
    outer: MultiplierSpec | None = None,
) -> float:
    """Relative residual of the commutator splitting identity.

    With T the outer multiplier (default Lambda^(s-1)) and summation over j,

        T([S, u.grad] rho) = [T S dj, u_j] rho - [T dj, u_j] (S rho),

    which holds for divergence-free u and any Fourier multiplier T.
    Returns ||lhs - rhs||_2 / max(||lhs||_2, ||rhs||_2), with 0/0 read as 0.
    """
    if outer is None:
        if s < 1.0:
            raise ValueError(f"default outer multiplier needs s >= 1, got s={s}")
        outer = fractional_laplacian(s - 1.0)
    s_mult = s_operator(alpha)

    lhs = apply_multiplier(commutator_s_advection(u, rho, alpha), outer)

    srho = apply_multiplier(rho, s_mult)
    rhs = None
    for j, u_j in ((1, u.u1), (2, u.u2)):
        # [T S dj, u_j] rho
        t1 = apply_multiplier(
            apply_multiplier(partial_derivative(multiply_dealias(u_j, rho), j), s_mult),
            outer,
        )
        t2 = multiply_dealias(
            u_j,
            apply_multiplier(
                apply_multiplier(partial_derivative(rho, j), s_mult), outer
            ),
        )
        # [T dj, u_j] (S rho)
        t3 = apply_multiplier(partial_derivative(multiply_dealias(u_j, srho), j), outer)
        t4 = multiply_dealias(
            u_j, apply_multiplier(partial_derivative(srho, j), outer)
        )
        term = (t1 - t2) - (t3 - t4)
        rhs = term if rhs is None else rhs + term

    num = lq_norm(lhs - rhs, 2.0)
    den = max(lq_norm(lhs, 2.0), lq_norm(rhs, 2.0))
    if den == 0.0:
        return 0.0
    return num / den


# -- Cordoba-Cordoba positivity -------------------------------------------


def cordoba_terms(theta: ScalarField, p: float, s: float) -> tuple[float, float]:
    """Both sides of the pointwise-dissipation inequality.

    lhs = integral |theta|^(p-2) theta Lambda^s theta,
    rhs = (2/p) integral (Lambda^(s/2) |theta|^(p/2))^2.

    Pointwise powers are taken in physical space and quadratures use the
    rectangle rule; no dealiasing is applied, so at large p the margin is
    a quadrature statement about the sampled field.
    """
    if p < 2.0:
        raise ValueError(f"exponent must satisfy p >= 2, got {p}")
    if not 0.0 < s < 2.0:
        raise ValueError(f"dissipation order must lie in (0, 2), got {s}")
    grid = theta.grid
    v = theta.physical
    lam_theta = apply_multiplier(theta, fractional_laplacian(s)).physical
    lhs = float(np.sum(np.abs(v) ** (p - 2.0) * v * lam_theta) * grid.cell_area)

    w = ScalarField.from_physical(grid, np.abs(v) ** (p / 2.0))
    half = apply_multiplier(w, fractional_laplacian(s / 2.0)).physical
    rhs = float((2.0 / p) * np.sum(half * half) * grid.cell_area)
    return lhs, rhs


def cordoba_check(theta: ScalarField, p: float, s: float) -> float:
    """Margin lhs - rhs of the pointwise-dissipation inequality (>= 0 expected)."""
    lhs, rhs = cordoba_terms(theta, p, s)
    return lhs - rhs


# -- interpolation and commutator estimates -------------------------------


def gn_ratio(zeta: ScalarField, q: float, r: float, alpha: float) -> float:
    """Ratio of ||zeta||_r to the interpolation bound

        ||zeta||_q^theta1 * ||Lambda^(alpha/2) |zeta|^(q/2)||_2^theta2,

    theta1 = (r alpha - 2r + 2q)/(alpha r), theta2 = 4(r - q)/(alpha r q).
    Admissible range: q <= r <= 2q/(2 - alpha).  At r = q the bound
    degenerates to equality and the ratio is exactly 1.
    """
    if not 1.0 < alpha < 2.0:
        raise ValueError(f"alpha must lie in (1, 2), got {alpha}")
    if q < 2.0:
        raise ValueError(f"base exponent must satisfy q >= 2, got {q}")
    r_max = 2.0 * q / (2.0 - alpha)
    if not q <= r <= r_max:
        raise ValueError(
            f"target exponent r={r} outside admissible [q, 2q/(2-alpha)] = "
            f"[{q}, {r_max}]"
        )
    theta1 = (r * alpha - 2.0 * r + 2.0 * q) / (alpha * r)
    theta2 = 4.0 * (r - q) / (alpha * r * q)

    num = lq_norm(zeta, r)
    base = lq_norm(zeta, q)
    w = ScalarField.from_physical(zeta.grid, np.abs(zeta.physical) ** (q / 2.0))
    diss = lq_norm(
        apply_multiplier(w, fractional_laplacian(alpha / 2.0)), 2.0
    )
    den = base ** theta1 * diss ** theta2
    if den == 0.0:
        return 0.0 if num == 0.0 else math.inf
    return num / den


def _check_holder(q: float, pairs: tuple, allow_inf_second: bool) -> None:
    """Validate 1/q = 1/a + 1/b for each (a, b) pair, with range checks."""
    if not 1.0 < q < math.inf:
        raise ValueError(f"target exponent must lie in (1, inf), got {q}")
    for idx, (a, b) in enumerate(pairs):
        for e in (a, b):
            if e < q:
                raise ValueError(
                    f"Holder exponent {e} is below the target q={q}"
                )
        if idx == 1 and not allow_inf_second and math.isinf(a):
            raise ValueError("the second left exponent must be finite")
        inv = (0.0 if math.isinf(a) else 1.0 / a) + (
            0.0 if math.isinf(b) else 1.0 / b
        )
        if abs(inv - 1.0 / q) > 1e-12:
            raise ValueError(
                f"Holder pair ({a}, {b}) does not split 1/{q}: "
                f"1/{a} + 1/{b} = {inv:.12g} != {1.0 / q:.12g}"
            )


def _grad_magnitude(g: ScalarField) -> ScalarField:
    g1 = partial_derivative(g, 1)
    g2 = partial_derivative(g, 2)
    return ScalarField.from_physical(g.grid, np.hypot(g1.physical, g2.physical))


def kato_ponce_ratio(
    g: ScalarField,
    f: ScalarField,
    s: float,
    j: int,
    q: float,
    q1: float,
    qt1: float,
    q2: float,
    qt2: float,
) -> float:
    """Commutator-to-bound ratio for [Lambda^s dj, g] f.

    bound = ||f||_{q1} ||Lambda^{1+s} g||_{qt1}
          + ||Lambda^s f||_{q2} ||Lambda g||_{qt2},

    with 1/q = 1/q1 + 1/qt1 = 1/q2 + 1/qt2 and s in (0, 1).  q2 must be
    finite.  0/0 is read as 0.
    """
    if not 0.0 < s < 1.0:
        raise ValueError(f"commutator order must lie in (0, 1), got {s}")
    _check_holder(q, ((q1, qt1), (q2, qt2)), allow_inf_second=False)
    lam_s = fractional_laplacian(s)

    a = apply_multiplier(partial_derivative(multiply_dealias(g, f), j), lam_s)
    b = multiply_dealias(g, apply_multiplier(partial_derivative(f, j), lam_s))
    lhs = lq_norm(a - b, q)

    bound = lq_norm(f, q1) * lq_norm(
        apply_multiplier(g, fractional_laplacian(1.0 + s)), qt1
    ) + lq_norm(apply_multiplier(f, lam_s), q2) * lq_norm(
        apply_multiplier(g, fractional_laplacian(1.0)), qt2
    )
    if bound == 0.0:
        return 0.0 if lhs == 0.0 else math.inf
    return lhs / bound


def inhom_kp_ratio(
    g: ScalarField,
    f: ScalarField,
    mu: float,
    j: int,
    alpha: float,
    q: float,
    r1: float,
    rt1: float,
    r2: float,
    rt2: float,
) -> float:
    """Commutator-to-bound ratio for [Lambda^mu S dj, g] f.

    bound = ||grad g||_{r1} ||Lambda^mu Sbar f||_{rt1}
          + ||Lambda^{mu+1} Sbar g||_{r2} ||f||_{rt2},

    with 0 <= mu <= alpha and the same Holder-pair structure as the
    classical commutator estimate.
    """
    if not 0.0 <= mu <= alpha:
        raise ValueError(f"weight order must satisfy 0 <= mu <= alpha, got {mu}")
    _check_holder(q, ((r1, rt1), (r2, rt2)), allow_inf_second=True)
    s_mult = s_operator(alpha)
    sbar = sbar_operator(alpha)
    lam_mu = fractional_laplacian(mu)

    def op(h: ScalarField) -> ScalarField:
        return apply_multiplier(
            apply_multiplier(partial_derivative(h, j), s_mult), lam_mu
        )

    a = op(multiply_dealias(g, f))
    b = multiply_dealias(g, op(f))
    lhs = lq_norm(a - b, q)

    bound = lq_norm(_grad_magnitude(g), r1) * lq_norm(
        apply_multiplier(apply_multiplier(f, sbar), lam_mu), rt1
    ) + lq_norm(
        apply_multiplier(apply_multiplier(g, sbar), fractional_laplacian(mu + 1.0)),
        r2,
    ) * lq_norm(f, rt2)
    if bound == 0.0:
        return 0.0 if lhs == 0.0 else math.inf
    return lhs / bound


# -- seeded suites ---------------------------------------------------------


def _trial_fields(grid: SpectralGrid, seed: int, band: int):
    """One velocity/scalar pair per trial seed; replayable in isolation."""
    u = random_divfree_velocity(grid, 2 * seed, band=band)
    rho = random_scalar(grid, 2 * seed + 1, band=band)
    return u, rho


def run_identity_suite(
    trials: int = 64, seed: int = 0, n: int = 128, alpha: float = 1.5,
    s: float = 1.5, q: float = 4.0,
) -> InequalityReport:
    grid = SpectralGrid(n)
    band = min(16, max_clean_band(n))
    worst = 0.0
    worst_seed = seed
    for t in range(trials):
        u, rho = _trial_fields(grid, seed + t, band)
        res = commutator_identity_residual(u, rho, s, alpha)
        if res > worst:
            worst, worst_seed = res, seed + t
    return InequalityReport(
        name="identity",
        trials=trials,
        worst_margin=-worst,
        worst_seed=worst_seed,
        passed=worst <= IDENTITY_TOL,
        details={"maxResidual": worst, "tolerance": IDENTITY_TOL,
                 "n": n, "alpha": alpha, "s": s, "band": band},
    )


def run_cordoba_suite(
    trials: int = 64, seed: int = 0, n: int = 128, alpha: float = 1.5,
    s: float = 1.5, q: float = 4.0,
) -> InequalityReport:
    # s here is unused; the suite sweeps its own dissipation orders.
    grid = SpectralGrid(n)
    band = min(16, max_clean_band(n))
    worst = math.inf
    worst_seed = seed
    for t in range(trials):
        theta = random_scalar(grid, seed + t, band=band)
        for p in (2.0, 4.0, 6.0):
            for s_diss in (0.5, 1.0, 1.5):
                lhs, rhs = cordoba_terms(theta, p, s_diss)
                scale = max(abs(lhs), abs(rhs), 1e-6)
                margin = (lhs - rhs) / scale
                if margin < worst:
                    worst, worst_seed = margin, seed + t
    return InequalityReport(
        name="cordoba",
        trials=trials,
        worst_margin=worst,
        worst_seed=worst_seed,
        passed=worst >= -1e-10,
        details={"n": n, "band": band, "pSweep": [2, 4, 6],
                 "sSweep": [0.5, 1.0, 1.5], "tolerance": 1e-10},
    )


def _refinement_suite(name, trials, seed, n, per_trial_max, extra):
    """Shared shape of the ratio suites: max ratio at n and 2n, same seeds."""
    lo = per_trial_max(SpectralGrid(n))
    hi = per_trial_max(SpectralGrid(2 * n))
    finite = math.isfinite(lo[0]) and math.isfinite(hi[0])
    growth = hi[0] / lo[0] - 1.0 if finite and lo[0] > 0 else math.inf
    margin = RATIO_GROWTH_TOL - growth if math.isfinite(growth) else -math.inf
    return InequalityReport(
        name=name,
        trials=trials,
        worst_margin=margin,
        worst_seed=lo[1],
        passed=finite and growth < RATIO_GROWTH_TOL,
        details={
            "maxRatioCoarse": lo[0], "maxRatioFine": hi[0],
            "growth": growth, "n": n, "growthTolerance": RATIO_GROWTH_TOL,
            **extra,
        },
    )


def run_gn_suite(
    trials: int = 64, seed: int = 0, n: int = 128, alpha: float = 1.5,
    s: float = 1.5, q: float = 4.0,
) -> InequalityReport:
    r_end = 2.0 * q / (2.0 - alpha)
    r_values = (q, 0.5 * (q + r_end), r_end)
    band = min(16, max_clean_band(n))

    def per_trial_max(grid: SpectralGrid):
        worst, worst_seed = 0.0, seed
        for t in range(trials):
            zeta = random_scalar(grid, seed + t, band=band)
            for r in r_values:
                ratio = gn_ratio(zeta, q, r, alpha)
                if ratio > worst:
                    worst, worst_seed = ratio, seed + t
        return worst, worst_seed

    return _refinement_suite(
        "gn", trials, seed, n, per_trial_max,
        {"alpha": alpha, "q": q, "rValues": list(r_values), "band": band},
    )


def run_kp_suite(
    trials: int = 64, seed: int = 0, n: int = 128, alpha: float = 1.5,
    s: float = 0.5, q: float = 4.0,
) -> InequalityReport:
    if not 0.0 < s < 1.0:
        raise ValueError(f"the kp suite needs a commutator order in (0, 1), got {s}")
    e = 2.0 * q  # all-finite Holder split 1/q = 1/2q + 1/2q
    band_cap = 16

    def per_trial_max(grid: SpectralGrid):
        band = min(band_cap, max_clean_band(grid.n))
        worst, worst_seed = 0.0, seed
        for t in range(trials):
            g = random_scalar(grid, 2 * (seed + t), band=band)
            f = random_scalar(grid, 2 * (seed + t) + 1, band=band)
            ratio = kato_ponce_ratio(g, f, s, 1 + t % 2, q, e, e, e, e)
            if ratio > worst:
                worst, worst_seed = ratio, seed + t
        return worst, worst_seed

    return _refinement_suite(
        "kp", trials, seed, n, per_trial_max,
        {"s": s, "q": q, "exponents": [e, e, e, e]},
    )


def run_ikp_suite(
    trials: int = 64, seed: int = 0, n: int = 128, alpha: float = 1.5,
    s: float = 1.5, q: float = 4.0,
) -> InequalityReport:
    e = 2.0 * q
    mu_values = (0.0, alpha / 2.0, alpha)
    band_cap = 16

    def per_trial_max(grid: SpectralGrid):
        band = min(band_cap, max_clean_band(grid.n))
        worst, worst_seed = 0.0, seed
        for t in range(trials):
            g = random_scalar(grid, 2 * (seed + t), band=band)
            f = random_scalar(grid, 2 * (seed + t) + 1, band=band)
            for mu in mu_values:
                ratio = inhom_kp_ratio(g, f, mu, 1 + t % 2, alpha, q, e, e, e, e)
                if ratio > worst:
                    worst, worst_seed = ratio, seed + t
        return worst, worst_seed

    return _refinement_suite(
        "ikp", trials, seed, n, per_trial_max,
        {"alpha": alpha, "q": q, "muValues": list(mu_values),
         "exponents": [e, e, e, e]},
    )


def run_nsmooth_suite(
    trials: int = 64, seed: int = 0, n: int = 64, alpha: float = 1.5,
    s: float = 1.5, q: float = 4.0,
) -> InequalityReport:
    band = min(16, max_clean_band(n))
    lo = n_smoothing_ratio(alpha, q, trials, seed, n=n, band=band)
    hi = n_smoothing_ratio(alpha, q, trials, seed, n=4 * n, band=band)
    change = abs(hi / lo - 1.0) if lo > 0 else math.inf
    finite = math.isfinite(lo) and math.isfinite(hi)
    return InequalityReport(
        name="nsmooth",
        trials=trials,
        worst_margin=NSMOOTH_CHANGE_TOL - change,
        worst_seed=seed,
        passed=finite and change < NSMOOTH_CHANGE_TOL,
        details={"ratioCoarse": lo, "ratioFine": hi, "change": change,
                 "nCoarse": n, "nFine": 4 * n, "band": band,
                 "alpha": alpha, "q": q,
                 "changeTolerance": NSMOOTH_CHANGE_TOL},
    )


def run_hm_suite(
    trials: int = 1, seed: int = 0, n: int = 64, alpha: float = 1.5,
    s: float = 1.5, q: float = 4.0,
) -> InequalityReport:
    report = hm_decay_check(n_tilde_multiplier(alpha))
    passed = report.all_finite
    return InequalityReport(
        name="hm",
        trials=1,
        worst_margin=0.0 if passed else -math.inf,
        worst_seed=seed,
        passed=passed,
        details=report.to_json_dict(),
    )


SUITES = {
    "identity": run_identity_suite,
    "cordoba": run_cordoba_suite,
    "gn": run_gn_suite,
    "kp": run_kp_suite,
    "ikp": run_ikp_suite,
    "nsmooth": run_nsmooth_suite,
    "hm": run_hm_suite,
}


def run_suite(suite: str, **params) -> InequalityReport:
    """Dispatch to a named check suite.

    Only parameters actually supplied (not None) are forwarded, so each
    suite keeps its own sensible defaults; valid keys are trials, seed,
    n, alpha, s, q.
    """
    try:
        fn = SUITES[suite]
    except KeyError:
        raise ValueError(
            f"unknown suite '{suite}'; choose from {sorted(SUITES)}"
        ) from None
    allowed = {"trials", "seed", "n", "alpha", "s", "q"}
    unknown = set(params) - allowed
    if unknown:
        raise ValueError(f"unknown suite parameters {sorted(unknown)}")
    return fn(**{k: v for k, v in params.items() if v is not None})
