"""Pseudo-spectral solver for surface-driven 2D flow with fractional
dissipation, plus numerical verification of the operator estimates the
regularity theory rests on.

The solver integrates the inviscid-density / fractionally-dissipated
vorticity system on the periodic square, in either the plain vorticity
variables or the smoothed combination that absorbs the density forcing.
Alongside it live norm diagnostics with exponential-envelope
certification, inequality check suites, binary field snapshots, and a
command-line front end.
"""

from .checks import InequalityReport, SUITES, run_suite
from .diagnostics import (
    DiagnosticsConfig,
    DiagnosticsRecord,
    DiagnosticsTracker,
    EnvelopeFit,
    NumericsError,
    PersistenceVerdict,
    envelope_report,
    fit_envelope,
    persistence_verdict,
    tail_fraction,
)
from .dynamics import (
    CflError,
    Formulation,
    SolverState,
    StepperConfig,
    biot_savart,
    convert,
    rhs_vorticity,
    rhs_zeta,
    step,
)
from .fields import ScalarField, VectorField, advect, dealias, partial_derivative
from .grid import SpectralGrid, hermitian_project
from .multipliers import (
    MultiplierError,
    MultiplierSpec,
    apply_multiplier,
    bessel_potential,
    d1_multiplier,
    fractional_laplacian,
    hm_decay_check,
    lattice_symbol,
    n_operator,
    n_smoothing_ratio,
    n_tilde_multiplier,
    s_operator,
    sbar_operator,
)
from .norms import lq_norm, refine_physical, sobolev_norm
from .randomfields import max_clean_band, random_divfree_velocity, random_scalar
from .runner import ConfigError, RunConfig, RunResult, load_config_file, run
from .snapshots import SnapshotError, read_snapshot, write_snapshot

__version__ = "0.1.0"

__all__ = [
    "CflError",
    "ConfigError",
    "DiagnosticsConfig",
    "DiagnosticsRecord",
    "DiagnosticsTracker",
    "EnvelopeFit",
    "Formulation",
    "InequalityReport",
    "MultiplierError",
    "MultiplierSpec",
    "NumericsError",
    "PersistenceVerdict",
    "RunConfig",
    "RunResult",
    "SUITES",
    "ScalarField",
    "SnapshotError",
    "SolverState",
    "SpectralGrid",
    "StepperConfig",
    "VectorField",
    "advect",
    "apply_multiplier",
    "bessel_potential",
    "biot_savart",
    "convert",
    "d1_multiplier",
    "dealias",
    "envelope_report",
    "fit_envelope",
    "fractional_laplacian",
    "hermitian_project",
    "hm_decay_check",
    "lattice_symbol",
    "load_config_file",
    "lq_norm",
    "max_clean_band",
    "n_operator",
    "n_smoothing_ratio",
    "n_tilde_multiplier",
    "partial_derivative",
    "persistence_verdict",
    "random_divfree_velocity",
    "random_scalar",
    "read_snapshot",
    "refine_physical",
    "rhs_vorticity",
    "rhs_zeta",
    "run",
    "run_suite",
    "s_operator",
    "sbar_operator",
    "sobolev_norm",
    "step",
    "tail_fraction",
    "write_snapshot",
]
