"""Named initial conditions and ready-made run setups.

Every preset is deterministic: the random ones take a seed and produce
the same band-limited trigonometric polynomial at any resolution.
"""

from __future__ import annotations

import numpy as np

from .dynamics import Formulation, SolverState
from .fields import ScalarField
from .grid import SpectralGrid
from .randomfields import max_clean_band, random_scalar
from .snapshots import read_snapshot

__all__ = [
    "shear_state",
    "random_state",
    "rough_state",
    "state_from_snapshots",
    "RUN_PRESETS",
]


def shear_state(n: int, alpha: float, formulation=Formulation.VORTICITY) -> SolverState:
    """Single-mode shear: vorticity cos(x1), density zero.

    The induced velocity is (0, sin x1), parallel to the vorticity
    contours, so advection vanishes identically and the exact evolution
    is pure fractional decay e^{-t} of the single mode.
    """
    grid = SpectralGrid(n)
    x1, _ = grid.coordinates()
    vort = ScalarField.from_physical(grid, np.cos(x1))
    rho = ScalarField.zeros(grid)
    state = SolverState(rho=rho, vort=vort, formulation=Formulation.VORTICITY,
                        t=0.0, alpha=alpha)
    if formulation is not Formulation.VORTICITY:
        from .dynamics import convert

        state = convert(state, formulation)
    return state


def random_state(
    n: int,
    alpha: float,
    seed: int,
    band: int = 4,
    vort_amplitude: float = 0.5,
    rho_amplitude: float = 0.25,
    formulation=Formulation.ZETA,
) -> SolverState:
    """Smooth band-limited random data, sized for well-resolved runs.

    Small band and modest amplitudes keep the active scales far from the
    dealiasing cutoff over unit-order integration times.
    """
    grid = SpectralGrid(n)
    vort = random_scalar(grid, seed=2 * seed, band=band, decay=2.0,
                         amplitude=vort_amplitude)
    rho = random_scalar(grid, seed=2 * seed + 1, band=band, decay=2.0,
                        amplitude=rho_amplitude)
    state = SolverState(rho=rho, vort=vort, formulation=Formulation.VORTICITY,
                        t=0.0, alpha=alpha)
    if formulation is not Formulation.VORTICITY:
        from .dynamics import convert

        state = convert(state, formulation)
    return state


def rough_state(n: int, alpha: float, seed: int) -> SolverState:
    """Deliberately under-resolved data: energy up to the dealiasing
    cutoff with almost no decay.  Exists to make the tail-energy clause
    of the persistence verdict fail, as a negative control."""
    grid = SpectralGrid(n)
    band = max_clean_band(n)
    vort = random_scalar(grid, seed=2 * seed, band=band, decay=0.5, amplitude=1.0)
    rho = random_scalar(grid, seed=2 * seed + 1, band=band, decay=0.5, amplitude=0.5)
    return SolverState(rho=rho, vort=vort, formulation=Formulation.VORTICITY,
                       t=0.0, alpha=alpha)


def state_from_snapshots(
    vort_path: str, rho_path: str, alpha: float,
    formulation=Formulation.VORTICITY,
) -> SolverState:
    """Load vorticity and density fields from binary snapshot files."""
    vort = read_snapshot(vort_path)
    rho = read_snapshot(rho_path)
    if vort.grid.n != rho.grid.n or vort.grid.length != rho.grid.length:
        raise ValueError(
            f"snapshot grids disagree: {vort.grid.n} vs {rho.grid.n}"
        )
    state = SolverState(rho=rho, vort=vort, formulation=Formulation.VORTICITY,
                        t=0.0, alpha=alpha)
    if formulation is not Formulation.VORTICITY:
        from .dynamics import convert

        state = convert(state, formulation)
    return state


# Run-level presets consumed by the runner and the CLI.  Values are the
# plain config dict the runner accepts, so a preset behaves exactly like
# a config file with the same contents.
RUN_PRESETS: dict = {
    "shear-decay": {
        "ic": "shear",
        "n": 64,
        "alpha": 1.5,
        "formulation": "vorticity",
        "t_final": 1.0,
        "dt": 1e-3,
        "samples_per_unit": 20,
        "s": 1.5,
        "q": 4.0,
    },
    "persistence-witness": {
        "ic": "random",
        "n": 256,
        "alpha": 1.5,
        "seed": 7,
        "band": 4,
        "vort_amplitude": 0.5,
        "rho_amplitude": 0.25,
        "formulation": "zeta",
        "t_final": 5.0,
        "dt": 2e-3,
        "samples_per_unit": 20,
        "s": 1.5,
        "q": 4.0,
    },
    "under-resolved-control": {
        "ic": "rough",
        "n": 32,
        "alpha": 1.5,
        "seed": 7,
        "formulation": "vorticity",
        "t_final": 0.25,
        "dt": 2e-3,
        "samples_per_unit": 20,
        "s": 1.5,
        "q": 4.0,
    },
}
