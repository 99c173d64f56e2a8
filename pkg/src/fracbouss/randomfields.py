"""Seeded band-limited random fields.

Coefficients are drawn mode by mode in a fixed order over the requested
band, so a given seed describes the same trigonometric polynomial at any
resolution that can hold the band.  That makes refinement comparisons
(same data, finer grid) meaningful.
"""

from __future__ import annotations

import numpy as np

from .fields import ScalarField, partial_derivative, VectorField
from .grid import SpectralGrid

__all__ = ["random_scalar", "random_divfree_velocity", "max_clean_band"]


def max_clean_band(n: int) -> int:
    """Largest band K so quadratic products of K-band fields dealias cleanly.

    Aliased images of mode sums up to 2K land at |k| >= n - 2K; they are
    removed by the 2/3 rule iff n - 2K > n/3, i.e. K strictly below n/3.
    """
    k = int(np.ceil(n / 3.0)) - 1
    return max(k, 1)


def random_scalar(
    grid: SpectralGrid,
    seed: int,
    band: int = 16,
    decay: float = 2.0,
    amplitude: float = 1.0,
    zero_mean: bool = True,
) -> ScalarField:
    """Gaussian random field with |f_hat(k)| ~ (1 + |xi_k|^2)^(-decay/2).

    The band is the max-norm ball max(|k1|, |k2|) <= band; it must fit
    inside the dealiased region.  With ``amplitude`` nonzero the field is
    rescaled to that L^2 norm.
    """
    if band < 1 or band > grid.n // 3:
        raise ValueError(
            f"band must lie in [1, n/3] = [1, {grid.n // 3}], got {band}"
        )
    rng = np.random.default_rng(seed)
    scale = 2.0 * np.pi / grid.length
    coef = np.zeros((grid.n, grid.n), dtype=complex)
    # Half-lattice enumeration: k1 > 0 with any k2, plus k1 = 0 with k2 > 0.
    # The order is fixed and independent of grid.n.
    for k1 in range(0, band + 1):
        k2_lo = 1 if k1 == 0 else -band
        for k2 in range(k2_lo, band + 1):
            a, b = rng.standard_normal(2)
            xi2 = (scale * k1) ** 2 + (scale * k2) ** 2
            c = (a + 1j * b) * (1.0 + xi2) ** (-decay / 2.0)
            coef[k1 % grid.n, k2 % grid.n] = c
            coef[-k1 % grid.n, -k2 % grid.n] = np.conj(c)
    if not zero_mean:
        coef[0, 0] = rng.standard_normal()
    f = ScalarField.from_spectral(grid, coef, check_symmetry=False)
    if amplitude:
        norm = np.sqrt(np.sum(np.abs(coef) ** 2)) * grid.length
        if norm > 0:
            f = f * (amplitude / norm)
    return f


def random_divfree_velocity(
    grid: SpectralGrid,
    seed: int,
    band: int = 16,
    decay: float = 3.0,
    amplitude: float = 1.0,
) -> VectorField:
    """Divergence-free velocity as the perpendicular gradient of a random stream.

    u = (-d2 psi, d1 psi) is divergence-free mode by mode, which the
    commutator identities rely on.
    """
    psi = random_scalar(grid, seed, band=band, decay=decay, amplitude=1.0)
    u1 = -1.0 * partial_derivative(psi, 2)
    u2 = partial_derivative(psi, 1)
    u = VectorField(u1, u2)
    if amplitude:
        speed = np.sqrt(
            np.sum(np.abs(u1.spectral) ** 2 + np.abs(u2.spectral) ** 2)
        ) * grid.length
        if speed > 0:
            u = VectorField(u1 * (amplitude / speed), u2 * (amplitude / speed))
    return u
