"""Periodic square grid and its Fourier lattice.

Everything downstream (transforms, multipliers, the solver) works on a
uniform n-by-n grid over [0, length)^2 with periodic boundary conditions.
The grid owns the integer mode lattice, the scaled wavenumbers, and the
2/3-rule dealiasing mask, so those arrays are built once and shared.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["SpectralGrid", "hermitian_project"]

TWO_PI = 2.0 * np.pi


def hermitian_project(coef: np.ndarray) -> np.ndarray:
    """Project onto coefficients of a real field: (F(k) + conj(F(-k)))/2.

    A no-op (up to the original symmetry error) for data that already came
    from a real field; on self-paired Nyquist rows it cancels the odd part
    of whatever multiplier produced ``coef``.
    """
    flipped = np.roll(coef[::-1, ::-1], 1, axis=(0, 1))
    return 0.5 * (coef + np.conj(flipped))


@dataclass(frozen=True)
class SpectralGrid:
    """Uniform periodic grid on [0, length)^2.

    Parameters
    ----------
    n : int
        Points per side.  Must be even and at least 8.
    length : float
        Side length of the periodic box.  Defaults to 2*pi, in which
        case integer modes coincide with physical wavenumbers.

    Notes
    -----
    Spectral arrays are indexed in FFT layout.  The integer mode on each
    axis runs through {0, 1, ..., n/2 - 1, n/2, -n/2 + 1, ..., -1}; the
    Nyquist slot is taken as +n/2.  Physical wavenumbers are
    xi = (2*pi/length) * k.  Axis 0 is x1, axis 1 is x2.
    """

    n: int
    length: float = TWO_PI

    def __post_init__(self) -> None:
        if self.n % 2 != 0 or self.n < 8:
            raise ValueError(f"grid size must be an even integer >= 8, got {self.n}")
        if not self.length > 0.0:
            raise ValueError(f"box length must be positive, got {self.length}")

        modes = np.fft.fftfreq(self.n, d=1.0 / self.n)
        modes[self.n // 2] = self.n // 2  # Nyquist taken positive
        k1, k2 = np.meshgrid(modes, modes, indexing="ij")

        scale = TWO_PI / self.length
        xi1 = scale * k1
        xi2 = scale * k2

        # Differentiation factors i*xi with the Nyquist mode of the
        # differentiated axis zeroed: that coefficient carries no sign
        # information for a real field, so an odd multiplier must kill it.
        d1 = 1j * xi1
        d1[self.n // 2, :] = 0.0
        d2 = 1j * xi2
        d2[:, self.n // 2] = 0.0

        mask = np.maximum(np.abs(k1), np.abs(k2)) <= self.n / 3.0

        for name, arr in (
            ("k1", k1), ("k2", k2), ("xi1", xi1), ("xi2", xi2),
            ("deriv1", d1), ("deriv2", d2), ("dealias_mask", mask),
        ):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    # -- geometry ---------------------------------------------------------

    @property
    def spacing(self) -> float:
        return self.length / self.n

    @property
    def cell_area(self) -> float:
        return (self.length / self.n) ** 2

    def coordinates(self) -> tuple[np.ndarray, np.ndarray]:
        """Meshgrid of physical coordinates, x1 along axis 0."""
        x = np.arange(self.n) * self.spacing
        return np.meshgrid(x, x, indexing="ij")

    # -- spectral helpers -------------------------------------------------

    def xi_magnitude(self) -> np.ndarray:
        """|xi| on the lattice."""
        return np.hypot(self.xi1, self.xi2)

    def zeros(self) -> np.ndarray:
        return np.zeros((self.n, self.n))

    def hermitian_project(self, coef: np.ndarray) -> np.ndarray:
        return hermitian_project(coef)
