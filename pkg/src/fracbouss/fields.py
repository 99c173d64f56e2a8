"""Real scalar and vector fields carried in physical and spectral form.

Normalization: spectral coefficients are Fourier-series coefficients, so
``spec[k]`` multiplies exp(i xi_k . x) and a constant field c has zero-mode
value c.  Forward transform is fft2 divided by n^2; the inverse is the
plain mode sum.  Fields are immutable; every operation returns a new one.
"""

from __future__ import annotations

import numpy as np

from .grid import SpectralGrid

__all__ = [
    "ScalarField",
    "VectorField",
    "forward_transform",
    "inverse_transform",
    "partial_derivative",
    "dealias",
    "multiply",
    "multiply_dealias",
    "advect",
]

#: relative tolerance for the conjugate-symmetry check on spectral input
SYMMETRY_RTOL = 1e-10


class ScalarField:
    """A real scalar field on a :class:`SpectralGrid`.

    Construct via :meth:`from_physical` or :meth:`from_spectral`.  Both
    representations are available as read-only arrays; whichever was not
    supplied is computed on first use and cached.
    """

    __slots__ = ("grid", "_phys", "_spec")

    def __init__(self, grid: SpectralGrid, phys: np.ndarray | None, spec: np.ndarray | None):
        self.grid = grid
        self._phys = phys
        self._spec = spec

    # -- constructors -------------------------------------------------

    @classmethod
    def from_physical(cls, grid: SpectralGrid, values: np.ndarray) -> "ScalarField":
        values = np.asarray(values, dtype=float)
        if values.shape != (grid.n, grid.n):
            raise ValueError(
                f"field shape {values.shape} does not match grid ({grid.n}, {grid.n})"
            )
        phys = values.copy()
        phys.setflags(write=False)
        return cls(grid, phys, None)

    @classmethod
    def from_spectral(
        cls, grid: SpectralGrid, coef: np.ndarray, check_symmetry: bool = True
    ) -> "ScalarField":
        coef = np.asarray(coef, dtype=complex)
        if coef.shape != (grid.n, grid.n):
            raise ValueError(
                f"coefficient shape {coef.shape} does not match grid ({grid.n}, {grid.n})"
            )
        if check_symmetry:
            sym = grid.hermitian_project(coef)
            scale = np.abs(coef).max()
            if scale > 0 and np.abs(coef - sym).max() > SYMMETRY_RTOL * scale:
                raise ValueError(
                    "spectral coefficients violate conjugate symmetry; "
                    "the field they describe is not real"
                )
            coef = sym
        else:
            coef = coef.copy()
        coef.setflags(write=False)
        return cls(grid, None, coef)

    @classmethod
    def zeros(cls, grid: SpectralGrid) -> "ScalarField":
        return cls.from_physical(grid, grid.zeros())

    # -- representations ----------------------------------------------

    @property
    def physical(self) -> np.ndarray:
        if self._phys is None:
            n2 = self.grid.n ** 2
            phys = np.fft.ifft2(self._spec).real * n2
            phys.setflags(write=False)
            self._phys = phys
        return self._phys

    @property
    def spectral(self) -> np.ndarray:
        if self._spec is None:
            spec = np.fft.fft2(self._phys) / self.grid.n ** 2
            spec.setflags(write=False)
            self._spec = spec
        return self._spec

    # -- arithmetic (scalar linear combinations) ------------------------

    def _binary(self, other: "ScalarField", op) -> "ScalarField":
        if other.grid is not self.grid and other.grid != self.grid:
            raise ValueError("fields live on different grids")
        if self._phys is not None and other._phys is not None:
            return ScalarField.from_physical(self.grid, op(self._phys, other._phys))
        return ScalarField.from_spectral(
            self.grid, op(self.spectral, other.spectral), check_symmetry=False
        )

    def __add__(self, other: "ScalarField") -> "ScalarField":
        return self._binary(other, np.add)

    def __sub__(self, other: "ScalarField") -> "ScalarField":
        return self._binary(other, np.subtract)

    def __mul__(self, a: float) -> "ScalarField":
        if self._phys is not None:
            return ScalarField.from_physical(self.grid, a * self._phys)
        return ScalarField.from_spectral(self.grid, a * self._spec, check_symmetry=False)

    __rmul__ = __mul__

    def __neg__(self) -> "ScalarField":
        return self * -1.0

    def mean(self) -> float:
        if self._spec is not None:
            return float(self._spec[0, 0].real)
        return float(self._phys.mean())


class VectorField:
    """Pair of scalar components (u1, u2) on a shared grid."""

    __slots__ = ("u1", "u2")

    def __init__(self, u1: ScalarField, u2: ScalarField):
        if u1.grid != u2.grid:
            raise ValueError("vector components live on different grids")
        self.u1 = u1
        self.u2 = u2

    @property
    def grid(self) -> SpectralGrid:
        return self.u1.grid

    def magnitude(self) -> np.ndarray:
        return np.hypot(self.u1.physical, self.u2.physical)

    def max_speed(self) -> float:
        return float(self.magnitude().max())

    def divergence(self) -> ScalarField:
        return partial_derivative(self.u1, 1) + partial_derivative(self.u2, 2)


# -- core operations ----------------------------------------------------


def forward_transform(f: ScalarField) -> np.ndarray:
    """Spectral coefficients of ``f`` (a writable copy)."""
    return f.spectral.copy()


def inverse_transform(grid: SpectralGrid, coef: np.ndarray) -> ScalarField:
    """Field whose series coefficients are ``coef``."""
    return ScalarField.from_spectral(grid, coef)


def partial_derivative(f: ScalarField, axis: int) -> ScalarField:
    """d/dx_axis via the spectral factor i*xi; axis is 1 or 2.

    The Nyquist mode of the differentiated axis is zeroed: for a real
    field it aliases +-n/2 and an odd multiplier there has no consistent
    value.
    """
    if axis == 1:
        fac = f.grid.deriv1
    elif axis == 2:
        fac = f.grid.deriv2
    else:
        raise ValueError(f"axis must be 1 or 2, got {axis}")
    return ScalarField.from_spectral(f.grid, fac * f.spectral, check_symmetry=False)


def dealias(f: ScalarField) -> ScalarField:
    """Zero every mode with max(|k1|, |k2|) > n/3 (the 2/3 rule)."""
    return ScalarField.from_spectral(
        f.grid, np.where(f.grid.dealias_mask, f.spectral, 0.0), check_symmetry=False
    )


def multiply(f: ScalarField, g: ScalarField) -> ScalarField:
    """Pointwise product on the grid (no dealiasing)."""
    if f.grid != g.grid:
        raise ValueError("fields live on different grids")
    return ScalarField.from_physical(f.grid, f.physical * g.physical)


def multiply_dealias(f: ScalarField, g: ScalarField) -> ScalarField:
    """Pointwise product followed by the 2/3-rule projection.

    This is the product every quadratic term in the solver and the
    commutator checks goes through; using one helper keeps the aliasing
    treatment identical across call sites.
    """
    return dealias(multiply(f, g))


def advect(u: VectorField, f: ScalarField) -> ScalarField:
    """Dealiased advection u . grad f."""
    df1 = partial_derivative(f, 1)
    df2 = partial_derivative(f, 2)
    prod = u.u1.physical * df1.physical + u.u2.physical * df2.physical
    return dealias(ScalarField.from_physical(f.grid, prod))
