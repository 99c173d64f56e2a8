"""Grid construction, transforms, derivatives, dealiasing."""

import numpy as np
import pytest

from fracbouss.fields import (
    ScalarField,
    VectorField,
    advect,
    dealias,
    multiply,
    partial_derivative,
)
from fracbouss.grid import SpectralGrid, hermitian_project
from fracbouss.randomfields import random_scalar


def test_grid_rejects_bad_sizes():
    with pytest.raises(ValueError):
        SpectralGrid(7)
    with pytest.raises(ValueError):
        SpectralGrid(4)
    with pytest.raises(ValueError):
        SpectralGrid(16, length=0.0)


def test_nyquist_mode_is_positive():
    g = SpectralGrid(16)
    assert g.k1[8, 0] == 8
    assert g.k1[1, 0] == 1
    assert g.k1[15, 0] == -1
    assert g.k2[0, 8] == 8


def test_coefficients_are_series_coefficients():
    # f = 3 + cos(2 x1) has series coefficients 3 at k=0 and 1/2 at (+-2, 0)
    g = SpectralGrid(32)
    x1, _ = g.coordinates()
    f = ScalarField.from_physical(g, 3.0 + np.cos(2 * x1))
    c = f.spectral
    assert abs(c[0, 0] - 3.0) < 1e-14
    assert abs(c[2, 0] - 0.5) < 1e-14
    assert abs(c[-2, 0] - 0.5) < 1e-14
    wiped = c.copy()
    wiped[0, 0] = wiped[2, 0] = wiped[-2, 0] = 0.0
    assert np.abs(wiped).max() < 1e-14


def test_direct_dft_oracle():
    """Coefficients must match the plain O(n^4) transform definition."""
    n = 8
    g = SpectralGrid(n)
    rng = np.random.default_rng(11)
    phys = rng.standard_normal((n, n))
    f = ScalarField.from_physical(g, phys)
    x1, x2 = g.coordinates()
    for k1 in (-3, 0, 1, 4):
        for k2 in (-2, 0, 3):
            direct = np.sum(phys * np.exp(-1j * (k1 * x1 + k2 * x2))) / n**2
            assert abs(f.spectral[k1 % n, k2 % n] - direct) < 1e-12


def test_round_trip_physical_spectral():
    g = SpectralGrid(64)
    f = random_scalar(g, seed=0, band=20)
    back = ScalarField.from_spectral(g, f.spectral)
    assert np.abs(back.physical - f.physical).max() < 1e-12


def test_hermitian_project_is_idempotent_and_realizing():
    g = SpectralGrid(16)
    rng = np.random.default_rng(3)
    raw = rng.standard_normal((16, 16)) + 1j * rng.standard_normal((16, 16))
    once = hermitian_project(raw)
    twice = hermitian_project(once)
    np.testing.assert_allclose(once, twice, rtol=0, atol=1e-15)
    phys = np.fft.ifft2(once) * 16**2
    assert np.abs(phys.imag).max() < 1e-12 * max(1.0, np.abs(phys.real).max())


@pytest.mark.parametrize("axis,wave", [(1, (3, 0)), (2, (0, 5)), (1, (2, 7))])
def test_partial_derivative_single_mode(axis, wave):
    g = SpectralGrid(64)
    x1, x2 = g.coordinates()
    phase = wave[0] * x1 + wave[1] * x2
    f = ScalarField.from_physical(g, np.sin(phase))
    df = partial_derivative(f, axis)
    expect = wave[axis - 1] * np.cos(phase)
    assert np.abs(df.physical - expect).max() < 1e-11


def test_derivative_matches_finite_differences():
    """Second-order centred differences should converge at rate ~4 per
    halving toward the spectral derivative."""
    g = SpectralGrid(128)
    f = random_scalar(g, seed=5, band=6)
    exact = partial_derivative(f, 1).physical

    def fd_error(m):
        fine = SpectralGrid(m)
        ff = ScalarField.from_spectral(
            fine, _inject(f.spectral, g.n, m), check_symmetry=False
        ).physical
        h = fine.spacing
        approx = (np.roll(ff, -1, axis=0) - np.roll(ff, 1, axis=0)) / (2 * h)
        coarse_exact = ScalarField.from_spectral(
            fine, _inject(partial_derivative(f, 1).spectral, g.n, m),
            check_symmetry=False,
        ).physical
        return np.abs(approx - coarse_exact).max()

    e1, e2 = fd_error(256), fd_error(512)
    assert 3.5 < e1 / e2 < 4.5


def _inject(coef, n_from, n_to):
    out = np.zeros((n_to, n_to), dtype=complex)
    for a in range(n_from):
        for b in range(n_from):
            k1 = a if a <= n_from // 2 else a - n_from
            k2 = b if b <= n_from // 2 else b - n_from
            out[k1 % n_to, k2 % n_to] = coef[a, b]
    return out


def test_derivative_antisymmetry():
    g = SpectralGrid(48)
    f = random_scalar(g, seed=1, band=10)
    h = random_scalar(g, seed=2, band=10)
    cell = g.cell_area
    lhs = np.sum(partial_derivative(f, 1).physical * h.physical) * cell
    rhs = -np.sum(f.physical * partial_derivative(h, 1).physical) * cell
    assert abs(lhs - rhs) < 1e-11


def test_dealias_boundary():
    n = 48  # n/3 = 16 exactly
    g = SpectralGrid(n)
    x1, _ = g.coordinates()
    keep = ScalarField.from_physical(g, np.cos(16 * x1))
    gone = ScalarField.from_physical(g, np.cos(17 * x1))
    assert np.abs(dealias(keep).physical - keep.physical).max() < 1e-13
    assert np.abs(dealias(gone).physical).max() < 1e-13
    # idempotent, exactly
    once = dealias(keep)
    assert np.array_equal(dealias(once).spectral, once.spectral)


def test_product_aliasing_is_removed():
    # sin(m x1)^2 = 1/2 - cos(2m x1)/2 with m the largest retained mode;
    # the cos part aliases to |k| just past the cutoff and must be dropped.
    n = 64
    m = n // 3
    g = SpectralGrid(n)
    x1, _ = g.coordinates()
    f = ScalarField.from_physical(g, np.sin(m * x1))
    from fracbouss.fields import multiply_dealias

    prod = multiply_dealias(f, f)
    assert abs(prod.spectral[0, 0] - 0.5) < 1e-13
    wiped = prod.spectral.copy()
    wiped[0, 0] = 0.0
    assert np.abs(wiped).max() < 1e-13


def test_multiply_matches_pointwise():
    g = SpectralGrid(32)
    f = random_scalar(g, seed=7, band=5)
    h = random_scalar(g, seed=8, band=5)
    prod = multiply(f, h)
    np.testing.assert_allclose(
        prod.physical, f.physical * h.physical, rtol=0, atol=1e-13
    )


def test_advect_of_constant_is_zero():
    g = SpectralGrid(32)
    from fracbouss.randomfields import random_divfree_velocity

    u = random_divfree_velocity(g, seed=4, band=5)
    const = ScalarField.from_physical(g, np.full((32, 32), 2.5))
    out = advect(u, const)
    assert np.abs(out.physical).max() < 1e-13


def test_vector_divergence_of_divfree_field():
    g = SpectralGrid(64)
    from fracbouss.randomfields import random_divfree_velocity

    u = random_divfree_velocity(g, seed=9, band=12)
    assert np.abs(u.divergence().physical).max() < 1e-11


def test_field_shape_guard():
    g = SpectralGrid(16)
    with pytest.raises(ValueError):
        ScalarField.from_physical(g, np.zeros((8, 8)))
    other = SpectralGrid(32)
    f = ScalarField.zeros(g)
    h = ScalarField.zeros(other)
    with pytest.raises(ValueError):
        _ = f + h
    with pytest.raises(ValueError):
        VectorField(f, h)
