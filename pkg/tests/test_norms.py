"""Lebesgue and Sobolev norms against closed-form values."""

import math

import numpy as np
import pytest

from fracbouss.fields import ScalarField
from fracbouss.grid import SpectralGrid
from fracbouss.norms import lq_norm, refine_physical, sobolev_norm
from fracbouss.randomfields import random_scalar


@pytest.fixture
def sine():
    g = SpectralGrid(64)
    x1, _ = g.coordinates()
    return ScalarField.from_physical(g, np.sin(x1))


def test_l2_of_sine(sine):
    # integral of sin^2 over the square is 2 pi^2
    assert abs(lq_norm(sine, 2.0) - math.pi * math.sqrt(2.0)) < 1e-12


def test_l4_of_sine(sine):
    # integral of sin^4 is (3/4) * 2 pi^2, so the norm is (3 pi^2/2)^(1/4)
    expect = (3.0 * math.pi**2 / 2.0) ** 0.25
    assert abs(lq_norm(sine, 4.0) - expect) < 1e-12


def test_linf_of_sine(sine):
    # the grid hits x1 = pi/2 exactly when n is a multiple of 4
    assert lq_norm(sine, math.inf) == pytest.approx(1.0, abs=1e-14)
    assert lq_norm(sine, math.inf, oversample=True) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("s", [0.0, 0.5, 1.5])
def test_sobolev_of_cosine(s):
    g = SpectralGrid(64)
    x1, _ = g.coordinates()
    f = ScalarField.from_physical(g, np.cos(x1))
    # (I - Laplacian)^{s/2} cos x1 = 2^{s/2} cos x1
    expect = 2.0 ** (s / 2.0) * math.pi * math.sqrt(2.0)
    assert abs(sobolev_norm(f, s, 2.0) - expect) < 1e-12


def test_sobolev_s0_equals_lq():
    g = SpectralGrid(32)
    f = random_scalar(g, seed=6, band=8)
    assert sobolev_norm(f, 0.0, 3.0) == pytest.approx(lq_norm(f, 3.0), rel=1e-13)


def test_holder_relation_between_levels():
    # ||f||_2 <= area^(1/2 - 1/4) ||f||_4 on a box of area 4 pi^2
    g = SpectralGrid(48)
    f = random_scalar(g, seed=12, band=10)
    area = g.length**2
    assert lq_norm(f, 2.0) <= area ** (0.5 - 0.25) * lq_norm(f, 4.0) + 1e-12


def test_bad_exponents_rejected():
    g = SpectralGrid(16)
    f = ScalarField.zeros(g)
    for q in (0.5, 0.0, -1.0, float("nan")):
        with pytest.raises(ValueError):
            lq_norm(f, q)
    with pytest.raises(ValueError):
        sobolev_norm(f, -0.5, 2.0)
    with pytest.raises(ValueError):
        sobolev_norm(f, 1.0, 1.0)
    with pytest.raises(ValueError):
        sobolev_norm(f, 1.0, math.inf)


def test_refine_reproduces_band_limited_values():
    g = SpectralGrid(32)
    f = random_scalar(g, seed=3, band=9)
    fine = refine_physical(f, factor=4)
    assert fine.shape == (128, 128)
    # the coarse samples sit at every 4th fine point
    np.testing.assert_allclose(fine[::4, ::4], f.physical, rtol=0, atol=1e-12)
    # and the fine values equal the trigonometric interpolant
    gf = SpectralGrid(128)
    x1, x2 = gf.coordinates()
    direct = np.zeros((128, 128))
    c = f.spectral
    n = g.n
    for a in range(n):
        for b in range(n):
            if abs(c[a, b]) == 0.0:
                continue
            k1 = a if a <= n // 2 else a - n
            k2 = b if b <= n // 2 else b - n
            direct += (c[a, b] * np.exp(1j * (k1 * x1 + k2 * x2))).real
    np.testing.assert_allclose(fine, direct, rtol=0, atol=1e-10)


def test_refine_of_constant():
    g = SpectralGrid(16)
    f = ScalarField.from_physical(g, np.full((16, 16), -1.75))
    fine = refine_physical(f)
    np.testing.assert_allclose(fine, -1.75, rtol=0, atol=1e-13)


def test_norm_of_zero_field():
    g = SpectralGrid(16)
    z = ScalarField.zeros(g)
    assert lq_norm(z, 2.0) == 0.0
    assert lq_norm(z, math.inf) == 0.0
    assert sobolev_norm(z, 1.5, 4.0) == 0.0
