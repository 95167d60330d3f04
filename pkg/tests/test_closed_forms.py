"""
Pytest tests for the trigonometric closed forms and their agreement with the series.

Run with:
    python -m pytest tests/test_closed_forms.py -v
"""

import sys
import math
from pathlib import Path

import numpy as np
import pytest

# Add parent directory to path to import hybess
sys.path.insert(0, str(Path(__file__).parent.parent))

from hybess.closed_forms import (
    bessel_series_coefficients,
    closed_form_phi,
    closed_form_phi_prime,
    phi_values,
)
from hybess.errors import DomainError
from hybess.hyper_bessel import make_params, series_values


def polar_grid(radii: int = 32, angles: int = 32, max_radius: float = 0.999) -> np.ndarray:
    """Uniform polar grid reaching down to |z| = max_radius / radii"""
    r = max_radius * np.arange(1, radii + 1) / radii
    t = 2 * np.pi * np.arange(angles) / angles
    return (r[:, None] * np.exp(1j * t[None, :])).ravel()


def test_maclaurin_coefficients():
    """Test c_n = (-1)^n / (4^n n! (nu+1)_n) for nu = 1/2."""
    c = bessel_series_coefficients(0.5, 3)
    assert c[0] == 1.0
    assert c[1] == pytest.approx(-1.0 / 6.0, rel=1e-15)
    assert c[2] == pytest.approx(1.0 / 120.0, rel=1e-15)


def test_half_order_is_sine():
    z = polar_grid(8, 8)
    assert np.array_equal(phi_values(0.5, z), np.sin(z))
    assert np.array_equal(phi_values(0.5, z, derivative=True), np.cos(z))


def test_three_halves_at_one():
    """Test phi_{3/2}(1) = 3 (sin 1 - cos 1)."""
    expected = 3.0 * (math.sin(1.0) - math.cos(1.0))
    value = closed_form_phi(1.5, 1.0)
    assert value.real == pytest.approx(expected, abs=1e-14)
    assert value.imag == 0.0
    assert value.real == pytest.approx(0.9035, abs=1e-4)


def test_three_halves_small_argument_branch():
    """Test the Maclaurin branch below the threshold joins the closed form smoothly."""
    below = closed_form_phi(1.5, 0.0999)
    above = closed_form_phi(1.5, 0.1001)
    assert abs(above - below) < 1e-3
    assert closed_form_phi(1.5, 0j) == 0
    assert closed_form_phi_prime(1.5, 0j) == 1


def test_unsupported_order():
    with pytest.raises(DomainError):
        closed_form_phi(2.5, 0.5)


@pytest.mark.parametrize("nu", [0.5, 1.5])
def test_series_matches_closed_form_on_polar_grid(nu):
    """Test max residual <= 1e-12 for f and f' over a 32x32 grid including |z| < 0.1."""
    z = polar_grid()
    assert np.min(np.abs(z)) < 0.1
    params = make_params(1, [nu])
    residual_f = np.max(np.abs(series_values(params, z) - phi_values(nu, z)))
    residual_f_prime = np.max(np.abs(series_values(params, z, derivative=True)
                                      - phi_values(nu, z, derivative=True)))
    assert residual_f <= 1e-12
    assert residual_f_prime <= 1e-12
