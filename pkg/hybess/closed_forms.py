"""
Trigonometric closed forms of the d=1 reduction

For d=1 and alpha_1 = nu the normalized function is the normalized Bessel
function phi_nu. Two orders have elementary closed forms:

    phi_{1/2}(z) = sin z
    phi_{3/2}(z) = 3 (sin z - z cos z) / z^2

and their derivatives cos z and 3 (2z^2 cos z + (z^3 - 2z) sin z) / z^4.
They serve as independent oracles for the series evaluator. The nu=3/2 forms
cancel catastrophically near the origin, so below cfg.small_z_threshold the
Maclaurin series of phi_nu is summed instead.
"""

import logging
from typing import Optional

import numpy as np

from .errors import DomainError
from .models.config import EvalConfig
from .summation import CompensatedSum

logger = logging.getLogger(__name__)

SUPPORTED_ORDERS = (0.5, 1.5)

# |z| < 0.1 and 10 terms leave a remainder far below double precision
SMALL_Z_TERMS = 10


def _check_order(nu: float) -> None:
    if nu not in SUPPORTED_ORDERS:
        raise DomainError(f"No closed form for nu={nu}; supported: {SUPPORTED_ORDERS}")


def bessel_series_coefficients(nu: float, terms: int) -> np.ndarray:
    """c_n = (-1)^n / (4^n n! (nu+1)_n), the Maclaurin coefficients of phi_nu"""
    coefficients = np.empty(terms)
    coefficients[0] = 1.0
    for n in range(terms - 1):
        coefficients[n + 1] = -coefficients[n] / (4.0 * (n + 1) * (nu + 1.0 + n))
    return coefficients


def _maclaurin(nu: float, z: np.ndarray, derivative: bool) -> np.ndarray:
    coefficients = bessel_series_coefficients(nu, SMALL_Z_TERMS)
    z2 = z * z
    acc = CompensatedSum(np.full(z.shape, coefficients[0], dtype=complex))
    power = np.ones_like(z)
    for n, c in enumerate(coefficients[1:], start=1):
        power = power * z2
        weight = 2 * n + 1 if derivative else 1
        acc.add(weight * c * power)
    series = acc.total
    return series if derivative else z * series


def _sin_order_three_halves(z: np.ndarray) -> np.ndarray:
    return 3.0 * (np.sin(z) - z * np.cos(z)) / (z * z)


def _sin_order_three_halves_prime(z: np.ndarray) -> np.ndarray:
    # 3 (2z^2 cos z + (z^3 - 2z) sin z) / z^4 rearranged as 3 sin z/z - 2 phi/z,
    # which cancels one power of z less
    return 3.0 * np.sin(z) / z - 2.0 * _sin_order_three_halves(z) / z


def phi_values(
    nu: float,
    z,
    cfg: Optional[EvalConfig] = None,
    derivative: bool = False
) -> np.ndarray:
    """phi_nu (or phi_nu') on an array of points"""
    _check_order(nu)
    cfg = cfg or EvalConfig()
    z = np.asarray(z, dtype=complex)

    if nu == 0.5:
        return np.cos(z) if derivative else np.sin(z)

    out = np.empty(z.shape, dtype=complex)
    small = np.abs(z) < cfg.small_z_threshold
    if np.any(small):
        out[small] = _maclaurin(nu, z[small], derivative)
    large = ~small
    if np.any(large):
        formula = _sin_order_three_halves_prime if derivative else _sin_order_three_halves
        out[large] = formula(z[large])
    return out


def closed_form_phi(nu: float, z: complex, cfg: Optional[EvalConfig] = None) -> complex:
    return complex(phi_values(nu, np.array([complex(z)]), cfg)[0])


def closed_form_phi_prime(nu: float, z: complex, cfg: Optional[EvalConfig] = None) -> complex:
    return complex(phi_values(nu, np.array([complex(z)]), cfg, derivative=True)[0])
