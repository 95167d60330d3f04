"""
Pytest tests for series evaluation, coefficients, tails and quotients.

Run with:
    python -m pytest tests/test_hyper_bessel.py -v
"""

import sys
import math
from pathlib import Path

import numpy as np
import pytest

# Add parent directory to path to import hybess
sys.path.insert(0, str(Path(__file__).parent.parent))

from hybess.errors import ConvergenceError, DomainError, PoleError
from hybess.hyper_bessel import (
    ModulusKind,
    QuotientKind,
    as_functional_kind,
    certified_tail,
    coefficient_abs_sum,
    coefficient_direct,
    coefficient_table,
    eval_f,
    eval_f_certified,
    eval_f_prime,
    eval_partial,
    eval_partial_prime,
    functional_values,
    make_params,
    quotient,
    quotient_values,
    series_values,
    tail_bound,
    truncation_order,
)
from hybess.models.config import EvalConfig


# =============================================================================
# PARAMETERS
# =============================================================================

def test_make_params_constants():
    """Test lambda = (d+1)^(d+1) and mu = prod(alpha_i + 1)."""
    params = make_params(1, [0.5])
    assert params.lam == 4.0
    assert params.mu == 1.5
    assert params.lambda_mu == 6.0

    params = make_params(2, [0.1, 0.2])
    assert params.lam == 27.0
    assert params.mu == pytest.approx(1.32)


@pytest.mark.parametrize("d, alpha", [
    (0, []),
    (True, [0.5]),
    (1.5, [0.5]),
    (2, [0.5]),
    (1, [-1.0]),
    (1, [float("nan")]),
    (1, [float("inf")]),
])
def test_make_params_rejects_invalid(d, alpha):
    """Test DomainError for d < 1, length mismatch and alpha <= -1."""
    with pytest.raises(DomainError):
        make_params(d, alpha)


def test_functional_kind_parsing():
    """Test string values map onto the enums."""
    assert as_functional_kind("Fp_over_Fmp") is QuotientKind.FP_OVER_FMP
    assert as_functional_kind("ModulusF") is ModulusKind.MODULUS_F
    with pytest.raises(DomainError):
        as_functional_kind("F_over_G")


# =============================================================================
# COEFFICIENTS
# =============================================================================

def test_first_coefficients_of_sine_reduction():
    """Test A_1 = -1/6 and A_2 = 1/120 for d=1, alpha=1/2."""
    table = coefficient_table(make_params(1, [0.5]), 2)
    assert table[0] == 1.0
    assert table[1] == pytest.approx(-1.0 / 6.0, rel=1e-15)
    assert table[2] == pytest.approx(1.0 / 120.0, rel=1e-15)


def test_coefficient_table_is_read_only():
    """Test the table cannot be modified in place."""
    table = coefficient_table(make_params(1, [0.5]), 5)
    assert table.N == 5
    with pytest.raises(ValueError):
        table.values[1] = 0.0


def test_coefficient_table_rejects_order_zero():
    with pytest.raises(DomainError):
        coefficient_table(make_params(1, [0.5]), 0)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_recurrence_matches_log_gamma(d):
    """Test the ratio recurrence against the log-gamma formula for n <= 30."""
    rng = np.random.default_rng(20 + d)
    for _ in range(50):
        params = make_params(d, rng.uniform(-0.9, 3.0, size=d))
        table = coefficient_table(params, 30)
        for n in range(31):
            direct = coefficient_direct(params, n)
            assert table[n] == pytest.approx(direct, rel=1e-12, abs=0.0)


def test_coefficient_signs_alternate():
    table = coefficient_table(make_params(2, [0.3, 1.1]), 10)
    signs = np.sign(table.values)
    assert list(signs) == [(-1.0) ** n for n in range(11)]


# =============================================================================
# TAIL BOUNDS
# =============================================================================

def test_tail_bound_decreases_with_order():
    """Test the geometric tail decays monotonically toward zero."""
    params = make_params(1, [0.5])
    tails = [tail_bound(params, N, 1.0) for N in range(20)]
    assert all(b > a for a, b in zip(tails[1:], tails[:-1]))
    assert tails[-1] < 1e-20


def test_tail_bound_rejects_divergent_ratio():
    """Test DomainError when r^(d+1) / (2 lambda mu) >= 1."""
    params = make_params(1, [0.5])
    with pytest.raises(DomainError):
        tail_bound(params, 5, 4.0)
    assert math.isfinite(certified_tail(params, 20, 4.0))


def test_truncation_order_meets_tolerance():
    params = make_params(1, [0.5])
    cfg = EvalConfig(target_tol=1e-13)
    N, bound = truncation_order(params, 0.999, cfg)
    assert bound <= 1e-13
    assert N >= 1
    assert tail_bound(params, N - 1, 0.999) > 1e-13


def test_truncation_order_raises_when_terms_run_out():
    params = make_params(1, [0.5])
    with pytest.raises(ConvergenceError) as exc_info:
        eval_f(params, 0.999 + 0j, EvalConfig(max_terms=2))
    assert exc_info.value.point == 0.999 + 0j


def test_certified_tail_uses_ratio_bound_when_geometric_is_loose():
    """Test the tail is finite and small just above the lemma gate (2 lambda mu = 1.008)."""
    params = make_params(1, [-0.874])
    assert 1.0 < 2.0 * params.lambda_mu < 1.01
    assert tail_bound(params, 10, 0.999) > 100.0
    assert certified_tail(params, 10, 0.999) < 1e-15
    assert certified_tail(params, 10, 0.999) <= tail_bound(params, 10, 0.999)
    N, bound = truncation_order(params, 0.999)
    assert bound <= EvalConfig().target_tol
    assert N < 20


def test_eval_just_above_lemma_gate():
    params = make_params(1, [-0.874])
    z = 0.999 * np.exp(0.4j)
    direct = sum(coefficient_direct(params, n) * z ** (2 * n + 1) for n in range(40))
    assert abs(eval_f(params, z) - direct) < 1e-12
    assert math.isfinite(abs(eval_f_prime(params, z)))


# =============================================================================
# EVALUATION
# =============================================================================

def test_eval_f_is_sine_for_half_order():
    """Test f(z) = sin z for d=1, alpha=1/2."""
    params = make_params(1, [0.5])
    assert eval_f(params, 1 + 0j) == pytest.approx(math.sin(1.0), abs=1e-13)
    z = 0.3 + 0.7j
    assert abs(eval_f(params, z) - np.sin(z)) < 1e-13
    assert abs(eval_f_prime(params, z) - np.cos(z)) < 1e-13


def test_eval_f_at_origin():
    params = make_params(2, [0.1, 0.2])
    assert eval_f(params, 0j) == 0
    assert eval_f_prime(params, 0j) == 1


def test_eval_f_outside_geometric_radius():
    """Test the ratio-test fallback keeps evaluation certified at |z| = 4."""
    params = make_params(1, [0.5])
    result = eval_f_certified(params, 4 + 0j)
    assert result.error_bound <= EvalConfig().target_tol
    assert result.value == pytest.approx(math.sin(4.0), abs=1e-12)


def test_derivative_matches_finite_difference():
    """Test f' for d=2 against a central difference."""
    params = make_params(2, [0.1, 0.2])
    z = 0.5 + 0.5j
    h = 1e-5
    difference = (eval_f(params, z + h) - eval_f(params, z - h)) / (2 * h)
    assert abs(eval_f_prime(params, z) - difference) < 1e-8


def test_series_values_match_scalar_evaluation():
    params = make_params(3, [0.0, 0.5, 2.0])
    z = np.array([0.1, 0.5j, -0.7 + 0.2j, 0.9 * np.exp(0.3j)])
    values = series_values(params, z)
    for point, value in zip(z, values):
        assert abs(value - eval_f(params, point)) < 1e-13


def test_partial_sums():
    """Test f_0(z) = z, f_0'(z) = 1 and f_1(z) = z - z^3/6 for the sine reduction."""
    params = make_params(1, [0.5])
    z = 0.4 - 0.3j
    assert eval_partial(params, 0, z) == z
    assert eval_partial_prime(params, 0, z) == 1
    assert abs(eval_partial(params, 1, z) - (z - z ** 3 / 6)) < 1e-15
    with pytest.raises(DomainError):
        eval_partial(params, -1, z)


def test_partial_sum_derivative_matches_finite_difference():
    """Test f_2' at z = 0.5i for d=1, alpha=3/2 against a central difference."""
    params = make_params(1, [1.5])
    z, h = 0.5j, 1e-5
    difference = (eval_partial(params, 2, z + h) - eval_partial(params, 2, z - h)) / (2 * h)
    assert abs(eval_partial_prime(params, 2, z) - difference) < 1e-8


@pytest.mark.parametrize("d, alpha", [(1, [0.5]), (2, [0.1, 0.2]), (3, [0.0, 0.5, 2.0])])
def test_partial_sums_converge_within_tail_bound(d, alpha):
    """Test |f_m(z) - f(z)| <= tail_bound(m, |z|) for every m."""
    params = make_params(d, alpha)
    for z in 0.95 * np.exp(1j * np.linspace(0.0, 2.0 * math.pi, 7)):
        value = eval_f(params, z)
        for m in range(10):
            error = abs(eval_partial(params, m, z) - value)
            assert error <= tail_bound(params, m, abs(z)) + 1e-13


def test_conjugate_symmetry():
    """Test real coefficients give f(conj z) = conj f(z) for f, f' and partial sums."""
    rng = np.random.default_rng(3)
    for _ in range(10):
        d = int(rng.integers(1, 4))
        params = make_params(d, rng.uniform(-0.5, 2.0, size=d))
        z = complex(rng.uniform(-0.7, 0.7), rng.uniform(-0.7, 0.7))
        w = z.conjugate()
        assert abs(eval_f(params, w) - eval_f(params, z).conjugate()) <= 1e-15
        assert abs(eval_f_prime(params, w) - eval_f_prime(params, z).conjugate()) <= 1e-15
        for m in (0, 1, 3):
            assert abs(eval_partial(params, m, w) - eval_partial(params, m, z).conjugate()) <= 1e-15
            assert abs(eval_partial_prime(params, m, w)
                       - eval_partial_prime(params, m, z).conjugate()) <= 1e-15


# =============================================================================
# QUOTIENTS
# =============================================================================

@pytest.mark.parametrize("kind", list(QuotientKind))
@pytest.mark.parametrize("m", [0, 1, 5])
def test_quotients_equal_one_at_origin(kind, m):
    """Test every quotient is exactly 1 at z = 0."""
    params = make_params(2, [0.1, 0.2])
    assert quotient(params, kind, m, 0j) == 1 + 0j


def test_quotient_values_against_closed_form():
    params = make_params(1, [0.5])
    z = np.array([0.5 + 0.1j, -0.2 + 0.8j])
    values, poles = quotient_values(params, QuotientKind.F_OVER_FM, 0, z)
    assert not poles.any()
    assert np.max(np.abs(values - np.sin(z) / z)) < 1e-13


def test_quotient_pole_detection():
    """Test the partial sum 1 - z^2/6 vanishing at sqrt(6) is reported as a pole."""
    params = make_params(1, [0.5])
    z = math.sqrt(6.0)
    values, poles = quotient_values(params, QuotientKind.F_OVER_FM, 1, np.array([z, 0.5]))
    assert poles.tolist() == [True, False]
    assert np.isnan(values[0])
    with pytest.raises(PoleError):
        quotient(params, QuotientKind.F_OVER_FM, 1, z)


def test_functional_values_for_modulus_kinds():
    params = make_params(1, [0.5])
    z = np.array([0.999j])
    values, poles = functional_values(params, ModulusKind.MODULUS_F, 0, z)
    assert not poles.any()
    assert abs(values[0]) == pytest.approx(math.sinh(0.999), abs=1e-13)


# =============================================================================
# COEFFICIENT SUMS
# =============================================================================

def test_coefficient_abs_sums_for_sine_reduction():
    """Test sum |A_n| = sinh(1) - 1 and sum (2n+1)|A_n| = cosh(1) - 1."""
    params = make_params(1, [0.5])
    assert coefficient_abs_sum(params).value == pytest.approx(math.sinh(1.0) - 1.0, abs=1e-13)
    weighted = coefficient_abs_sum(params, weighted=True)
    assert weighted.value == pytest.approx(math.cosh(1.0) - 1.0, abs=1e-13)
    assert 1.0 + weighted.value <= 239 / 121
