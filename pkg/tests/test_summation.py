"""
Pytest tests for compensated summation.

Run with:
    python -m pytest tests/test_summation.py -v
"""

import sys
from pathlib import Path

import numpy as np

# Add parent directory to path to import hybess
sys.path.insert(0, str(Path(__file__).parent.parent))

from hybess.summation import CompensatedSum, compensated_sum, two_sum


def test_two_sum_recovers_rounding_error():
    """Test that the error term holds what fl(a + b) dropped."""
    s, err = two_sum(1.0, 1e-16)
    assert s == 1.0
    assert err == 1e-16


def test_compensated_sum_beats_naive_sum():
    """Test cancellation that plain summation loses entirely."""
    terms = [1e16, 1.0, -1e16]
    assert sum(terms) == 0.0
    assert compensated_sum(terms) == 1.0


def test_compensated_sum_on_arrays():
    """Test element-wise accumulation over a grid."""
    terms = [np.array([1e16, 1.0]), np.array([1.0, 1e-16]), np.array([-1e16, -1.0])]
    total = compensated_sum(terms)
    assert total[0] == 1.0
    assert total[1] == 1e-16


def test_compensated_sum_on_complex():
    """Test that real and imaginary parts are compensated independently."""
    terms = [1e16 + 1e16j, 1.0 + 1.0j, -1e16 - 1e16j]
    assert compensated_sum(terms) == 1.0 + 1.0j


def test_incremental_accumulator():
    """Test CompensatedSum with an initial value."""
    acc = CompensatedSum(np.full(3, 1.0, dtype=complex))
    for _ in range(10):
        acc.add(np.full(3, 0.1, dtype=complex))
    assert np.allclose(acc.total, 2.0, rtol=0, atol=1e-15)
