"""
Pytest tests for the coefficient inequality audit.

Run with:
    python -m pytest tests/test_coefficient_audit.py -v
"""

import sys
from pathlib import Path

import numpy as np
import pytest

# Add parent directory to path to import hybess
sys.path.insert(0, str(Path(__file__).parent.parent))

from hybess.coefficient_audit import coefficient_inequality_audit
from hybess.errors import DomainError
from hybess.hyper_bessel import make_params


def test_printed_direction_fails_at_second_term():
    """Test (1.5)^2 = 2.25 < (1.5)(2.5) = 3.75 is recorded for nu = 1/2."""
    report = coefficient_inequality_audit(make_params(1, [0.5]), 10)
    first = report.printed_direction_failures[0]
    assert first.n == 2
    assert first.lhs == pytest.approx(2.25)
    assert first.rhs == pytest.approx(3.75)
    assert report.proof_direction_holds
    assert report.decay_certificate_holds


def test_zero_alpha_uses_factorials():
    """Test (1)_n = n! >= 1 = 1^n."""
    report = coefficient_inequality_audit(make_params(1, [0.0]), 10)
    pochhammer = [c for c in report.checks if c.name == "pochhammer"]
    assert [c.lhs for c in pochhammer[:4]] == pytest.approx([1.0, 2.0, 6.0, 24.0])
    assert all(c.rhs == 1.0 for c in pochhammer)
    assert report.proof_direction_holds


def test_check_counts():
    report = coefficient_inequality_audit(make_params(3, [0.1, 0.2, 0.3]), 5)
    names = [c.name for c in report.checks]
    assert names.count("factorial") == 5
    assert names.count("pochhammer") == 15
    assert names.count("decay") == 5
    assert {c.index for c in report.checks if c.name == "pochhammer"} == {0, 1, 2}


@pytest.mark.parametrize("d", [1, 2, 3])
def test_decay_certificate_for_random_params(d):
    rng = np.random.default_rng(d)
    for _ in range(20):
        params = make_params(d, rng.uniform(-0.5, 3.0, size=d))
        report = coefficient_inequality_audit(params, 30)
        assert report.decay_certificate_holds
        assert report.proof_direction_holds


def test_audit_order_must_be_at_least_two():
    with pytest.raises(DomainError):
        coefficient_inequality_audit(make_params(1, [0.5]), 1)
