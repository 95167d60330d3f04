"""
Pytest tests for extremum estimation and claim adjudication.

Run with:
    python -m pytest tests/test_claim_verifier.py -v
"""

import sys
import math
from dataclasses import replace
from pathlib import Path

import numpy as np
import pytest

# Add parent directory to path to import hybess
sys.path.insert(0, str(Path(__file__).parent.parent))

from hybess.bound_formulas import (
    BoundVariant,
    lemma_claims,
    theorem1_claims,
    theorem2_claims,
    worked_example_claims,
)
from hybess.claim_verifier import (
    GATE_FAILED,
    ClaimStatus,
    ClaimVerifier,
    _select,
    check_lemma_bounds,
    cross_validate,
)
from hybess.errors import GateError
from hybess.hyper_bessel import ModulusKind, QuotientKind, make_params
from hybess.models.config import SamplingConfig

SMALL_GRID = SamplingConfig(radii=32, angles=128)
R = SMALL_GRID.max_radius


@pytest.fixture
def verifier():
    return ClaimVerifier(SMALL_GRID, workers=1)


def by_kind(claims, kind, m=0):
    return next(c for c in claims if c.kind is kind and c.m == m)


# =============================================================================
# EXTREMUM ESTIMATION
# =============================================================================

def test_tie_break_prefers_small_modulus_then_argument():
    points = np.array([1j, 1.0, 0.5j, -1.0])
    assert _select(points, np.zeros(4)) == 2
    assert _select(points[[0, 1, 3]], np.zeros(3)) == 1
    assert _select(points, np.array([np.nan, 2.0, 3.0, 1.0])) == 3
    assert _select(points, np.full(4, np.nan)) == -1


def test_sine_quotient_minimum_on_real_axis(verifier):
    """Test inf Re(sin z/z) = sin(R)/R, attained on the real axis."""
    params = make_params(1, [0.5])
    estimate = verifier.estimate_extremum(QuotientKind.F_OVER_FM, params, 0)
    assert estimate.extremum == pytest.approx(math.sin(R) / R, abs=1e-9)
    assert abs(estimate.witness) == pytest.approx(R, abs=1e-12)
    assert abs(estimate.witness.imag) < 1e-6
    assert estimate.excluded_points == 0
    assert estimate.samples_used == SMALL_GRID.max_samples


def test_modulus_maximum_on_imaginary_axis(verifier):
    """Test sup|sin z| = sinh(R) and sup|cos z| = cosh(R)."""
    params = make_params(1, [0.5])
    f = verifier.estimate_extremum(ModulusKind.MODULUS_F, params)
    f_prime = verifier.estimate_extremum("ModulusFPrime", params)
    assert f.extremum == pytest.approx(math.sinh(R), abs=1e-9)
    assert f_prime.extremum == pytest.approx(math.cosh(R), abs=1e-9)
    assert abs(f.witness.real) < 1e-6


def test_results_do_not_depend_on_worker_count():
    params = make_params(2, [0.1, 0.2])
    single = ClaimVerifier(SMALL_GRID, workers=1)
    pooled = ClaimVerifier(SMALL_GRID, workers=4)
    for kind in (QuotientKind.FM_OVER_F, ModulusKind.MODULUS_F_PRIME):
        a = single.estimate_extremum(kind, params, 1)
        b = pooled.estimate_extremum(kind, params, 1)
        assert a == b


def test_refinement_never_raises_the_infimum():
    """Test each extra refinement level only lowers or keeps the estimated infimum."""
    params = make_params(2, [0.0, 0.0])
    for kind, m in ((QuotientKind.FM_OVER_F, 0), (QuotientKind.F_OVER_FM, 1), (QuotientKind.FP_OVER_FMP, 2)):
        estimates = []
        for levels in range(4):
            cfg = SamplingConfig(radii=16, angles=64, refine_levels=levels)
            estimates.append(ClaimVerifier(cfg, workers=1).estimate_extremum(kind, params, m).extremum)
        assert all(b <= a for a, b in zip(estimates, estimates[1:])), (kind, estimates)


# =============================================================================
# ADJUDICATION
# =============================================================================

def test_lemma_containment_for_half_order():
    """Test sup|f| <= 13/11 and sup|f'| <= 239/121 with room to spare."""
    modulus_f, modulus_f_prime = check_lemma_bounds(make_params(1, [0.5]), SMALL_GRID)
    assert modulus_f.status is ClaimStatus.HOLDS
    assert modulus_f_prime.status is ClaimStatus.HOLDS
    assert modulus_f.margin > 5e-3
    assert modulus_f_prime.margin > 5e-3


def test_lemma_containment_for_random_gated_params(verifier):
    rng = np.random.default_rng(11)
    for _ in range(20):
        d = int(rng.integers(1, 4))
        params = make_params(d, rng.uniform(-0.5, 2.0, size=d))
        for report in verifier.check_claims(lemma_claims(params)):
            assert report.status is not ClaimStatus.FALSIFIED
            assert report.margin > 0


def test_lemma_gate_failure_raises():
    with pytest.raises(GateError):
        check_lemma_bounds(make_params(1, [-0.95]), SMALL_GRID)


def test_lemma_containment_just_above_gate():
    """Test 2 lambda mu = 1.008 gets a verdict instead of an evaluation failure."""
    params = make_params(1, [-0.874])
    modulus_f, modulus_f_prime = check_lemma_bounds(params, SMALL_GRID)
    for report in (modulus_f, modulus_f_prime):
        assert report.claim.gate.satisfied
        assert report.status is ClaimStatus.HOLDS, report.reason
        assert report.reason is None
    assert modulus_f.claim.bound == pytest.approx(251.0, rel=1e-9)


def test_printed_partial_sum_bounds_fail_at_origin(verifier):
    """Test bounds above 1 are falsified with witness z = 0."""
    claims = theorem1_claims(make_params(1, [0.5]), BoundVariant.PAPER_STATED, [0])
    claims += theorem2_claims(make_params(1, [0.5]), BoundVariant.PAPER_STATED, [0])
    for claim in claims:
        report = verifier.check_claim(claim)
        if claim.bound > 1:
            assert report.status is ClaimStatus.FALSIFIED
            assert report.witness == 0
            assert report.extremum == 1.0
        else:
            assert report.status is ClaimStatus.HOLDS


def test_worked_examples_above_origin_value_are_falsified(verifier):
    for claim in worked_example_claims():
        report = verifier.check_claim(claim)
        if claim.origin_value() < claim.bound:
            assert report.status is ClaimStatus.FALSIFIED
            assert report.witness == 0


@pytest.mark.parametrize("d, alpha", [(1, [0.5]), (1, [1.5]), (2, [0.0, 0.0])])
def test_corrected_partial_sum_bounds_hold(verifier, d, alpha):
    claims = theorem1_claims(make_params(d, alpha), BoundVariant.CORRECTED_RATIONAL, [0, 1, 2, 5])
    for report in verifier.check_claims(claims):
        assert report.status is ClaimStatus.HOLDS, report.claim.description


def test_corrected_spot_margins(verifier):
    """Test margins against sin(R)/R, R/sinh(R) and the tight three-halves case."""
    half = theorem1_claims(make_params(1, [0.5]), BoundVariant.CORRECTED_RATIONAL, [0])
    report = verifier.check_claim(by_kind(half, QuotientKind.F_OVER_FM))
    assert report.margin == pytest.approx(math.sin(R) / R - 9 / 11, abs=1e-9)
    assert report.margin == pytest.approx(0.0236, abs=5e-4)

    report = verifier.check_claim(by_kind(half, QuotientKind.FM_OVER_F))
    assert report.margin == pytest.approx(R / math.sinh(R) - 11 / 13, abs=1e-9)

    three_halves = theorem1_claims(make_params(1, [1.5]), BoundVariant.CORRECTED_RATIONAL, [0])
    report = verifier.check_claim(by_kind(three_halves, QuotientKind.FM_OVER_F))
    expected = R ** 3 / (3 * (R * math.cosh(R) - math.sinh(R))) - 19 / 21
    assert report.status is ClaimStatus.HOLDS
    assert report.margin == pytest.approx(expected, abs=1e-9)
    assert 1e-3 < report.margin < 2e-3


def test_margin_inside_band_is_inconclusive(verifier):
    claim = theorem1_claims(make_params(1, [0.5]), BoundVariant.CORRECTED_RATIONAL, [0])[0]
    estimate = verifier.estimate_extremum(claim.kind, claim.params, claim.m)
    report = verifier.check_claim(replace(claim, bound=estimate.extremum))
    assert report.status is ClaimStatus.INCONCLUSIVE
    assert report.margin == 0.0
    assert report.grid_slack >= report.eval_tol


def test_failed_gate_is_not_adjudicated(verifier):
    claim = theorem1_claims(make_params(1, [-0.7]), BoundVariant.CORRECTED_RATIONAL, [0])[0]
    report = verifier.check_claim(claim)
    assert report.status is ClaimStatus.INCONCLUSIVE
    assert report.reason == GATE_FAILED
    assert report.samples_used == 0


# =============================================================================
# UNIVALENCE AND CROSS-VALIDATION
# =============================================================================

@pytest.mark.parametrize("nu", [0.47, 0.5, 1.5])
def test_univalence_above_threshold(verifier, nu):
    report = verifier.check_univalence(make_params(1, [nu]))
    assert report.status is ClaimStatus.HOLDS
    assert report.reason is None


def test_univalence_cosine_minimum(verifier):
    report = verifier.check_univalence(make_params(1, [0.5]))
    assert report.extremum == pytest.approx(math.cos(R), abs=1e-9)


def test_univalence_below_threshold_reports_gate(verifier):
    """Test the check still runs below nu* and notes the failed gate without a converse."""
    for nu in (0.3, -0.9):
        report = verifier.check_univalence(make_params(1, [nu]))
        assert not report.claim.gate.satisfied
        assert report.reason.startswith("derivative gate failed")
        assert report.status in set(ClaimStatus)
        assert report.samples_used > 0


@pytest.mark.parametrize("nu", [0.5, 1.5])
def test_cross_validation(nu):
    report = cross_validate(make_params(1, [nu]), SMALL_GRID)
    assert not report.skipped
    assert report.passed
    assert report.max_residual_f <= 1e-12
    assert report.max_residual_f_prime <= 1e-12


def test_cross_validation_skipped_without_closed_form():
    report = cross_validate(make_params(2, [0.5, 0.5]), SMALL_GRID)
    assert report.skipped
    assert not report.passed
    assert "d=2" in report.notice
