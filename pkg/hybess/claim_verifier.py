"""
Claim Verifier

Estimates extrema of the real parts (or moduli) of the implemented
functionals over a sampled sub-disk and adjudicates BoundClaims against them.

A grid cannot certify a strict inequality at unsampled points, so every
verdict carries an indeterminacy band: margins inside it are Inconclusive.
Falsifications are re-checked at the witness with a tighter evaluation
tolerance before they are reported.
"""

import math
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from enum import Enum
from typing import Iterable, List, Optional, Tuple

import numpy as np

from .bound_formulas import BoundClaim, lemma_claims, lemma_modulus_bounds, univalence_claim
from .closed_forms import SUPPORTED_ORDERS, phi_values
from .config import worker_count
from .disk_sampling import grid_spacing, refine_points, sample_disk
from .errors import HyperBesselError
from .hyper_bessel import (
    FunctionalKind,
    HyperBesselParams,
    ModulusKind,
    as_functional_kind,
    functional_values,
    series_values,
)
from .models.config import EvalConfig, SamplingConfig

logger = logging.getLogger(__name__)

GRADIENT_STEP = 1e-6

# points per evaluation block; blocks are the same for any worker count
EVAL_BLOCK = 4096

# claims skipped for a failed hypothesis are not adjudicated
GATE_FAILED = "gate failed"


class ClaimStatus(str, Enum):
    HOLDS = "holds"
    FALSIFIED = "falsified"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class ExtremumEstimate:
    """Sampled extremum of a real objective with its witness point"""
    extremum: float
    witness: complex
    samples_used: int
    excluded_points: int
    gradient: float


@dataclass(frozen=True)
class VerificationReport:
    """Verdict for one claim"""
    claim: BoundClaim
    extremum: float
    witness: complex
    margin: float
    status: ClaimStatus
    samples_used: int
    config: SamplingConfig
    eval_tol: float
    grid_slack: float
    excluded_points: int = 0
    reason: Optional[str] = None

    @property
    def tested_radius(self) -> float:
        return self.config.max_radius


@dataclass(frozen=True)
class CrossValidationReport:
    """Largest series-vs-closed-form residuals over the sample set"""
    skipped: bool
    notice: str = ""
    max_residual_f: float = math.nan
    max_residual_f_prime: float = math.nan
    tolerance: float = math.nan
    samples_used: int = 0

    @property
    def passed(self) -> bool:
        return (not self.skipped
                and self.max_residual_f <= self.tolerance
                and self.max_residual_f_prime <= self.tolerance)


def _select(points: np.ndarray, scores: np.ndarray) -> int:
    """Index of the smallest score; ties go to smallest |z|, then smallest argument"""
    valid = np.flatnonzero(~np.isnan(scores))
    if valid.size == 0:
        return -1
    candidates = points[valid]
    arguments = np.mod(np.angle(candidates), 2.0 * math.pi)
    order = np.lexsort((arguments, np.abs(candidates), scores[valid]))
    return int(valid[order[0]])


class ClaimVerifier:
    """
    Grid-based adjudication of bound claims.

    Grid evaluation runs on fixed-size blocks spread over worker threads. The
    truncation order is set by the sampling radius and blocks are merged in
    order, so results are bit-identical for any worker count.
    """

    def __init__(
        self,
        sampling: Optional[SamplingConfig] = None,
        eval_cfg: Optional[EvalConfig] = None,
        workers: Optional[int] = None
    ):
        self.sampling = sampling or SamplingConfig()
        self.eval_cfg = eval_cfg or EvalConfig()
        self.workers = workers or worker_count()

    # =========================================================================
    # GRID EVALUATION
    # =========================================================================

    def _evaluate(
        self,
        params: HyperBesselParams,
        kind: FunctionalKind,
        m: int,
        points: np.ndarray,
        eval_cfg: Optional[EvalConfig] = None
    ) -> Tuple[np.ndarray, np.ndarray]:
        eval_cfg = eval_cfg or self.eval_cfg
        radius = max(self.sampling.max_radius, float(np.max(np.abs(points))) if points.size else 0.0)

        def run(block: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
            return functional_values(params, kind, m, block, eval_cfg, radius=radius)

        blocks = [points[i:i + EVAL_BLOCK] for i in range(0, points.size, EVAL_BLOCK)] or [points]
        if self.workers <= 1 or len(blocks) == 1:
            results = [run(block) for block in blocks]
        else:
            with ThreadPoolExecutor(max_workers=self.workers) as pool:
                results = list(pool.map(run, blocks))
        values = np.concatenate([values for values, _ in results])
        poles = np.concatenate([poles for _, poles in results])
        return values, poles

    def _objective(
        self,
        params: HyperBesselParams,
        kind: FunctionalKind,
        m: int,
        scale: float,
        points: np.ndarray,
        eval_cfg: Optional[EvalConfig] = None
    ) -> Tuple[np.ndarray, np.ndarray]:
        values, poles = self._evaluate(params, kind, m, points, eval_cfg)
        scaled = scale * values
        if isinstance(kind, ModulusKind):
            return np.abs(scaled), poles
        return scaled.real, poles

    def _gradient(
        self,
        params: HyperBesselParams,
        kind: FunctionalKind,
        m: int,
        scale: float,
        witness: complex
    ) -> float:
        h = GRADIENT_STEP
        probes = witness + h * np.array([1.0, -1.0, 1j, -1j])
        objective, _ = self._objective(params, kind, m, scale, probes)
        gradient = math.hypot((objective[0] - objective[1]) / (2 * h),
                              (objective[2] - objective[3]) / (2 * h))
        return gradient if math.isfinite(gradient) else 0.0

    # =========================================================================
    # EXTREMUM ESTIMATION
    # =========================================================================

    def estimate_extremum(
        self,
        kind,
        params: HyperBesselParams,
        m: int = 0,
        scale: float = 1.0
    ) -> ExtremumEstimate:
        """
        Minimum of Re(scale * quotient) for ratio kinds, maximum of
        |scale * f| or |scale * f'| for modulus kinds, over the sample set plus
        refine_levels local subgrids around the running extremum.
        """
        kind = as_functional_kind(kind)
        cfg = self.sampling
        sign = -1.0 if isinstance(kind, ModulusKind) else 1.0

        points = sample_disk(cfg)
        objective, poles = self._objective(params, kind, m, scale, points)
        best = _select(points, sign * objective)

        dr, dtheta = grid_spacing(cfg)
        for level in range(cfg.refine_levels):
            if best < 0:
                break
            subgrid = refine_points(complex(points[best]), dr, dtheta, cfg.refine_factor, cfg.max_radius)
            sub_objective, sub_poles = self._objective(params, kind, m, scale, subgrid)
            points = np.concatenate([points, subgrid])
            objective = np.concatenate([objective, sub_objective])
            poles = np.concatenate([poles, sub_poles])
            best = _select(points, sign * objective)
            dr /= cfg.refine_factor
            dtheta /= cfg.refine_factor
            logger.debug(f"Refinement level {level + 1}: extremum {objective[best]:.15g} at {points[best]}")

        excluded = int(np.count_nonzero(poles))
        if excluded:
            logger.warning(f"Excluded {excluded} pole points for {kind.value} (m={m})")

        if best < 0:
            return ExtremumEstimate(math.nan, 0j, int(points.size), excluded, 0.0)

        witness = complex(points[best])
        return ExtremumEstimate(
            extremum=float(objective[best]),
            witness=witness,
            samples_used=int(points.size),
            excluded_points=excluded,
            gradient=self._gradient(params, kind, m, scale, witness),
        )

    # =========================================================================
    # ADJUDICATION
    # =========================================================================

    def _margin(self, claim: BoundClaim, value: float) -> float:
        return claim.bound - value if claim.is_upper_bound else value - claim.bound

    def _confirm_falsified(self, claim: BoundClaim, witness: complex) -> bool:
        tight = self.eval_cfg.tightened(10.0)
        objective, poles = self._objective(claim.params, claim.kind, claim.m, claim.scale,
                                           np.array([witness]), tight)
        if poles[0]:
            return False
        return self._margin(claim, float(objective[0])) < -tight.target_tol

    def _inconclusive(self, claim: BoundClaim, reason: str, **fields) -> VerificationReport:
        report = dict(extremum=math.nan, witness=0j, margin=math.nan, samples_used=0,
                      grid_slack=math.nan, excluded_points=0)
        report.update(fields)
        return VerificationReport(claim=claim, status=ClaimStatus.INCONCLUSIVE,
                                  config=self.sampling, eval_tol=self.eval_cfg.target_tol,
                                  reason=reason, **report)

    def check_claim(self, claim: BoundClaim, enforce_gate: bool = True) -> VerificationReport:
        """Adjudicate one claim; failures are reported, never raised"""
        eval_tol = self.eval_cfg.target_tol

        if enforce_gate and not claim.gate.satisfied:
            return self._inconclusive(claim, GATE_FAILED)
        if not math.isfinite(claim.bound):
            return self._inconclusive(claim, "bound undefined")

        origin_margin = self._margin(claim, claim.origin_value())
        if origin_margin < -2.0 * eval_tol and self._confirm_falsified(claim, 0j):
            logger.info(f"{claim.description or claim.kind.value}: violated at the origin")
            return VerificationReport(
                claim=claim, extremum=claim.origin_value(), witness=0j, margin=origin_margin,
                status=ClaimStatus.FALSIFIED, samples_used=1, config=self.sampling,
                eval_tol=eval_tol, grid_slack=eval_tol, reason="violated at the origin",
            )

        try:
            estimate = self.estimate_extremum(claim.kind, claim.params, claim.m, claim.scale)
        except HyperBesselError as e:
            logger.error(f"Evaluation failed for {claim.kind.value} (m={claim.m}): {e}")
            return self._inconclusive(claim, f"evaluation failed: {e}")

        if math.isnan(estimate.extremum):
            return self._inconclusive(claim, "no evaluable sample points",
                                      samples_used=estimate.samples_used,
                                      excluded_points=estimate.excluded_points)

        margin = self._margin(claim, estimate.extremum)
        grid_slack = self.sampling.slack_factor * estimate.gradient + eval_tol
        band = eval_tol + grid_slack
        fields = dict(extremum=estimate.extremum, witness=estimate.witness, margin=margin,
                      samples_used=estimate.samples_used, grid_slack=grid_slack,
                      excluded_points=estimate.excluded_points)

        excluded_fraction = estimate.excluded_points / max(estimate.samples_used, 1)
        if excluded_fraction > self.sampling.max_excluded_fraction:
            return self._inconclusive(claim, f"{excluded_fraction:.3%} of samples are poles", **fields)

        if margin > band:
            status, reason = ClaimStatus.HOLDS, None
        elif margin < -band:
            status, reason = ClaimStatus.FALSIFIED, None
            if not self._confirm_falsified(claim, estimate.witness):
                status, reason = ClaimStatus.INCONCLUSIVE, "falsification not confirmed at tighter tolerance"
        else:
            status, reason = ClaimStatus.INCONCLUSIVE, "margin inside indeterminacy band"

        logger.info(f"{claim.description or claim.kind.value}: {status.value} (margin {margin:.6g})")
        return VerificationReport(claim=claim, status=status, config=self.sampling,
                                  eval_tol=eval_tol, reason=reason, **fields)

    def check_claims(self, claims: Iterable[BoundClaim]) -> List[VerificationReport]:
        return [self.check_claim(claim) for claim in claims]

    def check_lemma_bounds(self, params: HyperBesselParams) -> Tuple[VerificationReport, VerificationReport]:
        """sup|f| and sup|f'| against the lemma constants"""
        lemma_modulus_bounds(params)
        modulus_f, modulus_f_prime = lemma_claims(params)
        return self.check_claim(modulus_f), self.check_claim(modulus_f_prime)

    def check_univalence(self, params: HyperBesselParams) -> VerificationReport:
        """inf Re f' > 0 over the sampled disk; runs whether or not the gate holds"""
        claim = univalence_claim(params)
        report = self.check_claim(claim, enforce_gate=False)
        if not claim.gate.satisfied:
            note = "derivative gate failed; no converse asserted"
            reason = f"{note}; {report.reason}" if report.reason else note
            report = replace(report, reason=reason)
        return report

    def cross_validate(self, params: HyperBesselParams) -> CrossValidationReport:
        """Series evaluation against the trigonometric closed forms (d=1, nu in {1/2, 3/2})"""
        if params.d != 1 or params.alpha[0] not in SUPPORTED_ORDERS:
            notice = f"no closed form for d={params.d}, alpha={list(params.alpha)}"
            logger.warning(f"Cross-validation skipped: {notice}")
            return CrossValidationReport(skipped=True, notice=notice)

        nu = params.alpha[0]
        points = sample_disk(self.sampling)
        radius = self.sampling.max_radius
        f = series_values(params, points, self.eval_cfg, radius=radius)
        f_prime = series_values(params, points, self.eval_cfg, derivative=True, radius=radius)
        residual_f = float(np.max(np.abs(f - phi_values(nu, points, self.eval_cfg))))
        residual_f_prime = float(np.max(np.abs(
            f_prime - phi_values(nu, points, self.eval_cfg, derivative=True))))

        report = CrossValidationReport(
            skipped=False,
            max_residual_f=residual_f,
            max_residual_f_prime=residual_f_prime,
            tolerance=10.0 * self.eval_cfg.target_tol,
            samples_used=int(points.size),
        )
        logger.info(f"Cross-validation nu={nu}: residuals {residual_f:.3g} / {residual_f_prime:.3g}")
        return report


# =============================================================================
# FUNCTIONAL ENTRY POINTS
# =============================================================================

def estimate_extremum(
    functional,
    params: HyperBesselParams,
    m: int = 0,
    cfg: Optional[SamplingConfig] = None,
    eval_cfg: Optional[EvalConfig] = None,
    scale: float = 1.0
) -> ExtremumEstimate:
    return ClaimVerifier(cfg, eval_cfg).estimate_extremum(functional, params, m, scale)


def check_claim(
    claim: BoundClaim,
    cfg: Optional[SamplingConfig] = None,
    eval_cfg: Optional[EvalConfig] = None
) -> VerificationReport:
    return ClaimVerifier(cfg, eval_cfg).check_claim(claim)


def check_lemma_bounds(
    params: HyperBesselParams,
    cfg: Optional[SamplingConfig] = None,
    eval_cfg: Optional[EvalConfig] = None
) -> Tuple[VerificationReport, VerificationReport]:
    return ClaimVerifier(cfg, eval_cfg).check_lemma_bounds(params)


def check_univalence(
    params: HyperBesselParams,
    cfg: Optional[SamplingConfig] = None,
    eval_cfg: Optional[EvalConfig] = None
) -> VerificationReport:
    return ClaimVerifier(cfg, eval_cfg).check_univalence(params)


def cross_validate(
    params: HyperBesselParams,
    cfg: Optional[SamplingConfig] = None,
    eval_cfg: Optional[EvalConfig] = None
) -> CrossValidationReport:
    return ClaimVerifier(cfg, eval_cfg).cross_validate(params)
