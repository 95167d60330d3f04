"""
Bound Constants and Applicability Gates

Closed-form constants for the modulus bounds of f and f', and for the
real-part lower bounds of the quotients between f (or f') and its partial
sums. Every constant comes in two variants:

- PAPER_STATED: the value as printed, kept verbatim so it can be falsified.
- CORRECTED_RATIONAL: (c-1)/c and c/(c+1), where c is the constant in the
  proofs' Moebius construction (1+w)/(1-w) = c * (quotient - (c-1)/c).

The formula helpers are written against plain arithmetic so they accept
fractions.Fraction as well as float; `rational_bounds` uses that to reproduce
printed values exactly.
"""

import math
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple

from .errors import DomainError, GateError
from .hyper_bessel import (
    FunctionalKind,
    HyperBesselParams,
    ModulusKind,
    QuotientKind,
    make_params,
)

logger = logging.getLogger(__name__)


class BoundVariant(str, Enum):
    """Printed constant or the rational form rebuilt from the proofs"""
    PAPER_STATED = "paper"
    CORRECTED_RATIONAL = "corrected"


class CorollaryKind(str, Enum):
    """d=1 reductions: partial-sum quotients or derivative quotients"""
    PARTIAL_SUM = "partial_sum"
    DERIVATIVE = "derivative"


class ClaimSource(str, Enum):
    """Where a claim comes from"""
    LEMMA = "lemma"
    PARTIAL_SUM = "partial_sum"
    DERIVATIVE = "derivative"
    WORKED_EXAMPLE = "worked_example"
    UNIVALENCE = "univalence"


@dataclass(frozen=True)
class GateResult:
    """One parameter hypothesis: raw value, threshold and verdict"""
    name: str
    value: float
    threshold: float
    satisfied: bool


@dataclass(frozen=True)
class GateReport:
    """All three hypotheses for one parameter set"""
    lemma: GateResult
    theorem1: GateResult
    theorem2: GateResult

    def as_list(self) -> List[GateResult]:
        return [self.lemma, self.theorem1, self.theorem2]


@dataclass(frozen=True)
class BoundClaim:
    """
    One inequality claim about a functional over the unit disk.

    Ratio kinds claim inf Re(scale * quotient) >= bound; modulus kinds claim
    sup |scale * f| <= bound (or |scale * f'|).
    """
    params: HyperBesselParams
    kind: FunctionalKind
    m: int
    bound: float
    variant: BoundVariant
    gate: GateResult
    scale: float = 1.0
    source: ClaimSource = ClaimSource.PARTIAL_SUM
    description: str = ""

    @property
    def is_upper_bound(self) -> bool:
        return isinstance(self.kind, ModulusKind)

    def origin_value(self) -> float:
        """Exact value of the functional at z = 0"""
        if self.kind is ModulusKind.MODULUS_F:
            return 0.0
        if self.kind is ModulusKind.MODULUS_F_PRIME:
            return abs(self.scale)
        return self.scale


# =============================================================================
# FORMULAS (number-type agnostic)
# =============================================================================

def _lemma_values(lam, mu):
    two_lm = 2 * lam * mu
    bound_f = (two_lm + 1) / (two_lm - 1)
    bound_f_prime = (4 * lam * lam * mu * (mu + 1) - 1) / (two_lm - 1) ** 2
    return bound_f, bound_f_prime


def _theorem1_values(lam, mu, variant: BoundVariant):
    two_lm = 2 * lam * mu
    if variant is BoundVariant.PAPER_STATED:
        return (two_lm - 3) / 2, (two_lm - 1) / 2
    # c = (2 lambda mu - 1)/2
    return (two_lm - 3) / (two_lm - 1), (two_lm - 1) / (two_lm + 1)


def _theorem2_parts(lam, mu):
    numerator = 4 * lam * lam * mu * mu - 4 * lam * lam * mu - 8 * lam * mu + 3
    denominator = 4 * lam * lam * mu + 4 * lam * mu - 2
    second_numerator = 4 * lam * lam * mu * mu - 4 * lam * mu + 1
    return numerator, denominator, second_numerator


def _theorem2_values(lam, mu, variant: BoundVariant):
    numerator, denominator, second_numerator = _theorem2_parts(lam, mu)
    if variant is BoundVariant.PAPER_STATED:
        return numerator / denominator, second_numerator / denominator
    # c2 = (2 lambda mu - 1)^2 / denominator
    square = (2 * lam * mu - 1) ** 2
    corrected_second = second_numerator / (4 * lam * lam * mu * mu + 4 * lam * lam * mu - 1)
    return numerator / square, corrected_second


def _safe(formula, *args) -> Tuple[float, float]:
    try:
        first, second = formula(*args)
        return float(first), float(second)
    except ZeroDivisionError:
        return math.nan, math.nan


# =============================================================================
# GATES
# =============================================================================

def theorem2_gate_numerator(params: HyperBesselParams) -> float:
    """4 lambda^2 mu^2 - 4 lambda^2 mu - 8 lambda mu + 3"""
    return float(_theorem2_parts(params.lam, params.mu)[0])


def gates(params: HyperBesselParams) -> GateReport:
    """
    Evaluate the three hypotheses. The lemma and partial-sum gate values grow
    strictly with mu for fixed d; the derivative gate is the printed fraction
    and is only monotone above the pole of its denominator.
    """
    lm = params.lambda_mu
    lemma = GateResult("lemma", 2.0 * lm, 1.0, 2.0 * lm > 1.0)
    theorem1 = GateResult("partial_sum", lm, 1.5, lm > 1.5)

    numerator, denominator, _ = _theorem2_parts(params.lam, params.mu)
    if denominator == 0:
        theorem2 = GateResult("derivative", math.nan, 0.0, False)
    else:
        value = numerator / denominator
        theorem2 = GateResult("derivative", value, 0.0, value > 0.0)
    return GateReport(lemma=lemma, theorem1=theorem1, theorem2=theorem2)


def _require(gate: GateResult) -> None:
    if not gate.satisfied:
        raise GateError(
            f"Gate '{gate.name}' fails: value {gate.value:.6g} vs threshold {gate.threshold:g}",
            gate=gate.name,
            value=gate.value,
        )


# =============================================================================
# BOUNDS
# =============================================================================

def lemma_modulus_bounds(params: HyperBesselParams) -> Tuple[float, float]:
    """(sup |f| bound, sup |f'| bound), valid when 2 lambda mu > 1"""
    _require(gates(params).lemma)
    return _safe(_lemma_values, params.lam, params.mu)


def theorem1_bounds(
    params: HyperBesselParams,
    variant: BoundVariant = BoundVariant.PAPER_STATED
) -> Tuple[float, float]:
    """Lower bounds for Re(f/f_m) and Re(f_m/f), valid when lambda mu > 3/2"""
    _require(gates(params).theorem1)
    return _safe(_theorem1_values, params.lam, params.mu, BoundVariant(variant))


def theorem2_bounds(
    params: HyperBesselParams,
    variant: BoundVariant = BoundVariant.PAPER_STATED
) -> Tuple[float, float]:
    """Lower bounds for Re(f'/f_m') and Re(f_m'/f'), valid when the printed gate is positive"""
    _require(gates(params).theorem2)
    return _safe(_theorem2_values, params.lam, params.mu, BoundVariant(variant))


def rational_bounds(
    d: int,
    alpha: Sequence[Fraction],
    variant: BoundVariant = BoundVariant.PAPER_STATED
) -> Dict[str, Fraction]:
    """Exact rational constants for rational alpha (gates are not checked)"""
    lam = Fraction((d + 1) ** (d + 1))
    mu = math.prod((Fraction(a) + 1 for a in alpha), start=Fraction(1))
    variant = BoundVariant(variant)
    out: Dict[str, Fraction] = {}
    named = (
        (("lemma_f", "lemma_f_prime"), lambda: _lemma_values(lam, mu)),
        (("F_over_Fm", "Fm_over_F"), lambda: _theorem1_values(lam, mu, variant)),
        (("Fp_over_Fmp", "Fmp_over_Fp"), lambda: _theorem2_values(lam, mu, variant)),
    )
    for names, compute in named:
        try:
            values = compute()
        except ZeroDivisionError:
            continue
        out.update(zip(names, values))
    return out


def corollary_bounds(
    nu: float,
    which: CorollaryKind,
    variant: BoundVariant = BoundVariant.PAPER_STATED
) -> Tuple[float, float]:
    """d=1 (classical Bessel) forms of the partial-sum and derivative bounds"""
    which = CorollaryKind(which)
    variant = BoundVariant(variant)
    if which is CorollaryKind.PARTIAL_SUM:
        if not nu > -5.0 / 8.0:
            raise GateError(f"nu={nu} must exceed -5/8", gate="partial_sum", value=nu)
        if variant is BoundVariant.PAPER_STATED:
            return (8 * nu + 5) / 2, (8 * nu + 7) / 2
        return theorem1_bounds(make_params(1, [nu]), variant)

    critical = nu_star()
    if not nu > critical:
        raise GateError(f"nu={nu} must exceed nu*={critical:.6f}", gate="derivative", value=nu)
    if variant is BoundVariant.PAPER_STATED:
        denominator = 80 * nu + 78
        return (
            (64 * nu * nu + 32 * nu - 29) / denominator,
            (64 * nu * nu + 112 * nu + 49) / denominator,
        )
    return theorem2_bounds(make_params(1, [nu]), variant)


# =============================================================================
# CRITICAL PARAMETERS
# =============================================================================

def quadratic_roots(a: float, b: float, c: float) -> Tuple[float, float]:
    """Real roots of a x^2 + b x + c, ascending, without cancellation"""
    if a == 0:
        raise DomainError("Leading coefficient must be non-zero")
    disc = b * b - 4.0 * a * c
    if disc < 0:
        raise DomainError(f"No real roots (discriminant {disc:.6g})")
    q = -0.5 * (b + math.copysign(math.sqrt(disc), b))
    if q == 0:
        return 0.0, 0.0
    first, second = q / a, c / q
    return (first, second) if first <= second else (second, first)


def theorem2_gate_coefficients(d: int) -> Tuple[float, float, float]:
    """(a, b, c) of the gate numerator as a quadratic in mu"""
    lam = float((d + 1) ** (d + 1))
    return 4.0 * lam * lam, -(4.0 * lam * lam + 8.0 * lam), 3.0


def critical_mu(d: int) -> float:
    """mu*(d): larger root of the derivative gate numerator"""
    if d < 1:
        raise DomainError(f"d must be >= 1, got {d}")
    return quadratic_roots(*theorem2_gate_coefficients(d))[1]


def critical_alpha(d: int) -> float:
    """Common alpha with prod(alpha_i + 1) = mu*(d)"""
    return critical_mu(d) ** (1.0 / d) - 1.0


def nu_star() -> float:
    """Larger root of 64 nu^2 + 32 nu - 29 (about 0.46807)"""
    return quadratic_roots(64.0, 32.0, -29.0)[1]


# =============================================================================
# CLAIM BUILDERS
# =============================================================================

def lemma_claims(params: HyperBesselParams) -> List[BoundClaim]:
    gate = gates(params).lemma
    bound_f, bound_f_prime = _safe(_lemma_values, params.lam, params.mu)
    return [
        BoundClaim(params, ModulusKind.MODULUS_F, 0, bound_f, BoundVariant.PAPER_STATED,
                   gate, source=ClaimSource.LEMMA,
                   description="sup|f| <= (2*lambda*mu+1)/(2*lambda*mu-1)"),
        BoundClaim(params, ModulusKind.MODULUS_F_PRIME, 0, bound_f_prime, BoundVariant.PAPER_STATED,
                   gate, source=ClaimSource.LEMMA,
                   description="sup|f'| <= (4*lambda^2*mu*(mu+1)-1)/(2*lambda*mu-1)^2"),
    ]


def theorem1_claims(
    params: HyperBesselParams,
    variant: BoundVariant,
    m_values: Iterable[int]
) -> List[BoundClaim]:
    gate = gates(params).theorem1
    variant = BoundVariant(variant)
    first, second = _safe(_theorem1_values, params.lam, params.mu, variant)
    claims = []
    for m in m_values:
        claims.append(BoundClaim(params, QuotientKind.F_OVER_FM, m, first, variant, gate,
                                 description=f"Re(f/f_{m}) lower bound"))
        claims.append(BoundClaim(params, QuotientKind.FM_OVER_F, m, second, variant, gate,
                                 description=f"Re(f_{m}/f) lower bound"))
    return claims


def theorem2_claims(
    params: HyperBesselParams,
    variant: BoundVariant,
    m_values: Iterable[int]
) -> List[BoundClaim]:
    gate = gates(params).theorem2
    variant = BoundVariant(variant)
    first, second = _safe(_theorem2_values, params.lam, params.mu, variant)
    claims = []
    for m in m_values:
        claims.append(BoundClaim(params, QuotientKind.FP_OVER_FMP, m, first, variant, gate,
                                 source=ClaimSource.DERIVATIVE,
                                 description=f"Re(f'/f_{m}') lower bound"))
        claims.append(BoundClaim(params, QuotientKind.FMP_OVER_FP, m, second, variant, gate,
                                 source=ClaimSource.DERIVATIVE,
                                 description=f"Re(f_{m}'/f') lower bound"))
    return claims


def univalence_claim(params: HyperBesselParams) -> BoundClaim:
    """Re f' > 0 (f'/f_0' with f_0' = 1), the Noshiro-Warschawski condition"""
    return BoundClaim(params, QuotientKind.FP_OVER_FMP, 0, 0.0, BoundVariant.PAPER_STATED,
                      gates(params).theorem2, source=ClaimSource.UNIVALENCE,
                      description="Re(f') > 0")


def worked_example_claims() -> List[BoundClaim]:
    """
    The printed sine/cosine instances at m=0 with their literal scale: for
    nu=3/2 the expressions are written without the factor 3 of phi_{3/2}.
    """
    half = make_params(1, [0.5])
    three_halves = make_params(1, [1.5])
    rows = (
        (half, QuotientKind.F_OVER_FM, 1.0, 9 / 2, "Re(sin z/z) >= 9/2"),
        (half, QuotientKind.FM_OVER_F, 1.0, 11 / 2, "Re(z/sin z) >= 11/2"),
        (three_halves, QuotientKind.F_OVER_FM, 1.0 / 3.0, 17 / 6,
         "Re((sin z - z cos z)/z^3) >= 17/6"),
        (three_halves, QuotientKind.FM_OVER_F, 3.0, 57 / 2,
         "Re(z^3/(sin z - z cos z)) >= 57/2"),
        (half, QuotientKind.FP_OVER_FMP, 1.0, 3 / 118, "Re(cos z) >= 3/118"),
        (half, QuotientKind.FMP_OVER_FP, 1.0, 118 / 3, "Re(1/cos z) >= 118/3"),
        (three_halves, QuotientKind.FP_OVER_FMP, 1.0 / 3.0, 163 / 198,
         "Re((2z^2 cos z + (z^3-2z) sin z)/z^4) >= 163/198"),
        (three_halves, QuotientKind.FMP_OVER_FP, 3.0, 361 / 198,
         "Re(z^4/(2z^2 cos z + (z^3-2z) sin z)) >= 361/198"),
    )
    claims = []
    for params, kind, scale, bound, description in rows:
        report = gates(params)
        gate = report.theorem2 if kind.uses_derivative else report.theorem1
        claims.append(BoundClaim(params, kind, 0, bound, BoundVariant.PAPER_STATED, gate,
                                 scale=scale, source=ClaimSource.WORKED_EXAMPLE,
                                 description=description))
    return claims
