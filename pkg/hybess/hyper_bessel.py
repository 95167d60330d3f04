"""
Normalized Hyper-Bessel Functions

Evaluates f(z) = z * J(z) = sum_n A_n z^(n(d+1)+1), its derivative, its
partial sums and the quotients between them. Infinite series are truncated at
the first order whose certified tail bound meets the configured tolerance,
and every finite sum is accumulated with compensated summation.

Scalar entry points (eval_f, quotient, ...) accept a Python complex; the
*_values functions take numpy arrays of points and are what grid scans use.
"""

import math
import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Optional, Sequence, Tuple, Union

import numpy as np
from scipy.special import gammaln

from .config import POLE_THRESHOLD
from .errors import CoefficientOverflowError, ConvergenceError, DomainError, PoleError
from .models.config import EvalConfig
from .summation import CompensatedSum, compensated_sum

logger = logging.getLogger(__name__)


class QuotientKind(str, Enum):
    """Quotients of f (or f') and its partial sum (or the partial sum's derivative)"""
    F_OVER_FM = "F_over_Fm"
    FM_OVER_F = "Fm_over_F"
    FP_OVER_FMP = "Fp_over_Fmp"
    FMP_OVER_FP = "Fmp_over_Fp"

    @property
    def uses_derivative(self) -> bool:
        return self in (QuotientKind.FP_OVER_FMP, QuotientKind.FMP_OVER_FP)

    @property
    def partial_in_numerator(self) -> bool:
        return self in (QuotientKind.FM_OVER_F, QuotientKind.FMP_OVER_FP)


class ModulusKind(str, Enum):
    """Modulus functionals bounded above by the lemma constants"""
    MODULUS_F = "ModulusF"
    MODULUS_F_PRIME = "ModulusFPrime"


FunctionalKind = Union[QuotientKind, ModulusKind]


def as_functional_kind(kind: Union[str, FunctionalKind]) -> FunctionalKind:
    """Accept an enum member or its string value"""
    if isinstance(kind, (QuotientKind, ModulusKind)):
        return kind
    for enum_type in (QuotientKind, ModulusKind):
        try:
            return enum_type(kind)
        except ValueError:
            continue
    raise DomainError(f"Unknown functional kind: {kind!r}")


@dataclass(frozen=True)
class HyperBesselParams:
    """Dimension d, parameter vector alpha and the derived constants"""
    d: int
    alpha: Tuple[float, ...]
    lam: float
    mu: float

    @property
    def lambda_mu(self) -> float:
        return self.lam * self.mu

    def shifted_product(self, n: int) -> float:
        """prod_i (alpha_i + 1 + n)"""
        return math.prod(a + 1.0 + n for a in self.alpha)


@dataclass(frozen=True, eq=False)
class CoefficientTable:
    """A_0..A_N built by the ratio recurrence (read-only array)"""
    params: HyperBesselParams
    values: np.ndarray

    @property
    def N(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, n: int) -> float:
        return float(self.values[n])

    def derivative_weights(self) -> np.ndarray:
        n = np.arange(self.N + 1)
        return n * (self.params.d + 1) + 1.0


@dataclass(frozen=True)
class SeriesEvaluation:
    """Series value with the truncation order used and its certified error"""
    value: complex
    order: int
    error_bound: float


def make_params(d: int, alpha: Sequence[float]) -> HyperBesselParams:
    """Validate (d, alpha) and compute lambda = (d+1)^(d+1), mu = prod(alpha_i + 1)"""
    if isinstance(d, bool) or int(d) != d or d < 1:
        raise DomainError(f"d must be a positive integer, got {d!r}")
    d = int(d)
    alpha = tuple(float(a) for a in alpha)
    if len(alpha) != d:
        raise DomainError(f"alpha has {len(alpha)} entries, expected d={d}")
    for i, a in enumerate(alpha):
        if not math.isfinite(a) or a <= -1.0:
            raise DomainError(f"alpha[{i}]={a} must be finite and > -1")

    lam = float((d + 1) ** (d + 1))
    mu = math.prod(a + 1.0 for a in alpha)
    return HyperBesselParams(d=d, alpha=alpha, lam=lam, mu=mu)


# =============================================================================
# COEFFICIENTS
# =============================================================================

@lru_cache(maxsize=512)
def _recurrence_values(params: HyperBesselParams, N: int) -> Tuple[float, ...]:
    values = [1.0]
    for n in range(N):
        ratio = (n + 1) * params.lam * params.shifted_product(n)
        nxt = -values[-1] / ratio
        if not math.isfinite(nxt):
            raise CoefficientOverflowError(
                f"Non-finite coefficient A_{n + 1} for alpha={list(params.alpha)}", terms=n + 1
            )
        values.append(nxt)
    return tuple(values)


def coefficient_table(params: HyperBesselParams, N: int) -> CoefficientTable:
    """A_0..A_N via A_{n+1} = -A_n / ((n+1) lambda prod_i(alpha_i+1+n))"""
    if N < 1:
        raise DomainError(f"Table order must be >= 1, got {N}")
    values = np.array(_recurrence_values(params, N), dtype=float)
    values.flags.writeable = False
    return CoefficientTable(params=params, values=values)


def coefficient_direct(params: HyperBesselParams, n: int) -> float:
    """A_n from the closed formula, accumulated in log space"""
    if n < 0:
        raise DomainError(f"Coefficient index must be >= 0, got {n}")
    if n == 0:
        return 1.0
    d = params.d
    log_terms = [-gammaln(n + 1.0), -n * (d + 1) * math.log(d + 1)]
    for a in params.alpha:
        # log of the rising factorial (a+1)_n
        log_terms.append(-(gammaln(a + 1.0 + n) - gammaln(a + 1.0)))
    magnitude = math.exp(float(compensated_sum(log_terms)))
    return -magnitude if n % 2 else magnitude


# =============================================================================
# TAIL BOUNDS
# =============================================================================

def _geometric_ratio(params: HyperBesselParams, r: float) -> float:
    if r < 0:
        raise DomainError(f"Radius must be >= 0, got {r}")
    q = r ** (params.d + 1) / (2.0 * params.lambda_mu)
    if q >= 1.0:
        raise DomainError(
            f"Geometric tail diverges: r^(d+1)/(2*lambda*mu) = {q:.6g} >= 1"
        )
    return q


def tail_bound(params: HyperBesselParams, N: int, r: float) -> float:
    """Bound on sum_{n>N} |A_n| r^(n(d+1)+1) from |A_n| <= 2 (2 lambda mu)^(-n)"""
    if N < 0:
        raise DomainError(f"N must be >= 0, got {N}")
    q = _geometric_ratio(params, r)
    return r * 2.0 * q ** (N + 1) / (1.0 - q)


def derivative_tail_bound(params: HyperBesselParams, N: int, r: float) -> float:
    """Bound on sum_{n>N} (n(d+1)+1) |A_n| r^(n(d+1)), differentiated geometric sum"""
    if N < 0:
        raise DomainError(f"N must be >= 0, got {N}")
    q = _geometric_ratio(params, r)
    head = q ** (N + 1)
    plain = head / (1.0 - q)
    linear = head * (N + 1 - N * q) / (1.0 - q) ** 2
    return 2.0 * ((params.d + 1) * linear + plain)


def _ratio_tail(params: HyperBesselParams, N: int, r: float, derivative: bool) -> float:
    # term ratios shrink with n, so the tail after N is dominated by a geometric
    # series started at term N+1 with ratio rho_{N+1}
    d1 = params.d + 1
    n = N + 1

    def weight(k: int) -> float:
        return k * d1 + 1.0 if derivative else 1.0

    lead_power = r ** (n * d1) if derivative else r ** (n * d1 + 1)
    lead = abs(coefficient_direct(params, n)) * weight(n) * lead_power
    rho = r ** d1 / ((n + 1) * params.lam * params.shifted_product(n))
    rho *= weight(n + 1) / weight(n)
    if rho >= 1.0:
        return math.inf
    return lead / (1.0 - rho)


def certified_tail(
    params: HyperBesselParams,
    N: int,
    r: float,
    derivative: bool = False
) -> float:
    """Smaller of the geometric and ratio-test tail bounds; both are certified"""
    try:
        if derivative:
            geometric = derivative_tail_bound(params, N, r)
        else:
            geometric = tail_bound(params, N, r)
    except DomainError:
        if r < 0 or N < 0:
            raise
        geometric = math.inf
    return min(geometric, _ratio_tail(params, N, r, derivative))


def truncation_order(
    params: HyperBesselParams,
    r: float,
    cfg: Optional[EvalConfig] = None,
    derivative: bool = False
) -> Tuple[int, float]:
    """Smallest N whose certified tail at radius r is <= cfg.target_tol"""
    cfg = cfg or EvalConfig()
    for N in range(cfg.max_terms):
        bound = certified_tail(params, N, r, derivative)
        if bound <= cfg.target_tol:
            logger.debug(f"Truncating at N={N} (r={r:.6g}, tail<={bound:.3g})")
            return N, bound
    raise ConvergenceError(
        f"Tail bound above {cfg.target_tol:g} after {cfg.max_terms} terms at r={r:.6g}",
        terms=cfg.max_terms,
    )


# =============================================================================
# SERIES EVALUATION
# =============================================================================

def _power_variable(params: HyperBesselParams, z: np.ndarray) -> np.ndarray:
    w = z
    for _ in range(params.d):
        w = w * z
    return w


def _power_series(coefficients: np.ndarray, w: np.ndarray) -> np.ndarray:
    acc = CompensatedSum(np.full(w.shape, coefficients[0], dtype=complex))
    power = np.ones_like(w)
    for c in coefficients[1:]:
        power = power * w
        acc.add(c * power)
    return acc.total


def _series_coefficients(params: HyperBesselParams, N: int, derivative: bool) -> np.ndarray:
    coefficients = np.array(_recurrence_values(params, N), dtype=float)
    if derivative:
        coefficients = coefficients * (np.arange(N + 1) * (params.d + 1) + 1.0)
    return coefficients


def series_values(
    params: HyperBesselParams,
    z,
    cfg: Optional[EvalConfig] = None,
    derivative: bool = False,
    factored: bool = False,
    radius: Optional[float] = None
) -> np.ndarray:
    """
    f (or f') on an array of points.

    With factored=True the value of f(z)/z is returned instead of f(z); the
    derivative series is already free of the leading z. The truncation order
    is chosen for the largest |z| in the array, or for `radius` when that is
    larger, so callers splitting a grid into chunks get identical terms.
    """
    z = np.asarray(z, dtype=complex)
    r = float(np.max(np.abs(z))) if z.size else 0.0
    if radius is not None:
        r = max(r, radius)
    try:
        N, _ = truncation_order(params, r, cfg, derivative)
    except ConvergenceError as e:
        e.point = complex(z.flat[int(np.argmax(np.abs(z)))])
        raise
    g = _power_series(_series_coefficients(params, N, derivative), _power_variable(params, z))
    if derivative or factored:
        return g
    return z * g


def partial_values(
    params: HyperBesselParams,
    m: int,
    z,
    derivative: bool = False,
    factored: bool = False
) -> np.ndarray:
    """Partial sum z + sum_{n=1..m} A_n z^(n(d+1)+1) (or its derivative) on an array"""
    if m < 0:
        raise DomainError(f"Partial-sum order must be >= 0, got {m}")
    z = np.asarray(z, dtype=complex)
    g = _power_series(_series_coefficients(params, m, derivative), _power_variable(params, z))
    if derivative or factored:
        return g
    return z * g


def eval_f_certified(
    params: HyperBesselParams,
    z: complex,
    cfg: Optional[EvalConfig] = None,
    derivative: bool = False
) -> SeriesEvaluation:
    """f(z) or f'(z) with the truncation order and certified error bound"""
    try:
        N, bound = truncation_order(params, abs(complex(z)), cfg, derivative)
    except ConvergenceError as e:
        e.point = complex(z)
        raise
    coefficients = _series_coefficients(params, N, derivative)
    point = np.array([complex(z)])
    g = _power_series(coefficients, _power_variable(params, point))
    value = g if derivative else point * g
    return SeriesEvaluation(value=complex(value[0]), order=N, error_bound=bound)


def eval_f(params: HyperBesselParams, z: complex, cfg: Optional[EvalConfig] = None) -> complex:
    return eval_f_certified(params, z, cfg).value


def eval_f_prime(params: HyperBesselParams, z: complex, cfg: Optional[EvalConfig] = None) -> complex:
    return eval_f_certified(params, z, cfg, derivative=True).value


def eval_partial(params: HyperBesselParams, m: int, z: complex) -> complex:
    return complex(partial_values(params, m, np.array([complex(z)]))[0])


def eval_partial_prime(params: HyperBesselParams, m: int, z: complex) -> complex:
    return complex(partial_values(params, m, np.array([complex(z)]), derivative=True)[0])


# =============================================================================
# QUOTIENTS
# =============================================================================

def quotient_values(
    params: HyperBesselParams,
    kind: Union[str, QuotientKind],
    m: int,
    z,
    cfg: Optional[EvalConfig] = None,
    radius: Optional[float] = None
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Quotient on an array of points, computed on factored series so that the
    origin gives exactly 1.

    Returns (values, poles); entries whose denominator modulus is below the
    pole threshold are NaN in values and True in poles.
    """
    kind = QuotientKind(kind)
    derivative = kind.uses_derivative
    full = series_values(params, z, cfg, derivative=derivative, factored=True, radius=radius)
    part = partial_values(params, m, z, derivative=derivative, factored=True)
    num, den = (part, full) if kind.partial_in_numerator else (full, part)

    poles = np.abs(den) < POLE_THRESHOLD
    safe_den = np.where(poles, 1.0, den)
    values = np.where(poles, complex(np.nan, np.nan), num / safe_den)
    return values, poles


def quotient(
    params: HyperBesselParams,
    kind: Union[str, QuotientKind],
    m: int,
    z: complex,
    cfg: Optional[EvalConfig] = None
) -> complex:
    values, poles = quotient_values(params, kind, m, np.array([complex(z)]), cfg)
    if poles[0]:
        raise PoleError(
            f"Denominator of {QuotientKind(kind).value} vanishes at z={complex(z)}",
            point=complex(z),
        )
    return complex(values[0])


def functional_values(
    params: HyperBesselParams,
    kind: Union[str, FunctionalKind],
    m: int,
    z,
    cfg: Optional[EvalConfig] = None,
    radius: Optional[float] = None
) -> Tuple[np.ndarray, np.ndarray]:
    """Complex values of a quotient, of f or of f' on an array, with the pole mask"""
    kind = as_functional_kind(kind)
    if isinstance(kind, QuotientKind):
        return quotient_values(params, kind, m, z, cfg, radius=radius)
    derivative = kind is ModulusKind.MODULUS_F_PRIME
    values = series_values(params, z, cfg, derivative=derivative, radius=radius)
    return values, np.zeros(values.shape, dtype=bool)


# =============================================================================
# COEFFICIENT SUMS
# =============================================================================

def coefficient_abs_sum(
    params: HyperBesselParams,
    cfg: Optional[EvalConfig] = None,
    weighted: bool = False
) -> SeriesEvaluation:
    """
    sum_{n>=1} |A_n| (or sum (n(d+1)+1)|A_n| when weighted), the quantities the
    lemma constants bound from above.
    """
    N, bound = truncation_order(params, 1.0, cfg, derivative=weighted)
    coefficients = np.abs(_series_coefficients(params, max(N, 1), weighted))
    total = float(compensated_sum(coefficients[1:]))
    return SeriesEvaluation(value=total, order=N, error_bound=bound)
