"""
Coefficient Inequality Audit

Checks the elementary inequalities behind the coefficient decay estimate,
term by term up to a chosen order:

- n! >= 2^(n-1)
- (alpha_i + 1)_n >= (alpha_i + 1)^n  (the direction the bound relies on)
- |A_n| <= 1 / (2^(n-1) (lambda mu)^n)

The reverse Pochhammer direction, (alpha_i + 1)^n >= (alpha_i + 1)_n, is
printed in the source material; it is false for alpha_i > 0 and n >= 2, and
its failures are recorded rather than treated as errors.
"""

import math
import logging
from dataclasses import dataclass, field
from typing import List

from scipy.special import poch

from .errors import DomainError
from .hyper_bessel import HyperBesselParams, coefficient_table

logger = logging.getLogger(__name__)

# relative slack for comparisons of rounded magnitudes
RELATIVE_SLACK = 1e-12


@dataclass(frozen=True)
class InequalityCheck:
    """One instance of an inequality: lhs >= rhs"""
    name: str
    n: int
    lhs: float
    rhs: float
    passed: bool
    index: int = -1


@dataclass
class AuditReport:
    """All checks for one parameter set up to order N"""
    params: HyperBesselParams
    N: int
    checks: List[InequalityCheck] = field(default_factory=list)
    printed_direction_failures: List[InequalityCheck] = field(default_factory=list)

    def add_check(self, check: InequalityCheck):
        self.checks.append(check)

    def failures(self, name: str = "") -> List[InequalityCheck]:
        return [c for c in self.checks if not c.passed and (not name or c.name == name)]

    @property
    def proof_direction_holds(self) -> bool:
        return not self.failures()

    @property
    def decay_certificate_holds(self) -> bool:
        return not self.failures("decay")


def _at_least(lhs: float, rhs: float) -> bool:
    return lhs >= rhs * (1.0 - RELATIVE_SLACK)


def coefficient_inequality_audit(params: HyperBesselParams, N: int) -> AuditReport:
    """Audit n = 1..N; never raises on a failed inequality"""
    if N < 2:
        raise DomainError(f"Audit order must be >= 2, got {N}")

    report = AuditReport(params=params, N=N)
    table = coefficient_table(params, N)
    lambda_mu = params.lambda_mu

    for n in range(1, N + 1):
        factorial = float(math.factorial(n))
        power_of_two = 2.0 ** (n - 1)
        report.add_check(InequalityCheck("factorial", n, factorial, power_of_two,
                                         factorial >= power_of_two))

        for i, a in enumerate(params.alpha):
            rising = float(poch(a + 1.0, n))
            power = (a + 1.0) ** n
            report.add_check(InequalityCheck("pochhammer", n, rising, power,
                                             _at_least(rising, power), index=i))
            if not _at_least(power, rising):
                report.printed_direction_failures.append(
                    InequalityCheck("pochhammer_printed", n, power, rising, False, index=i)
                )

        certificate = 1.0 / (power_of_two * lambda_mu ** n)
        magnitude = abs(table[n])
        report.add_check(InequalityCheck("decay", n, certificate, magnitude,
                                         _at_least(certificate, magnitude)))

    if report.printed_direction_failures:
        first = report.printed_direction_failures[0]
        logger.info(
            f"Printed Pochhammer direction fails {len(report.printed_direction_failures)} times; "
            f"first at n={first.n}: {first.lhs:.6g} < {first.rhs:.6g}"
        )
    if not report.proof_direction_holds:
        logger.warning(f"{len(report.failures())} audit checks failed for alpha={list(params.alpha)}")
    return report
