"""
Error types raised by the hyper-Bessel library.

Each error also derives from the closest built-in exception, so callers that
already catch ValueError or ZeroDivisionError keep working.
"""

from typing import Optional


class HyperBesselError(Exception):
    """Base class for every library error"""


class DomainError(HyperBesselError, ValueError):
    """Parameter or argument outside the supported domain"""


class ConvergenceError(HyperBesselError, ArithmeticError):
    """Series tail bound did not reach the target tolerance within max_terms"""

    def __init__(self, message: str, point: Optional[complex] = None, terms: int = 0):
        super().__init__(message)
        self.point = point
        self.terms = terms


class CoefficientOverflowError(ConvergenceError, OverflowError):
    """A series coefficient left the float range"""


class PoleError(HyperBesselError, ZeroDivisionError):
    """Quotient denominator vanishes (numerically) at a disk point"""

    def __init__(self, message: str, point: Optional[complex] = None, modulus: float = 0.0):
        super().__init__(message)
        self.point = point
        self.modulus = modulus


class GateError(HyperBesselError, ValueError):
    """Parameter hypothesis of a bound is not satisfied"""

    def __init__(self, message: str, gate: str = "", value: float = float("nan")):
        super().__init__(message)
        self.gate = gate
        self.value = value
