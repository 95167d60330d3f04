"""
Hyper-Bessel Package

Contains the numerical toolkit for normalized hyper-Bessel functions:
- Certified series evaluation, partial sums and quotients
- Bound constants and parameter gates
- Grid-based adjudication of bound claims
- Command line front end (python -m hybess)
"""

__version__ = "0.1.0"

from .errors import (
    CoefficientOverflowError,
    ConvergenceError,
    DomainError,
    GateError,
    HyperBesselError,
    PoleError,
)
from .hyper_bessel import (
    HyperBesselParams,
    ModulusKind,
    QuotientKind,
    eval_f,
    eval_f_prime,
    eval_partial,
    make_params,
    quotient,
)
from .bound_formulas import BoundClaim, BoundVariant, gates
from .claim_verifier import ClaimStatus, ClaimVerifier

__all__ = [
    'HyperBesselParams', 'ModulusKind', 'QuotientKind', 'make_params',
    'eval_f', 'eval_f_prime', 'eval_partial', 'quotient',
    'BoundClaim', 'BoundVariant', 'gates',
    'ClaimStatus', 'ClaimVerifier',
    'HyperBesselError', 'DomainError', 'ConvergenceError', 'CoefficientOverflowError',
    'PoleError', 'GateError',
]
