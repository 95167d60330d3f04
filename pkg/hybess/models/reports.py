"""
Pydantic Models for Verification Reports

Serialized shapes of the JSON documents written by the command line tool.
The `report summarize` command parses documents back through these models.
"""

from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field


# =============================================================================
# COMMON MODELS
# =============================================================================

class ComplexPoint(BaseModel):
    """A point of the complex plane"""
    re: float
    im: float

    @classmethod
    def from_complex(cls, z: complex) -> "ComplexPoint":
        z = complex(z)
        return cls(re=z.real, im=z.imag)

    def to_complex(self) -> complex:
        return complex(self.re, self.im)


class RunManifest(BaseModel):
    """Echo of the inputs of one command run"""
    command: str
    inputs: Dict[str, Any]
    tool_version: str
    config_hash: str
    timestamp: Optional[str] = None


# =============================================================================
# PARAMETER AND GATE MODELS
# =============================================================================

class ParamsRecord(BaseModel):
    """Hyper-Bessel parameters with derived constants"""
    d: int
    alpha: List[float]
    lam: float = Field(..., alias="lambda")
    mu: float

    model_config = {"populate_by_name": True}


class GateRecord(BaseModel):
    """One parameter hypothesis with its raw value"""
    name: str
    value: Optional[float] = None
    threshold: float
    satisfied: bool


# =============================================================================
# CLAIM MODELS
# =============================================================================

class ClaimRecord(BaseModel):
    """Adjudication of one inequality claim"""
    kind: str
    m: int
    variant: str
    source: str
    scale: float = 1.0
    bound: Optional[float] = None
    gate_satisfied: bool = True
    extremum: Optional[float] = None
    witness: ComplexPoint
    margin: Optional[float] = None
    status: str
    samples_used: int = 0
    excluded_points: int = 0
    grid_slack: Optional[float] = None
    eval_tol: float
    tested_radius: float
    reason: Optional[str] = None


class ReportDocument(BaseModel):
    """Top-level verification report"""
    manifest: RunManifest
    params: ParamsRecord
    gates: List[GateRecord]
    claims: List[ClaimRecord]

    def status_counts(self) -> Dict[str, int]:
        counts = {"holds": 0, "falsified": 0, "inconclusive": 0}
        for claim in self.claims:
            counts[claim.status] = counts.get(claim.status, 0) + 1
        return counts
