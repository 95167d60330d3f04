"""
Report Writer

Builds the pydantic report documents from verification results and writes
them as JSON or CSV. Output is deterministic: keys keep model order, floats
use 17 significant digits, NaN becomes null (JSON) or an empty
cell (CSV), and the timestamp is omitted unless requested.
"""

import io
import csv
import json
import math
import hashlib
import logging
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, Union

from . import __version__
from .bound_formulas import GateReport
from .claim_verifier import VerificationReport
from .hyper_bessel import HyperBesselParams
from .models.reports import (
    ClaimRecord,
    ComplexPoint,
    GateRecord,
    ParamsRecord,
    ReportDocument,
    RunManifest,
)

logger = logging.getLogger(__name__)


def _finite(value: Optional[float]) -> Optional[float]:
    if value is None:
        return None
    value = float(value)
    return value if math.isfinite(value) else None


def format_float(value: Optional[float]) -> str:
    """17 significant digits; integral values keep a trailing .0"""
    value = _finite(value)
    if value is None:
        return ""
    text = format(value, ".17g")
    if not any(c in text for c in ".e"):
        text += ".0"
    return text


def _sanitize(value: Any) -> Any:
    if isinstance(value, float):
        return _finite(value)
    if isinstance(value, dict):
        return {k: _sanitize(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_sanitize(v) for v in value]
    return value


def config_hash(inputs: Dict[str, Any]) -> str:
    """sha256 of the canonical JSON of the run inputs"""
    canonical = json.dumps(_sanitize(inputs), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def build_manifest(command: str, inputs: Dict[str, Any], timestamp: bool = False) -> RunManifest:
    return RunManifest(
        command=command,
        inputs=_sanitize(inputs),
        tool_version=__version__,
        config_hash=config_hash(inputs),
        timestamp=datetime.now(timezone.utc).isoformat() if timestamp else None,
    )


def params_record(params: HyperBesselParams) -> ParamsRecord:
    return ParamsRecord(d=params.d, alpha=list(params.alpha), lam=params.lam, mu=params.mu)


def gate_records(report: GateReport) -> List[GateRecord]:
    return [
        GateRecord(name=g.name, value=_finite(g.value), threshold=g.threshold, satisfied=g.satisfied)
        for g in report.as_list()
    ]


def claim_record(report: VerificationReport) -> ClaimRecord:
    claim = report.claim
    return ClaimRecord(
        kind=claim.kind.value,
        m=claim.m,
        variant=claim.variant.value,
        source=claim.source.value,
        scale=claim.scale,
        bound=_finite(claim.bound),
        gate_satisfied=claim.gate.satisfied,
        extremum=_finite(report.extremum),
        witness=ComplexPoint.from_complex(report.witness),
        margin=_finite(report.margin),
        status=report.status.value,
        samples_used=report.samples_used,
        excluded_points=report.excluded_points,
        grid_slack=_finite(report.grid_slack),
        eval_tol=report.eval_tol,
        tested_radius=report.tested_radius,
        reason=report.reason,
    )


def build_report(
    manifest: RunManifest,
    params: HyperBesselParams,
    gate_report: GateReport,
    reports: Iterable[VerificationReport]
) -> ReportDocument:
    return ReportDocument(
        manifest=manifest,
        params=params_record(params),
        gates=gate_records(gate_report),
        claims=[claim_record(r) for r in reports],
    )


# =============================================================================
# JSON
# =============================================================================

def _encode(value: Any, level: int = 0) -> str:
    """json.dumps(indent=2) layout with floats written by format_float"""
    if isinstance(value, float):
        return format_float(value)
    if value is None or isinstance(value, (bool, int, str)):
        return json.dumps(value)
    inner, outer = "  " * (level + 1), "  " * level
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{inner}{json.dumps(str(k))}: {_encode(v, level + 1)}" for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + outer + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        items = [f"{inner}{_encode(v, level + 1)}" for v in value]
        return "[\n" + ",\n".join(items) + "\n" + outer + "]"
    raise TypeError(f"Object of type {type(value).__name__} is not JSON serializable")


def dumps(payload: Any) -> str:
    """Deterministic JSON text for a model or plain data"""
    if hasattr(payload, "model_dump"):
        payload = payload.model_dump(mode="python", by_alias=True)
    return _encode(_sanitize(payload)) + "\n"


def write_json(payload: Any, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(payload), encoding="utf-8")
    logger.info(f"Wrote {path}")
    return path


def load_report(path: Union[str, Path]) -> ReportDocument:
    return ReportDocument.model_validate_json(Path(path).read_text(encoding="utf-8"))


def summarize(document: ReportDocument) -> Dict[str, Any]:
    """Verdict summary used by `report summarize`; identical for a document and its re-parse"""
    counts = document.status_counts()
    falsified = [
        {"kind": c.kind, "m": c.m, "variant": c.variant, "witness": [c.witness.re, c.witness.im]}
        for c in document.claims if c.status == "falsified"
    ]
    return {
        "command": document.manifest.command,
        "config_hash": document.manifest.config_hash,
        "params": {"d": document.params.d, "alpha": document.params.alpha},
        "claims": len(document.claims),
        "counts": counts,
        "falsified": falsified,
    }


# =============================================================================
# CSV
# =============================================================================

def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format_float(value)
    return str(value)


def csv_text(rows: Iterable[Dict[str, Any]], columns: Sequence[str]) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=list(columns), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({c: _cell(row.get(c)) for c in columns})
    return buffer.getvalue()


def write_csv(rows: Iterable[Dict[str, Any]], columns: Sequence[str], path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(csv_text(rows, columns), encoding="utf-8")
    logger.info(f"Wrote {path}")
    return path
