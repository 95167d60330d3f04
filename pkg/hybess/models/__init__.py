"""
Pydantic models for configuration and report documents
"""

from .config import EvalConfig, SamplingConfig
from .reports import ClaimRecord, ComplexPoint, GateRecord, ParamsRecord, ReportDocument, RunManifest

__all__ = [
    'EvalConfig', 'SamplingConfig',
    'ClaimRecord', 'ComplexPoint', 'GateRecord', 'ParamsRecord', 'ReportDocument', 'RunManifest',
]
