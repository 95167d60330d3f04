"""
Pydantic configuration models for series evaluation and disk sampling.

Both models are frozen so a single instance can be shared by worker threads.
"""

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..config import (
    DEFAULT_ANGLES,
    DEFAULT_MAX_EXCLUDED_FRACTION,
    DEFAULT_MAX_RADIUS,
    DEFAULT_MAX_TERMS,
    DEFAULT_RADII,
    DEFAULT_REFINE_FACTOR,
    DEFAULT_REFINE_LEVELS,
    DEFAULT_SLACK_FACTOR,
    DEFAULT_SMALL_Z_THRESHOLD,
    DEFAULT_TARGET_TOL,
)


class EvalConfig(BaseModel):
    """Series truncation policy"""
    model_config = ConfigDict(frozen=True)

    target_tol: float = Field(DEFAULT_TARGET_TOL, gt=0.0)
    max_terms: int = Field(DEFAULT_MAX_TERMS, ge=2)
    small_z_threshold: float = Field(DEFAULT_SMALL_Z_THRESHOLD, gt=0.0, lt=1.0)

    def tightened(self, factor: float = 10.0) -> "EvalConfig":
        """Same policy with a tolerance `factor` times smaller"""
        return self.model_copy(update={"target_tol": self.target_tol / factor})


class SamplingConfig(BaseModel):
    """Polar grid over the sub-disk |z| <= max_radius, with local refinement"""
    model_config = ConfigDict(frozen=True)

    radii: int = Field(DEFAULT_RADII, ge=1)
    angles: int = Field(DEFAULT_ANGLES, ge=1)
    max_radius: float = Field(DEFAULT_MAX_RADIUS, gt=0.0, lt=1.0)
    refine_levels: int = Field(DEFAULT_REFINE_LEVELS, ge=0)
    refine_factor: int = Field(DEFAULT_REFINE_FACTOR, ge=1)
    seed: int = Field(0, ge=0)
    slack_factor: float = Field(DEFAULT_SLACK_FACTOR, ge=0.0)
    max_excluded_fraction: float = Field(DEFAULT_MAX_EXCLUDED_FRACTION, ge=0.0, le=1.0)

    @model_validator(mode="after")
    def _check_refinement(self) -> "SamplingConfig":
        if self.refine_levels > 0 and self.refine_factor < 2:
            raise ValueError("refine_factor must be >= 2 when refine_levels > 0")
        return self

    @property
    def max_samples(self) -> int:
        """Upper bound on the number of evaluated points"""
        grid = self.radii * self.angles * (2 if self.seed else 1) + 1
        return grid + self.refine_levels * self.refine_factor ** 2
