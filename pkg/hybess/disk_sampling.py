"""
Disk Sampling

Deterministic polar grids over the sub-disk |z| <= max_radius, optional seeded
jitter, and the local subgrids used to refine around a coarse extremum.
"""

import math
import logging
from typing import Tuple

import numpy as np

from .models.config import SamplingConfig

logger = logging.getLogger(__name__)


def ring_radii(cfg: SamplingConfig) -> np.ndarray:
    """Radii clustered toward max_radius: r_k = R (1 - (1 - k/K)^2), k = 1..K"""
    k = np.arange(1, cfg.radii + 1) / cfg.radii
    return cfg.max_radius * (1.0 - (1.0 - k) ** 2)


def ring_angles(cfg: SamplingConfig) -> np.ndarray:
    return 2.0 * math.pi * np.arange(cfg.angles) / cfg.angles


def grid_spacing(cfg: SamplingConfig) -> Tuple[float, float]:
    """Coarse (radial, angular) cell size used to size refinement windows"""
    return cfg.max_radius / cfg.radii, 2.0 * math.pi / cfg.angles


def sample_disk(cfg: SamplingConfig) -> np.ndarray:
    """
    Origin followed by the ring grid (radius-major order); with a non-zero seed
    one jittered replica of every ring point is appended. The same config and
    seed always produce the same sequence.
    """
    radii = ring_radii(cfg)
    angles = ring_angles(cfg)
    r_grid, t_grid = np.meshgrid(radii, angles, indexing="ij")
    r_flat, t_flat = r_grid.ravel(), t_grid.ravel()
    rings = r_flat * np.cos(t_flat) + 1j * (r_flat * np.sin(t_flat))
    points = [np.zeros(1, dtype=complex), rings]

    if cfg.seed:
        rng = np.random.default_rng(cfg.seed)
        dr, dt = grid_spacing(cfg)
        offsets = rng.uniform(-0.5, 0.5, size=(r_flat.size, 2))
        jr = np.clip(r_flat + offsets[:, 0] * dr, 0.0, cfg.max_radius)
        jt = t_flat + offsets[:, 1] * dt
        points.append(jr * np.cos(jt) + 1j * (jr * np.sin(jt)))

    samples = np.concatenate(points)
    logger.debug(f"Sampled {samples.size} disk points (radius <= {cfg.max_radius})")
    return samples


def refine_points(
    center: complex,
    dr: float,
    dtheta: float,
    factor: int,
    max_radius: float
) -> np.ndarray:
    """factor x factor polar subgrid spanning one cell on each side of center"""
    offsets = np.linspace(-1.0, 1.0, factor) if factor > 1 else np.zeros(1)
    r0 = abs(center)
    t0 = math.atan2(center.imag, center.real) if r0 > 0 else 0.0
    r_grid, t_grid = np.meshgrid(r0 + offsets * dr, t0 + offsets * dtheta, indexing="ij")
    r_flat = np.clip(r_grid.ravel(), 0.0, max_radius)
    t_flat = t_grid.ravel()
    return r_flat * np.cos(t_flat) + 1j * (r_flat * np.sin(t_flat))
