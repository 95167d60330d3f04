"""
Runtime configuration

Defaults for series evaluation and disk sampling, plus environment settings.
Environment variables are loaded from a .env file when one exists (local
runs); otherwise the process environment is used as is.
"""

import os
import logging

from dotenv import load_dotenv

load_dotenv()

logger = logging.getLogger(__name__)

# Series evaluation
DEFAULT_TARGET_TOL = 1e-13
DEFAULT_MAX_TERMS = 200
DEFAULT_SMALL_Z_THRESHOLD = 0.1

# Quotient denominators below this modulus are treated as poles
POLE_THRESHOLD = 1e-12

# Disk sampling
DEFAULT_RADII = 64
DEFAULT_ANGLES = 256
DEFAULT_MAX_RADIUS = 1.0 - 1e-3
DEFAULT_REFINE_LEVELS = 2
DEFAULT_REFINE_FACTOR = 4
DEFAULT_SLACK_FACTOR = 1e-4
DEFAULT_MAX_EXCLUDED_FRACTION = 1e-3

# Partial-sum orders used by claim batteries
DEFAULT_M_VALUES = (0, 1, 2, 5)

THREADS_ENV = "HYBESS_THREADS"
LOG_LEVEL_ENV = "HYBESS_LOG_LEVEL"


def worker_count() -> int:
    """Worker cap for grid evaluation, from HYBESS_THREADS (default 1)"""
    raw = os.getenv(THREADS_ENV)
    if not raw:
        return 1
    try:
        count = int(raw)
    except ValueError:
        logger.warning(f"Ignoring invalid {THREADS_ENV}={raw!r}; using 1 worker")
        return 1
    if count < 1:
        logger.warning(f"Ignoring {THREADS_ENV}={count}; using 1 worker")
        return 1
    return count


def log_level() -> str:
    """Default log level name, from HYBESS_LOG_LEVEL"""
    return os.getenv(LOG_LEVEL_ENV, "INFO").upper()
