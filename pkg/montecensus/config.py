"""Run configuration for census computations.

Settings come from the environment and are read on every call, so worker
processes and tests see the same values as the command line that set them.
"""

import os

# Significant digits every reported real must carry.
REPORT_DIGITS = 30

DEFAULT_PRECISION = 50

# Log-domain comparisons closer than this are not decided numerically.
COMPARISON_MARGIN = "1e-20"

# 11 entries is 39,916,800 permutations, minutes on a desktop.
DEFAULT_ENUMERATE_CAP = 11

PRECISION_ENV = "MONTECENSUS_DPS"
WORKERS_ENV = "MONTECENSUS_WORKERS"


def _positive_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"{name} must be positive, got {value}")
    return value


def precision() -> int:
    """Working precision in decimal digits"""
    digits = _positive_int(PRECISION_ENV, DEFAULT_PRECISION)
    if digits < REPORT_DIGITS:
        raise ValueError(
            f"{PRECISION_ENV}={digits} is below the {REPORT_DIGITS} reported digits"
        )
    return digits


def workers() -> int:
    return _positive_int(WORKERS_ENV, 1)
