"""
Configuration
=============
Numeric tolerances and runtime knobs shared by every module.
"""

import logging
import os
from dataclasses import dataclass

logger = logging.getLogger(__name__)

THREADS_ENV = "Z2BAND_THREADS"

DEFAULT_PATH_SAMPLES = 64
DEFAULT_BERRY_GRID = (24, 24)
DEFAULT_VALIDATION_DENSITY = 32


@dataclass(frozen=True)
class Tolerances:
    """
    Thresholds used across the library.

    Attributes:
        skew (float): skew-symmetry defect, scaled by 1 + max|entry|
        rel (float): relative tolerance for identities like pf^2 = det
        tr (float): time-reversal defect, scaled by 1 + max||H||
        gap_min (float): smallest acceptable gap above the occupied bands
        phase (float): tolerance on beta(pi) - beta(0) = k*pi
        link (float): smallest acceptable |det| of a frame overlap
        gauge (float): Berry phases agree when closer than this mod 2*pi
        pf (float): smallest acceptable |pf(w)| at a fixed point
    """

    skew: float = 1e-10
    rel: float = 1e-9
    tr: float = 1e-8
    gap_min: float = 1e-6
    phase: float = 1e-9
    link: float = 1e-6
    gauge: float = 1e-7
    pf: float = 1e-10


TOLERANCES = Tolerances()


def thread_count() -> int:
    """
    Worker threads for grid sweeps, from Z2BAND_THREADS.

    0, unset or unparsable means one thread per CPU.

    Example:
        Z2BAND_THREADS=2 -> 2
        Z2BAND_THREADS=0 -> os.cpu_count()
    """
    raw = os.environ.get(THREADS_ENV, "").strip()
    try:
        value = int(raw) if raw else 0
    except ValueError:
        logger.warning("ignoring %s=%r, not an integer", THREADS_ENV, raw)
        value = 0
    if value < 0:
        raise ValueError(f"{THREADS_ENV} must be >= 0, got {value}")
    if value == 0:
        return os.cpu_count() or 1
    return value
