"""
Pfaffian Core
=============
Pfaffians of complex skew-symmetric matrices and continuous tracking of the
square-root branch of a determinant along a path.

The Householder tridiagonalization itself comes from pfapack; this module
owns validation, the sign convention pf([[0, a], [-a, 0]]) = a, and the
branch bookkeeping.
"""

import logging
from dataclasses import dataclass, field

import numpy as np
from pfapack.pfaffian import pfaffian as _householder_pfaffian

from z2band.src.config import TOLERANCES, Tolerances
from z2band.src.errors import (
    BranchAmbiguous,
    NotSkewSymmetric,
    OddDimension,
    ZeroDeterminant,
)

logger = logging.getLogger(__name__)


# =============================================================================
# PFAFFIAN
# =============================================================================

def skew_defect(m) -> float:
    """Return max |A + A^T| over all entries."""
    a = np.asarray(m)
    return float(np.max(np.abs(a + a.T))) if a.size else 0.0


def as_skew_matrix(m, tol: Tolerances = TOLERANCES) -> np.ndarray:
    """
    Validate m as a SkewMatrix and return its exact antisymmetric part.

    Raises:
        OddDimension: m is not square with even positive dimension
        NotSkewSymmetric: skew defect exceeds tol.skew * (1 + max|entry|)
    """
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise OddDimension(f"expected a square matrix, got shape {a.shape}")
    n = a.shape[0]
    if n == 0 or n % 2:
        raise OddDimension(f"Pfaffian needs an even positive dimension, got {n}")

    scale = 1.0 + float(np.max(np.abs(a)))
    defect = skew_defect(a)
    if defect > tol.skew * scale:
        raise NotSkewSymmetric(
            f"skew defect {defect:.3e} exceeds {tol.skew * scale:.3e}", defect
        )
    # (a - a^T) / 2 is exactly antisymmetric in floating point
    return (a - a.T) / 2


def pfaffian(m, tol: Tolerances = TOLERANCES) -> complex:
    """
    Pfaffian of a skew-symmetric matrix.

    Parameters:
        m: even-dimensional complex skew-symmetric matrix

    Returns:
        complex: pf(m), with pf(m)^2 = det(m)

    Example:
        pfaffian([[0, -1], [1, 0]]) -> -1
        pfaffian([[0, 1], [-1, 0]]) -> 1
    """
    a = as_skew_matrix(m, tol)
    if a.shape[0] == 2:
        return complex(a[0, 1])
    return complex(_householder_pfaffian(a, overwrite_a=True, method="H"))


# =============================================================================
# SQUARE-ROOT BRANCH TRACKING
# =============================================================================

@dataclass
class BranchTrace:
    """
    A continuous square root of det along a sampled path.

    Attributes:
        samples (list): (parameter in [0, 1], det, sqrt_det) per sample
        winding_ok (bool): False if some step changed arg(det) by pi or more
    """

    samples: list = field(default_factory=list)
    winding_ok: bool = True

    @property
    def dets(self) -> np.ndarray:
        return np.array([s[1] for s in self.samples], dtype=complex)

    @property
    def sqrts(self) -> np.ndarray:
        return np.array([s[2] for s in self.samples], dtype=complex)

    @property
    def final_sqrt(self) -> complex:
        return self.samples[-1][2]

    def to_dict(self) -> dict:
        return {
            "samples": len(self.samples),
            "winding_ok": self.winding_ok,
            "sqrt_start": [self.samples[0][2].real, self.samples[0][2].imag],
            "sqrt_end": [self.final_sqrt.real, self.final_sqrt.imag],
            "max_step": max_phase_step(self.dets),
        }


def max_phase_step(dets) -> float:
    """Largest |arg(d[i+1] / d[i])| along a sequence, 0 for fewer than two samples."""
    d = np.asarray(dets, dtype=complex)
    if d.size < 2:
        return 0.0
    return float(np.max(np.abs(np.angle(d[1:] / d[:-1]))))


def track_sqrt_det(
    dets,
    initial_branch: complex,
    strict: bool = False,
    tol: Tolerances = TOLERANCES,
) -> BranchTrace:
    """
    Continue sqrt(det) along a path of determinant samples.

    At each step the square root closer in argument to the previous one is
    kept. A step with |arg(det[i+1]/det[i])| >= pi cannot be continued
    safely; it marks the trace as not winding_ok.

    Parameters:
        dets: ordered complex samples, all nonzero
        initial_branch: square root of dets[0] to start from
        strict: raise BranchAmbiguous instead of returning winding_ok=False

    Returns:
        BranchTrace

    Example:
        track_sqrt_det([1, 1, 1], -1).sqrts -> [-1, -1, -1]
    """
    values = np.asarray(dets, dtype=complex).ravel()
    if values.size == 0:
        raise ValueError("dets must not be empty")

    small = np.abs(values) < tol.pf
    if np.any(small):
        index = int(np.argmax(small))
        raise ZeroDeterminant(f"det vanishes at sample {index}: |det| = {abs(values[index]):.3e}")

    start = complex(initial_branch)
    if abs(start * start - values[0]) > tol.rel * max(1.0, abs(values[0])):
        raise ValueError(f"initial branch {start} does not square to det {values[0]}")

    n = values.size
    params = np.linspace(0.0, 1.0, n) if n > 1 else np.zeros(1)
    samples = [(float(params[0]), complex(values[0]), start)]
    winding_ok = True
    previous = start
    for i in range(1, n):
        step = abs(float(np.angle(values[i] / values[i - 1])))
        if step >= np.pi:
            winding_ok = False
            if strict:
                raise BranchAmbiguous(
                    f"arg(det) jumps by {step:.4f} between samples {i - 1} and {i}; "
                    "refine the path"
                )
        root = np.sqrt(values[i])
        if abs(np.angle(-root / previous)) < abs(np.angle(root / previous)):
            root = -root
        samples.append((float(params[i]), complex(values[i]), complex(root)))
        previous = root

    if not winding_ok:
        logger.warning("square-root branch trace over %d samples is not winding-safe", n)
    return BranchTrace(samples=samples, winding_ok=winding_ok)
