"""
Berry Numerics
==============
Discretized Berry connection, curvature, phase and Chern number.

Conventions: links are U = det<F(k), F(k+dk)> / |det|; the Berry phase of a
closed cycle is gamma = -arg(product of links), reported in [0, 2*pi); the
curvature of a plaquette is the Berry phase of its counter-clockwise
boundary in (kx, ky), principal value in (-pi, pi]. The Chern number is the
sum of plaquette curvatures over 2*pi and is an exact integer.
"""

import logging
from dataclasses import dataclass, field

import numpy as np
from joblib import Parallel, delayed

from z2band.src.config import DEFAULT_BERRY_GRID, TOLERANCES, Tolerances, thread_count
from z2band.src.errors import ConstraintViolated, SingularLink, UnsupportedSpace
from z2band.src.models import BlochModel, occupied_frames
from z2band.src.momentum import wrap_angle

logger = logging.getLogger(__name__)

TWO_PI = 2 * np.pi


def link_variables(frames_a: np.ndarray, frames_b: np.ndarray, tol: Tolerances = TOLERANCES) -> np.ndarray:
    """
    Normalized overlap determinants between two stacks of frames.

    Raises:
        SingularLink: some |det| is below tol.link
    """
    overlaps = np.conj(np.swapaxes(frames_a, -1, -2)) @ frames_b
    dets = np.linalg.det(overlaps)
    size = np.abs(dets)
    if np.any(size < tol.link):
        raise SingularLink(
            f"frame overlap |det| = {float(np.min(size)):.3e} below {tol.link:.1e}; refine the grid"
        )
    return dets / size


def cycle_phase(frames: np.ndarray, tol: Tolerances = TOLERANCES) -> float:
    """Berry phase of a closed sequence of frames (last links back to first), in [0, 2*pi)."""
    links = link_variables(frames, np.roll(frames, -1, axis=0), tol)
    return float(np.mod(-np.angle(np.prod(links)), TWO_PI))


def berry_phase(model: BlochModel, cycle, tol: Tolerances = TOLERANCES) -> float:
    """
    Berry phase of the occupied bundle along a closed k-path.

    Parameters:
        cycle: (N, d) points; the path closes from the last back to the first

    Example:
        berry_phase(flat_model(), circle) -> 0.0
    """
    points = np.atleast_2d(np.asarray(cycle, dtype=float))
    return cycle_phase(occupied_frames(model, points, tol), tol)


# =============================================================================
# GRID SWEEP
# =============================================================================

@dataclass
class BerryData:
    """
    Result of a Berry sweep.

    Attributes:
        grid (tuple): samples per axis
        kx, ky (ndarray): axis coordinates
        links_x, links_y (ndarray | None): link variables along each axis
        curvature (ndarray | None): (nx, ny) plaquette curvatures, 2D only
        chern (int | None): Chern number, 2D only
        berry_phases (dict): cycle name -> phase in [0, 2*pi)
    """

    model_name: str
    grid: tuple
    kx: np.ndarray
    ky: np.ndarray | None = None
    links_x: np.ndarray | None = None
    links_y: np.ndarray | None = None
    curvature: np.ndarray | None = None
    chern: int | None = None
    berry_phases: dict = field(default_factory=dict)

    def curvature_rows(self) -> list:
        """(kx, ky, curvature) per plaquette, kx varying slowest."""
        if self.curvature is None:
            return []
        rows = []
        for i, kx in enumerate(self.kx):
            for j, ky in enumerate(self.ky):
                rows.append((float(kx), float(ky), float(self.curvature[i, j])))
        return rows

    def to_dict(self) -> dict:
        data = {
            "model": self.model_name,
            "grid": list(self.grid),
            "chern": self.chern,
            "berry_phases": {k: round_float(v) for k, v in sorted(self.berry_phases.items())},
        }
        if self.curvature is not None:
            data["curvature_total"] = round_float(float(np.sum(self.curvature)))
            data["curvature_max"] = round_float(float(np.max(np.abs(self.curvature))))
        return data


def round_float(value: float, digits: int = 12) -> float:
    """Round to significant digits so repeated runs serialize identically."""
    return float(f"{value:.{digits}g}")


def _axis(n: int) -> np.ndarray:
    return wrap_angle(TWO_PI * np.arange(n) / n)


def _row_frames(model: BlochModel, kx: np.ndarray, ky: np.ndarray, tol: Tolerances) -> np.ndarray:
    """Frames on the (nx, ny) grid, one worker per kx row, assembled by row index."""

    def row(i):
        points = np.column_stack([np.full(ky.size, kx[i]), ky])
        return occupied_frames(model, points, tol)

    rows = Parallel(n_jobs=thread_count(), prefer="threads")(delayed(row)(i) for i in range(kx.size))
    return np.stack(rows)


def berry_sweep(model: BlochModel, grid=DEFAULT_BERRY_GRID, tol: Tolerances = TOLERANCES) -> BerryData:
    """
    Link variables, plaquette curvature, Chern number and Berry phases of the
    occupied bundle on a periodic grid.

    1D models get the Berry phase of the full circle only.

    Raises:
        GapClosed, SingularLink

    Example:
        berry_sweep(dvec_half_model(1.0), (24, 24)).chern -> -1
    """
    sizes = tuple(int(n) for n in np.atleast_1d(grid))
    if len(sizes) != model.dim_k:
        raise UnsupportedSpace(f"grid {sizes} does not match a {model.dim_k}D model")
    if min(sizes) < 3:
        raise ValueError(f"need at least 3 samples per axis, got {sizes}")

    kx = _axis(sizes[0])
    if model.dim_k == 1:
        frames = occupied_frames(model, kx[:, None], tol)
        links = link_variables(frames, np.roll(frames, -1, axis=0), tol)
        phase = float(np.mod(-np.angle(np.prod(links)), TWO_PI))
        return BerryData(model.name, sizes, kx, links_x=links, berry_phases={"kx-loop": phase})
    if model.dim_k != 2:
        raise UnsupportedSpace("Berry sweeps cover 1D and 2D models")

    ky = _axis(sizes[1])
    frames = _row_frames(model, kx, ky, tol)
    links_x = link_variables(frames, np.roll(frames, -1, axis=0), tol)
    links_y = link_variables(frames, np.roll(frames, -1, axis=1), tol)

    # counter-clockwise loop (i,j) -> (i+1,j) -> (i+1,j+1) -> (i,j+1)
    loop = (
        links_x
        * np.roll(links_y, -1, axis=0)
        * np.conj(np.roll(links_x, -1, axis=1))
        * np.conj(links_y)
    )
    curvature = np.angle(np.conj(loop))
    total = float(np.sum(curvature))
    chern = int(round(total / TWO_PI))

    phases = {
        "kx-loop@ky=0": float(np.mod(-np.angle(np.prod(links_x[:, 0])), TWO_PI)),
        "ky-loop@kx=0": float(np.mod(-np.angle(np.prod(links_y[0, :])), TWO_PI)),
    }
    logger.info("berry sweep of %s on %dx%d grid: chern=%d", model.name, sizes[0], sizes[1], chern)
    return BerryData(model.name, sizes, kx, ky, links_x, links_y, curvature, chern, phases)


# =============================================================================
# GAUGE CHECK
# =============================================================================

@dataclass
class GaugeReport:
    """
    Berry phase before and after a gauge transformation.

    Attributes:
        original (float): phase with the model's own frames
        gauged (float): phase after multiplying by e^{-i beta}
        difference (float): |gauged - original| reduced to [0, pi]
        winding (float): beta(T) - beta(0) along the cycle
        passed (bool): difference below tol.gauge
    """

    original: float
    gauged: float
    difference: float
    winding: float
    passed: bool

    def to_dict(self) -> dict:
        return {key: (round_float(value) if isinstance(value, float) else value)
                for key, value in self.__dict__.items()}


def arc_parameter(cycle: np.ndarray) -> np.ndarray:
    """
    Cumulative arc length at each cycle point plus the closing total, using
    the shortest periodic step between neighbours.
    """
    points = np.atleast_2d(np.asarray(cycle, dtype=float))
    steps = wrap_angle(np.roll(points, -1, axis=0) - points)
    lengths = np.linalg.norm(steps, axis=1)
    return np.concatenate([[0.0], np.cumsum(lengths)])


def gauge_check(model: BlochModel, beta, cycle, tol: Tolerances = TOLERANCES) -> GaugeReport:
    """
    Recompute the Berry phase after the gauge s -> e^{-i beta} s.

    beta is evaluated on the arc-length parameter of the cycle and applied to
    one occupied state, so the phase moves by exactly beta(T) - beta(0).

    Raises:
        ConstraintViolated: beta(T) - beta(0) is not a multiple of 2*pi; the
            exception carries the shift and both phases
    """
    points = np.atleast_2d(np.asarray(cycle, dtype=float))
    frames = occupied_frames(model, points, tol)
    s = arc_parameter(points)
    values = np.asarray(beta(s), dtype=float)
    winding = float(values[-1] - values[0])

    gauged = np.array(frames, copy=True)
    gauged[:, :, 0] *= np.exp(-1j * values[:-1])[:, None]
    # the closing link meets the first frame carrying beta(T) instead of beta(0)
    closing = np.array(gauged[0], copy=True)
    closing[:, 0] *= np.exp(-1j * (values[-1] - values[0]))

    original = cycle_phase(frames, tol)
    inner = link_variables(gauged[:-1], gauged[1:], tol)
    last = link_variables(gauged[-1][None], closing[None], tol)
    gauged_phase = float(np.mod(-np.angle(np.prod(inner) * last[0]), TWO_PI))

    difference = abs(float(np.angle(np.exp(1j * (gauged_phase - original)))))
    shift = float(np.mod(winding, TWO_PI))
    if min(shift, TWO_PI - shift) > tol.gauge:
        error = ConstraintViolated(
            f"beta(T) - beta(0) = {winding:.12g} is not a multiple of 2*pi", shift
        )
        error.original = original
        error.gauged = gauged_phase
        raise error
    return GaugeReport(original, gauged_phase, difference, winding, difference < tol.gauge)
