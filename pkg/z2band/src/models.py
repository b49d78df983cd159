"""
Bloch Models
============
Time-reversal invariant Bloch Hamiltonians: the Theta operator, the model
container, deterministic occupied eigenframes, validation, and the built-in
families (phase-function circles, the d-vector insulator, flat bands).

Hamiltonians are evaluated in batches: hamiltonian(ks) takes an array of
shape (B, d) and returns (B, n, n).
"""

import logging
from dataclasses import dataclass, field

import numpy as np

from z2band.src.config import DEFAULT_VALIDATION_DENSITY, TOLERANCES, Tolerances
from z2band.src.errors import (
    GapClosed,
    HermiticityViolation,
    InvalidPhaseFunction,
    OddOccupation,
    ParseError,
    ThetaInvalid,
)
from z2band.src.momentum import MomentumSpace, fixed_points, uniform_grid

logger = logging.getLogger(__name__)

SIGMA_0 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
I_SIGMA_Y = 1j * SIGMA_Y


# =============================================================================
# TIME REVERSAL
# =============================================================================

class TimeReversalOp:
    """
    Antiunitary Theta(v) = U conj(v) with Theta^2 = -1.

    Attributes:
        unitary (ndarray): the unitary part U

    Raises:
        ThetaInvalid: U is not unitary, or U conj(U) != -I
    """

    def __init__(self, unitary, tol: Tolerances = TOLERANCES):
        u = np.asarray(unitary, dtype=complex)
        if u.ndim != 2 or u.shape[0] != u.shape[1]:
            raise ThetaInvalid(f"Theta must be square, got shape {u.shape}")
        n = u.shape[0]
        identity = np.eye(n)
        unitary_defect = float(np.max(np.abs(u.conj().T @ u - identity)))
        if unitary_defect > tol.rel * n:
            raise ThetaInvalid(f"Theta is not unitary (defect {unitary_defect:.3e})")
        square_defect = float(np.max(np.abs(u @ u.conj() + identity)))
        if square_defect > tol.rel * n:
            raise ThetaInvalid(f"Theta^2 != -1 (defect {square_defect:.3e})")
        self.unitary = u

    @property
    def dim(self) -> int:
        return self.unitary.shape[0]

    def apply(self, states: np.ndarray) -> np.ndarray:
        """Theta on column vectors: (..., n, m) -> (..., n, m)."""
        return self.unitary @ np.conj(states)

    def conjugate(self, hamiltonians: np.ndarray) -> np.ndarray:
        """Theta H Theta^-1 = U conj(H) U^dagger, batched."""
        return self.unitary @ np.conj(hamiltonians) @ self.unitary.conj().T

    def __repr__(self) -> str:
        return f"TimeReversalOp(dim={self.dim})"


# =============================================================================
# MODEL CONTAINER
# =============================================================================

class BlochModel:
    """
    A family of Bloch Hamiltonians over T^d.

    Attributes:
        dim_k (int): number of momentum components (1-3)
        n_bands (int): matrix size
        n_occupied (int): number of occupied bands
        hamiltonian (callable): (B, d) -> (B, n, n)
        theta (TimeReversalOp | None): None only for symmetry-breaking helpers
        sections (callable | None): (B, d) -> (B, n, n_occupied) explicit
            occupied frames; when present they are the gauge
        name (str): display name
        half_model (callable | None): factory for a two-band block carrying
            one state of each Kramers pair, when the model has one
    """

    def __init__(
        self,
        dim_k: int,
        n_bands: int,
        n_occupied: int,
        hamiltonian,
        theta: TimeReversalOp | None = None,
        sections=None,
        name: str = "model",
    ):
        if dim_k not in (1, 2, 3):
            raise ValueError(f"dim_k must be 1, 2 or 3, got {dim_k}")
        if not 0 < n_occupied <= n_bands:
            raise OddOccupation(f"need 0 < n_occupied <= n_bands, got {n_occupied}/{n_bands}")
        if theta is not None:
            if n_bands % 2 or n_occupied % 2:
                raise OddOccupation(
                    f"Kramers pairs need even n_bands and n_occupied, got {n_bands}/{n_occupied}"
                )
            if theta.dim != n_bands:
                raise ThetaInvalid(f"Theta is {theta.dim}x{theta.dim}, model has {n_bands} bands")
        self.dim_k = dim_k
        self.n_bands = n_bands
        self.n_occupied = n_occupied
        self.hamiltonian = hamiltonian
        self.theta = theta
        self.sections = sections
        self.name = name
        self.half_model = None

    @property
    def extended(self) -> bool:
        """More than one Kramers pair is occupied."""
        return self.n_occupied > 2

    def evaluate(self, k) -> np.ndarray:
        """H at one k (d,) -> (n, n), or at many (B, d) -> (B, n, n)."""
        ks = np.asarray(k, dtype=float)
        single = ks.ndim == 1
        batch = np.atleast_2d(ks)
        if batch.shape[-1] != self.dim_k:
            raise ValueError(f"{self.name} expects {self.dim_k}-component k, got {ks.shape}")
        h = np.asarray(self.hamiltonian(batch), dtype=complex)
        return h[0] if single else h

    def __repr__(self) -> str:
        return (
            f"BlochModel({self.name!r}, dim_k={self.dim_k}, "
            f"n_bands={self.n_bands}, n_occupied={self.n_occupied})"
        )


# =============================================================================
# EIGENFRAMES
# =============================================================================

@dataclass
class EigenFrame:
    """
    Occupied states at one k-point.

    Attributes:
        k (tuple): the k-point
        energies (ndarray): all eigenvalues, ascending
        states (ndarray): (n_bands, n_occupied) orthonormal occupied states
        gap (float): E[n_occ] - E[n_occ - 1], inf when every band is occupied
    """

    k: tuple
    energies: np.ndarray
    states: np.ndarray
    gap: float = float("inf")


def fix_phases(states: np.ndarray) -> np.ndarray:
    """
    Rotate each column so its largest-magnitude component (lowest index on
    ties) is real positive. Works on (n, m) and (B, n, m).
    """
    v = np.array(states, dtype=complex)
    idx = np.argmax(np.abs(v), axis=-2)
    pivot = np.take_along_axis(v, idx[..., None, :], axis=-2)
    return v * (np.conj(pivot) / np.abs(pivot))


def _gaps(energies: np.ndarray, n_occupied: int) -> np.ndarray:
    if n_occupied == energies.shape[-1]:
        return np.full(energies.shape[:-1], np.inf)
    return energies[..., n_occupied] - energies[..., n_occupied - 1]


def occupied_frames(model: BlochModel, ks, tol: Tolerances = TOLERANCES) -> np.ndarray:
    """
    Phase-fixed occupied frames at many k-points, (B, n, n_occ).

    Explicit sections are returned as they are. No Kramers completion here;
    callers that only need the occupied subspace use this batched form.

    Raises:
        GapClosed: at the first k where the gap is below tol.gap_min
    """
    batch = np.atleast_2d(np.asarray(ks, dtype=float))
    if model.sections is not None:
        return np.asarray(model.sections(batch), dtype=complex)
    energies, vectors = np.linalg.eigh(model.evaluate(batch))
    gaps = _gaps(energies, model.n_occupied)
    closed = gaps < tol.gap_min
    if np.any(closed):
        i = int(np.argmax(closed))
        raise GapClosed(f"gap {gaps[i]:.3e} at k={tuple(batch[i])}", batch[i], float(gaps[i]))
    return fix_phases(vectors[..., : model.n_occupied])


def _kramers_complete(states: np.ndarray, energies: np.ndarray, theta: TimeReversalOp) -> np.ndarray:
    """Replace degenerate clusters by (psi, Theta psi) pairs where Theta maps the cluster to itself."""
    scale = 1.0 + float(np.max(np.abs(energies)))
    result = states.copy()
    start = 0
    m = states.shape[1]
    while start < m:
        stop = start + 1
        while stop < m and abs(energies[stop] - energies[start]) < 1e-8 * scale:
            stop += 1
        if (stop - start) % 2 == 0:
            completed = _pair_cluster(states[:, start:stop], theta)
            if completed is not None:
                result[:, start:stop] = completed
        start = stop
    return result


def _pair_cluster(cluster: np.ndarray, theta: TimeReversalOp):
    remaining = cluster
    columns = []
    while remaining.shape[1] > 0:
        psi = fix_phases(remaining[:, :1])[:, 0]
        partner = theta.apply(psi[:, None])[:, 0]
        inside = cluster @ (cluster.conj().T @ partner)
        if np.linalg.norm(inside - partner) > 1e-6:
            return None
        columns.extend([psi, partner])
        pair = np.stack([psi, partner], axis=1)
        rest = remaining - pair @ (pair.conj().T @ remaining)
        u, s, _ = np.linalg.svd(rest, full_matrices=False)
        remaining = u[:, s > 0.5]
    return np.stack(columns, axis=1)


def occupied_frame(model: BlochModel, k, tol: Tolerances = TOLERANCES) -> EigenFrame:
    """
    Deterministic occupied eigenframe at k.

    Eigenvalues ascend; every eigenvector is phase-fixed; Kramers-degenerate
    clusters are returned as (psi, Theta psi) pairs.

    Raises:
        GapClosed: gap above the occupied bands is below tol.gap_min

    Example:
        occupied_frame(phase_function_model(PhaseFunctionModel.linear(1)), [0.0])
            -> 2-frame, energies [-1, -1]
    """
    point = np.asarray(k, dtype=float).reshape(model.dim_k)
    h = model.evaluate(point)
    energies, vectors = np.linalg.eigh(h)
    gap = float(_gaps(energies, model.n_occupied))
    if gap < tol.gap_min:
        raise GapClosed(f"gap {gap:.3e} at k={tuple(point)}", point, gap)

    if model.sections is not None:
        states = np.asarray(model.sections(point[None, :]), dtype=complex)[0]
    else:
        states = fix_phases(vectors[:, : model.n_occupied])
        if model.theta is not None:
            states = _kramers_complete(states, energies[: model.n_occupied], model.theta)
    return EigenFrame(tuple(point), energies, states, gap)


# =============================================================================
# VALIDATION
# =============================================================================

@dataclass
class ValidationReport:
    """
    Outcome of validate_model.

    Attributes:
        hermiticity_defect (float): max |H - H^dagger|
        tr_defect (float | None): max |Theta H(k) Theta^-1 - H(-k)|, None without Theta
        min_gap (float): smallest gap above the occupied bands, inf if all occupied
        kramers_defect (float | None): largest split of occupied pairs at fixed points
        tr_tolerance (float): threshold applied to tr_defect
        failures (list): human-readable reasons, empty when passed
    """

    model_name: str
    grid_density: int
    hermiticity_defect: float
    tr_defect: float | None
    min_gap: float
    kramers_defect: float | None
    tr_tolerance: float
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "model": self.model_name,
            "grid_density": self.grid_density,
            "hermiticity_defect": self.hermiticity_defect,
            "tr_defect": self.tr_defect,
            "tr_tolerance": self.tr_tolerance,
            "min_gap": None if np.isinf(self.min_gap) else self.min_gap,
            "kramers_defect": self.kramers_defect,
            "passed": self.passed,
            "failures": list(self.failures),
        }

    def lines(self) -> list:
        gap = "inf" if np.isinf(self.min_gap) else f"{self.min_gap:.6e}"
        out = [
            f"model: {self.model_name}",
            f"hermiticity defect: {self.hermiticity_defect:.3e}",
            f"time-reversal defect: "
            + ("n/a" if self.tr_defect is None else f"{self.tr_defect:.3e}"),
            f"min gap: {gap}",
            f"kramers defect: "
            + ("n/a" if self.kramers_defect is None else f"{self.kramers_defect:.3e}"),
            "status: " + ("PASS" if self.passed else "FAIL"),
        ]
        out.extend(f"  - {reason}" for reason in self.failures)
        return out


def validate_model(
    model: BlochModel,
    grid_density: int = DEFAULT_VALIDATION_DENSITY,
    tol: Tolerances = TOLERANCES,
) -> ValidationReport:
    """
    Check Hermiticity, time-reversal invariance, the gap and Kramers
    degeneracy on a uniform grid. Never raises for a failed check.

    Example:
        validate_model(phase_function_model(PhaseFunctionModel.linear(1)), 8).passed -> True
    """
    space = MomentumSpace.torus(model.dim_k)
    ks = uniform_grid(space, grid_density)
    h = model.evaluate(ks)
    scale = 1.0 + float(np.max(np.abs(h)))
    failures = []

    herm = float(np.max(np.abs(h - np.conj(np.swapaxes(h, -1, -2)))))
    if herm > tol.rel * scale:
        failures.append(f"Hamiltonian not Hermitian: defect {herm:.3e}")

    energies = np.linalg.eigvalsh((h + np.conj(np.swapaxes(h, -1, -2))) / 2)
    norm = 1.0 + float(np.max(np.abs(energies)))
    tr_tolerance = tol.tr * norm

    tr_defect = None
    kramers = None
    if model.theta is not None:
        mirrored = model.evaluate(space.involution(ks))
        tr_defect = float(np.max(np.abs(model.theta.conjugate(h) - mirrored)))
        if tr_defect > tr_tolerance:
            failures.append(f"time-reversal invariance broken: defect {tr_defect:.3e}")

        trims = np.array([p.coords for p in fixed_points(space)])
        occ = np.linalg.eigvalsh(model.evaluate(trims))[:, : model.n_occupied]
        kramers = float(np.max(np.abs(occ[:, 0::2] - occ[:, 1::2])))
        if kramers > tr_tolerance:
            failures.append(f"occupied bands not Kramers-paired at fixed points: {kramers:.3e}")

    gaps = _gaps(energies, model.n_occupied)
    min_gap = float(np.min(gaps))
    if min_gap < tol.gap_min:
        worst = ks[int(np.argmin(gaps))]
        failures.append(f"gap closes: min gap {min_gap:.3e} near k={tuple(np.round(worst, 6))}")

    report = ValidationReport(
        model.name, grid_density, herm, tr_defect, min_gap, kramers, tr_tolerance, failures
    )
    logger.info("validated %s on %d^%d grid: %s", model.name, grid_density, model.dim_k,
                "pass" if report.passed else "fail")
    return report


# =============================================================================
# PHASE-FUNCTION MODELS
# =============================================================================

class PhaseFunctionModel:
    """
    A continuous phase function beta on the circle.

    beta is given on [0, pi], either as polynomial coefficients
    (c0 + c1 x + c2 x^2 + ...) or as tabulated samples, and extended to
    [-pi, 0) by beta(-x) = 2 beta(0) - beta(x). The refined constraint
    beta(pi) - beta(0) = k*pi makes e^{i beta} single-valued on the circle.

    Raises:
        InvalidPhaseFunction: constraint violated, or a polynomial with
            even terms beyond the constant

    Example:
        PhaseFunctionModel.linear(2)(np.pi) -> 2*pi
    """

    def __init__(self, coefficients=None, samples=None, tol: Tolerances = TOLERANCES):
        if (coefficients is None) == (samples is None):
            raise InvalidPhaseFunction("give exactly one of coefficients or samples")
        self.coefficients = None
        self.samples = None
        if coefficients is not None:
            coeffs = np.atleast_1d(np.asarray(coefficients, dtype=float))
            if np.any(np.abs(coeffs[2::2]) > 0):
                raise InvalidPhaseFunction(
                    "beta - beta(0) must be odd: even powers beyond x^0 are not allowed"
                )
            self.coefficients = coeffs
        else:
            angles, values = (np.asarray(a, dtype=float) for a in samples)
            order = np.argsort(angles)
            angles, values = angles[order], values[order]
            if angles.size < 2 or angles[0] != 0.0 or angles[-1] != np.pi:
                raise InvalidPhaseFunction("tabulated beta must cover [0, pi] including both ends")
            self.samples = (angles, values)

        winding = self.raw_half_winding()
        if abs(winding - round(winding)) * np.pi > tol.phase:
            raise InvalidPhaseFunction(
                f"beta(pi) - beta(0) = {winding * np.pi:.12g} is not a multiple of pi"
            )

    @classmethod
    def linear(cls, k: float) -> "PhaseFunctionModel":
        """beta(x) = k x."""
        return cls(coefficients=[0.0, float(k)])

    def _half(self, x: np.ndarray) -> np.ndarray:
        if self.coefficients is not None:
            return np.polynomial.polynomial.polyval(x, self.coefficients)
        angles, values = self.samples
        return np.interp(x, angles, values)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        base = self._half(np.zeros(1))[0]
        return np.where(x >= 0, self._half(np.abs(x)), 2 * base - self._half(np.abs(x)))

    def raw_half_winding(self) -> float:
        ends = self._half(np.array([0.0, np.pi]))
        return float((ends[1] - ends[0]) / np.pi)

    def to_dict(self) -> dict:
        if self.coefficients is not None:
            return {"coefficients": self.coefficients.tolist()}
        return {"samples": [a.tolist() for a in self.samples]}

    def __repr__(self) -> str:
        return f"PhaseFunctionModel({self.to_dict()})"


def phase_function_model(beta: PhaseFunctionModel, name: str = "phase") -> BlochModel:
    """
    Rank-2 circle model whose sections realize the gluing of beta.

    Sections are phi = e1 and chi(k) = -e^{-i beta(k)} e2 with
    Theta = [[0, 1], [-1, 0]] conj, so that the transition function is
    w(k) = [[0, -e^{i beta(k)}], [e^{i beta(-k)}, 0]].

    Example:
        beta(x) = x -> w(0) = [[0, -1], [1, 0]], w(pi) = [[0, 1], [-1, 0]]
    """
    theta = TimeReversalOp(I_SIGMA_Y)

    def hamiltonian(ks):
        return np.broadcast_to(-np.eye(2, dtype=complex), (len(ks), 2, 2)).copy()

    def sections(ks):
        phase = beta(ks[:, 0])
        frames = np.zeros((len(ks), 2, 2), dtype=complex)
        frames[:, 0, 0] = 1.0
        frames[:, 1, 1] = -np.exp(-1j * phase)
        return frames

    model = BlochModel(1, 2, 2, hamiltonian, theta, sections, name=name)
    model.phase = beta
    return model


# =============================================================================
# TIGHT-BINDING MODELS
# =============================================================================

class TightBindingModel:
    """
    H(k) = sum_R T_R e^{i k.R} with integer displacements R.

    Attributes:
        dim (int): lattice dimension
        n_bands (int): orbital count
        n_occupied (int): occupied bands
        hoppings (dict): displacement tuple -> (n, n) complex matrix
        theta (ndarray | None): unitary part of Theta
        name (str): display name

    Raises:
        HermiticityViolation: T_{-R} missing or != T_R^dagger
        ThetaInvalid, OddOccupation: from the BlochModel checks
    """

    def __init__(self, dim, n_bands, n_occupied, hoppings, theta=None, name="tight-binding",
                 tol: Tolerances = TOLERANCES):
        self.dim = dim
        self.n_bands = n_bands
        self.n_occupied = n_occupied
        self.name = name
        self.hoppings = {}
        for displacement, matrix in hoppings.items():
            r = tuple(int(x) for x in displacement)
            if len(r) != dim:
                raise ParseError(f"displacement {r} has {len(r)} components, lattice dim is {dim}")
            t = np.asarray(matrix, dtype=complex)
            if t.shape != (n_bands, n_bands):
                raise ParseError(f"hopping {r} has shape {t.shape}, expected {(n_bands, n_bands)}")
            self.hoppings[r] = t
        self.theta = None if theta is None else np.asarray(theta, dtype=complex)
        self._check_hermitian(tol)

    def _check_hermitian(self, tol: Tolerances):
        scale = 1.0 + max((float(np.max(np.abs(t))) for t in self.hoppings.values()), default=0.0)
        for r, t in sorted(self.hoppings.items()):
            partner_key = tuple(-x for x in r)
            partner = self.hoppings.get(partner_key)
            if partner is None:
                raise HermiticityViolation(
                    f"hopping {r} has no partner at displacement {partner_key}", r
                )
            defect = float(np.max(np.abs(partner - t.conj().T)))
            if defect > tol.rel * scale:
                raise HermiticityViolation(
                    f"T{partner_key} != T{r}^dagger (defect {defect:.3e})", r
                )

    def hamiltonian(self, ks: np.ndarray) -> np.ndarray:
        keys = sorted(self.hoppings)
        displacements = np.array(keys, dtype=float).reshape(len(keys), self.dim)
        stack = np.stack([self.hoppings[r] for r in keys])
        phases = np.exp(1j * (np.asarray(ks, dtype=float) @ displacements.T))
        return np.einsum("br,rij->bij", phases, stack)

    def to_model(self) -> BlochModel:
        theta = None if self.theta is None else TimeReversalOp(self.theta)
        model = BlochModel(self.dim, self.n_bands, self.n_occupied, self.hamiltonian, theta,
                           name=self.name)
        model.tight_binding = self
        return model


# =============================================================================
# BUILT-IN FAMILIES
# =============================================================================

GAMMA_1 = np.kron(SIGMA_X, SIGMA_0)
GAMMA_2 = np.kron(SIGMA_Y, SIGMA_Z)
GAMMA_3 = np.kron(SIGMA_Z, SIGMA_0)
DVEC_THETA = np.kron(SIGMA_Z, I_SIGMA_Y)
FLAT_THETA = np.kron(SIGMA_0, I_SIGMA_Y)


def _lattice_d_vector(m: float, gx, gy, gz) -> dict:
    """Hoppings of sin kx gx + sin ky gy + (m + cos kx + cos ky) gz."""
    return {
        (0, 0): m * gz,
        (1, 0): gx / 2j + gz / 2,
        (-1, 0): -gx / 2j + gz / 2,
        (0, 1): gy / 2j + gz / 2,
        (0, -1): -gy / 2j + gz / 2,
    }


def dvec_tight_binding(m: float) -> TightBindingModel:
    """
    4-band d-vector insulator
    H = sin kx G1 + sin ky G2 + (m + cos kx + cos ky) G3 with
    G1 = sx(x)s0, G2 = sy(x)sz, G3 = sz(x)s0 and Theta = sz(x)(i sy) conj.
    The gap closes at m in {0, +-2}.
    """
    hoppings = _lattice_d_vector(m, GAMMA_1, GAMMA_2, GAMMA_3)
    return TightBindingModel(2, 4, 2, hoppings, DVEC_THETA, name=f"dvec:m={m:g}")


def dvec_model(m: float) -> BlochModel:
    model = dvec_tight_binding(m).to_model()
    model.half_model = lambda: dvec_half_model(m)
    return model


def dvec_half_model(m: float) -> BlochModel:
    """The spin-up block d = (sin kx, sin ky, m + cos kx + cos ky); breaks Theta."""
    hoppings = _lattice_d_vector(m, SIGMA_X, SIGMA_Y, SIGMA_Z)
    return TightBindingModel(2, 2, 1, hoppings, None, name=f"dvec-half:m={m:g}").to_model()


def flat_tight_binding(dim: int = 1) -> TightBindingModel:
    """Constant H = diag(-1, -1, 1, 1) with Theta = s0(x)(i sy) conj."""
    onsite = np.diag([-1.0, -1.0, 1.0, 1.0]).astype(complex)
    return TightBindingModel(dim, 4, 2, {(0,) * dim: onsite}, FLAT_THETA, name="flat")


def flat_model(dim: int = 1) -> BlochModel:
    return flat_tight_binding(dim).to_model()


def _parse_params(text: str) -> dict:
    params = {}
    if not text:
        return params
    for item in text.split(","):
        key, sep, value = item.partition("=")
        if not sep or not key.strip():
            raise ParseError(f"builtin parameter {item!r} is not key=value")
        params[key.strip()] = value.strip()
    return params


def _number(params: dict, key: str, kind, default=None):
    if key not in params:
        if default is None:
            raise ParseError(f"builtin parameter {key!r} is required")
        return default
    try:
        return kind(params[key])
    except ValueError as exc:
        raise ParseError(f"builtin parameter {key}={params[key]!r}: {exc}") from exc


def _phase_builtin(k: int) -> BlochModel:
    return phase_function_model(PhaseFunctionModel.linear(k), name=f"phase:k={k}")


BUILTINS = {
    "phase": lambda p, dim: _phase_builtin(_number(p, "k", int)),
    "dvec": lambda p, dim: dvec_model(_number(p, "m", float)),
    "dvec-half": lambda p, dim: dvec_half_model(_number(p, "m", float)),
    # constant in k: dimension follows the caller unless dim= is given
    "flat": lambda p, dim: flat_model(_number(p, "dim", int, dim or 1)),
}


def builtin_model(spec: str, dim: int | None = None) -> BlochModel:
    """
    Resolve a builtin name such as 'phase:k=1', 'dvec:m=1' or 'flat'.

    Parameters:
        spec (str): builtin name with optional key=value parameters
        dim (int | None): momentum dimension for builtins that take any,
            used when the name carries no dim= parameter

    Raises:
        ParseError: unknown name or malformed parameters
    """
    name, _, params = spec.strip().partition(":")
    factory = BUILTINS.get(name)
    if factory is None:
        raise ParseError(f"unknown builtin {name!r}; choose from {', '.join(sorted(BUILTINS))}")
    model = factory(_parse_params(params), dim)
    logger.debug("resolved builtin %s -> %r", spec, model)
    return model
