"""
Invariants
==========
Transition (sewing) matrices, the Kane-Mele invariant, Stiefel-Whitney
classes of the Pfaffian line bundle, and the weak/strong decomposition.

The Kane-Mele product needs a gauge that is continuous along the paths
joining the fixed points. Models with explicit sections use them. For
Hamiltonian models the gauge is built by parallel transport along a tree of
fixed points, one axis at a time; every circle through a fixed point is
closed with the matrix logarithm of its holonomy, and the trace of that
logarithm is continued from the parent circle so that parallel circles carry
the same winding.
"""

import logging
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from z2band.src.berry import berry_sweep, round_float
from z2band.src.config import DEFAULT_PATH_SAMPLES, TOLERANCES, Tolerances
from z2band.src.errors import (
    BranchAmbiguous,
    NotHalfIntegral,
    PairingMismatch,
    ThetaInvalid,
    UnsupportedSpace,
    ZeroPfaffian,
)
from z2band.src.models import BlochModel, occupied_frame, occupied_frames
from z2band.src.momentum import (
    AXIS_NAMES,
    FixedPoint,
    MomentumSpace,
    TrimPairing,
    default_pairing,
    fixed_point_from_bits,
    fixed_points,
    wrap_angle,
)
from z2band.src.pfaffian import BranchTrace, pfaffian, skew_defect, track_sqrt_det

logger = logging.getLogger(__name__)


# =============================================================================
# DATA TYPES
# =============================================================================

@dataclass
class TrimRecord:
    """w, pf(w), the continued sqrt(det w) and the resulting sign at one fixed point."""

    point: FixedPoint
    w: np.ndarray
    pf: complex
    sqrt_det: complex
    sign: int
    skew_defect: float


@dataclass
class TransitionData:
    """
    Sewing matrices at every fixed point plus the square-root traces along
    the tree paths that connect them.

    Attributes:
        space (MomentumSpace): ambient torus
        records (list): TrimRecord per fixed point, in fixed_points order
        traces (dict): "A->B" -> BranchTrace of det w along that path
    """

    space: MomentumSpace
    records: list = field(default_factory=list)
    traces: dict = field(default_factory=dict)

    @property
    def winding_ok(self) -> bool:
        return all(t.winding_ok for t in self.traces.values())


@dataclass
class PfaffianBundle:
    """
    The Z2-reduced Pfaffian line bundle: one sign per fixed point.

    Attributes:
        space (MomentumSpace): base space
        signs (dict): fixed point index -> +1 or -1
        structure_group (str): always "Z2"
    """

    space: MomentumSpace
    signs: dict
    structure_group: str = "Z2"

    def sign(self, point: FixedPoint) -> int:
        return self.signs[point.index]

    @property
    def nu(self) -> int:
        return int(np.prod([self.signs[p.index] for p in fixed_points(self.space)]))

    def sign_list(self) -> list:
        return [self.signs[p.index] for p in fixed_points(self.space)]


@dataclass
class SWClass:
    """
    A Stiefel-Whitney class value.

    Attributes:
        degree (int): i in w_i
        value (int): 0 or 1
        carrier (str): the (sub)space whose H^i it lives in
    """

    degree: int
    value: int
    carrier: str

    def to_dict(self) -> dict:
        return {"degree": self.degree, "carrier": self.carrier, "value": self.value}

    @classmethod
    def from_dict(cls, data: dict) -> "SWClass":
        return cls(int(data["degree"]), int(data["value"]), data["carrier"])


@dataclass
class TrimSummary:
    """Serializable per-fixed-point row of an InvariantReport."""

    label: str
    coords: list
    sign: int
    pf: complex
    sqrt_det: complex

    @classmethod
    def from_record(cls, record: TrimRecord) -> "TrimSummary":
        return cls(
            record.point.label,
            [round_float(c) for c in record.point.coords],
            record.sign,
            complex(round_float(record.pf.real), round_float(record.pf.imag)),
            complex(round_float(record.sqrt_det.real), round_float(record.sqrt_det.imag)),
        )

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "coords": list(self.coords),
            "sign": self.sign,
            "pf_re": self.pf.real,
            "pf_im": self.pf.imag,
            "sqrt_det_re": self.sqrt_det.real,
            "sqrt_det_im": self.sqrt_det.imag,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "TrimSummary":
        return cls(
            data["label"],
            [float(c) for c in data["coords"]],
            int(data["sign"]),
            complex(data["pf_re"], data["pf_im"]),
            complex(data["sqrt_det_re"], data["sqrt_det_im"]),
        )


@dataclass
class InvariantReport:
    """
    Everything computed about one model on one momentum space.

    Attributes:
        model (str): model name
        space (str): space label, e.g. "t2"
        nu (int): +1 or -1, equal to (-1)^strong
        strong (int): strong index in Z2
        weak (list): {"axis", "value"} per axis, 3D only
        trims (list): TrimSummary per fixed point
        sw (list): SWClass values for the chosen pairing
        chern_total (int | None): total occupied Chern number, when computed
        extended (bool): more than one Kramers pair occupied
        cobordism (list): per-pair surface summaries
        tqft (list): partition rows {dim, carrier, z, nu}
        diagnostics (dict): pairing, sample counts, branch traces
    """

    model: str
    space: str
    nu: int
    strong: int
    weak: list = field(default_factory=list)
    trims: list = field(default_factory=list)
    sw: list = field(default_factory=list)
    chern_total: int | None = None
    extended: bool = False
    cobordism: list = field(default_factory=list)
    tqft: list = field(default_factory=list)
    diagnostics: dict = field(default_factory=dict)
    transition: TransitionData | None = field(default=None, compare=False, repr=False)
    bundle: PfaffianBundle | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.nu != (-1) ** self.strong:
            raise ValueError(f"nu={self.nu} inconsistent with strong index {self.strong}")

    def to_dict(self) -> dict:
        return {
            "model": self.model,
            "space": self.space,
            "nu": self.nu,
            "strong": self.strong,
            "weak": [dict(w) for w in self.weak],
            "trims": [t.to_dict() for t in self.trims],
            "sw": [s.to_dict() for s in self.sw],
            "chern_total": self.chern_total,
            "extended": self.extended,
            "cobordism": [dict(c) for c in self.cobordism],
            "tqft": [dict(row) for row in self.tqft],
            "diagnostics": self.diagnostics,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "InvariantReport":
        return cls(
            model=data["model"],
            space=data["space"],
            nu=int(data["nu"]),
            strong=int(data["strong"]),
            weak=[dict(w) for w in data.get("weak", [])],
            trims=[TrimSummary.from_dict(t) for t in data.get("trims", [])],
            sw=[SWClass.from_dict(s) for s in data.get("sw", [])],
            chern_total=data.get("chern_total"),
            extended=bool(data.get("extended", False)),
            cobordism=[dict(c) for c in data.get("cobordism", [])],
            tqft=[dict(row) for row in data.get("tqft", [])],
            diagnostics=data.get("diagnostics", {}),
        )


# =============================================================================
# SEWING MATRIX
# =============================================================================

def _require_theta(model: BlochModel):
    if model.theta is None:
        raise ThetaInvalid(f"{model.name} has no time-reversal operator")
    return model.theta


def transition_matrix(theta, frame_at_minus_k: np.ndarray, frame_at_k: np.ndarray) -> np.ndarray:
    """w = F(-k)^dagger U conj(F(k)), batched over leading axes."""
    return np.conj(np.swapaxes(frame_at_minus_k, -1, -2)) @ theta.apply(frame_at_k)


def sewing_matrix(model: BlochModel, k, tol: Tolerances = TOLERANCES) -> np.ndarray:
    """
    w_mn(k) = <state_m(-k), Theta state_n(k)> over the occupied frames.

    Raises:
        GapClosed: at k or -k

    Example:
        phase model beta(x) = x, k = 0 -> [[0, -1], [1, 0]]
    """
    theta = _require_theta(model)
    point = np.asarray(k, dtype=float).reshape(model.dim_k)
    mirror = MomentumSpace.torus(model.dim_k).involution(point)
    here = occupied_frame(model, point, tol).states
    there = occupied_frame(model, mirror, tol).states
    return transition_matrix(theta, there, here)


def check_sewing_identity(model: BlochModel, samples: int = 64, seed: int = 0,
                          tol: Tolerances = TOLERANCES) -> float:
    """Largest |w(-k)^T + w(k)| over random k."""
    rng = np.random.default_rng(seed)
    space = MomentumSpace.torus(model.dim_k)
    worst = 0.0
    for k in wrap_angle(rng.uniform(-np.pi, np.pi, size=(samples, model.dim_k))):
        w = sewing_matrix(model, k, tol)
        w_mirror = sewing_matrix(model, space.involution(k), tol)
        worst = max(worst, float(np.max(np.abs(w_mirror.T + w))))
    return worst


# =============================================================================
# CONTINUOUS GAUGE
# =============================================================================

def _unitary_part(a: np.ndarray) -> np.ndarray:
    """Unitary polar factor, batched through the SVD."""
    u, _, vh = np.linalg.svd(a)
    return u @ vh


def _transport(model: BlochModel, points: np.ndarray, start: np.ndarray, tol: Tolerances) -> np.ndarray:
    """
    Parallel-transport start frames along paths.

    Parameters:
        points: (J, S, d) paths; points[:, 0] carry the start frames
        start: (J, n, m) frames at points[:, 0]

    Returns:
        (J, S, n, m) transported frames
    """
    n_paths, n_steps, dim = points.shape
    eigen = occupied_frames(model, points.reshape(-1, dim), tol)
    eigen = eigen.reshape(n_paths, n_steps, *eigen.shape[1:])
    frames = np.empty_like(eigen)
    frames[:, 0] = start
    for j in range(1, n_steps):
        q = eigen[:, j]
        overlap = np.conj(np.swapaxes(q, -1, -2)) @ frames[:, j - 1]
        frames[:, j] = q @ _unitary_part(overlap)
    return frames


@dataclass
class _Circle:
    """Upper and lower halves of a closed frame around one circle."""

    plus: np.ndarray      # frames at base + t e_a, t in [0, pi]
    minus: np.ndarray     # frames at base - t e_a
    lift: float           # trace of the holonomy logarithm (imaginary part)


def _circle_paths(bases: np.ndarray, axis: int, t: np.ndarray):
    step = np.zeros(bases.shape[-1])
    step[axis] = 1.0
    plus = wrap_angle(bases[:, None, :] + t[None, :, None] * step)
    minus = wrap_angle(bases[:, None, :] - t[None, :, None] * step)
    return plus, minus


def _holonomies(model, bases, frames, axis, t, tol):
    """Upper/lower transports and the overlap T_-(pi)^dagger T_+(pi), per base point."""
    plus_pts, minus_pts = _circle_paths(bases, axis, t)
    plus = _transport(model, plus_pts, frames, tol)
    minus = _transport(model, minus_pts, frames, tol)
    overlap = np.conj(np.swapaxes(minus[:, -1], -1, -2)) @ plus[:, -1]
    return plus, minus, overlap


def _close_circle(plus: np.ndarray, minus: np.ndarray, overlap: np.ndarray, lift: float | None,
                  t: np.ndarray) -> _Circle:
    """
    Bend the lower half so it ends on the upper half: L(t) = T_-(t) exp(t X / pi)
    with exp(X) the unitary part of overlap and Im tr X = lift (principal
    value when None).
    """
    unitary = scipy.linalg.polar(overlap)[0]
    diagonal, schur_vectors = scipy.linalg.schur(unitary, output="complex")
    phases = np.angle(np.diag(diagonal))
    target = float(np.angle(np.linalg.det(unitary))) if lift is None else lift
    shift = round((target - float(np.sum(phases))) / (2 * np.pi))
    phases[0] += 2 * np.pi * shift
    rotations = np.exp(1j * np.outer(t / np.pi, phases))          # (S, m)
    bend = (schur_vectors[None] * rotations[:, None, :]) @ np.conj(schur_vectors.T)[None]
    lower = minus @ bend
    lower[-1] = plus[-1]
    return _Circle(plus, lower, float(np.sum(phases)))


class _GaugeTree:
    """
    Frames along a spanning tree of fixed points: the anchor (0,...,0), then
    for each axis every fixed point already reached is joined to its
    neighbour at +pi along that axis.
    """

    def __init__(self, model: BlochModel, space: MomentumSpace, samples: int, tol: Tolerances):
        self.model = model
        self.space = space
        self.tol = tol
        self.t = np.linspace(0.0, np.pi, samples)
        self.frames = {}        # bits -> frame at that fixed point
        self.edges = []         # (parent bits, child bits, axis, plus frames, minus frames)
        self._edge_frames = {}  # (axis, start bits) -> upper-half frames along that edge
        self._lifts = {}        # (axis, base bits) -> holonomy lift of the circle
        self._parent = {}       # bits -> (parent bits, axis)

    def build(self) -> "_GaugeTree":
        anchor = (0,) * self.space.dim
        point = np.zeros(self.space.dim)
        if self.model.sections is not None:
            self.frames[anchor] = np.asarray(self.model.sections(point[None]), dtype=complex)[0]
        else:
            self.frames[anchor] = occupied_frame(self.model, point, self.tol).states
        order = [anchor]
        for axis in range(self.space.dim):
            for bits in list(order):
                child = tuple(1 if a == axis else b for a, b in enumerate(bits))
                plus, minus = self._edge(bits, axis)
                self.frames[child] = plus[-1]
                self.edges.append((bits, child, axis, plus, minus))
                self._edge_frames[(axis, bits)] = plus
                self._parent[child] = (bits, axis)
                order.append(child)
        return self

    def _edge(self, bits: tuple, axis: int):
        base = np.array(bits, dtype=float) * np.pi
        if self.model.sections is not None:
            plus_pts, minus_pts = _circle_paths(base[None], axis, self.t)
            plus = np.asarray(self.model.sections(plus_pts[0]), dtype=complex)
            minus = np.asarray(self.model.sections(minus_pts[0]), dtype=complex)
            return plus, minus

        if bits in self._parent:
            parent, parent_axis = self._parent[bits]
            lift, plus, minus, overlap = self._continued(parent, parent_axis, axis)
        else:
            plus, minus, overlap = _holonomies(
                self.model, base[None], self.frames[bits][None], axis, self.t, self.tol
            )
            lift, plus, minus, overlap = None, plus[0], minus[0], overlap[0]
        circle = _close_circle(plus, minus, overlap, lift, self.t)
        self._lifts[(axis, bits)] = circle.lift
        logger.debug("circle along %s through %s: lift %.6f", AXIS_NAMES[axis], bits, circle.lift)
        return circle.plus, circle.minus

    def _continued(self, parent: tuple, parent_axis: int, axis: int):
        """
        Sweep the axis-circle from the parent along the parent edge, follow
        arg det of its holonomy, and return the parent's lift continued to
        the far end together with the far circle's halves.
        """
        start = np.array(parent, dtype=float) * np.pi
        edge_points, _ = _circle_paths(start[None], parent_axis, self.t)
        plus, minus, overlap = _holonomies(
            self.model, edge_points[0], self._edge_frames[(parent_axis, parent)],
            axis, self.t, self.tol,
        )
        steps = np.angle(np.exp(1j * np.diff(np.angle(np.linalg.det(overlap)))))
        if steps.size and np.max(np.abs(steps)) >= np.pi / 2:
            logger.warning("holonomy phase moves by %.3f per step along the edge from %s",
                           float(np.max(np.abs(steps))), parent)
        lift = self._lifts[(axis, parent)] + float(np.sum(steps))
        return lift, plus[-1], minus[-1], overlap[-1]


# =============================================================================
# KANE-MELE INVARIANT
# =============================================================================

def compute_transition_data(
    model: BlochModel,
    space: MomentumSpace,
    path_samples: int = DEFAULT_PATH_SAMPLES,
    strict: bool = True,
    tol: Tolerances = TOLERANCES,
) -> TransitionData:
    """
    Sewing matrices, Pfaffians and continued sqrt(det) at every fixed point.

    Raises:
        GapClosed, BranchAmbiguous (strict), ZeroPfaffian
    """
    theta = _require_theta(model)
    if not space.is_torus:
        raise UnsupportedSpace(f"compute on the torus; {space} enters only through its poles")
    if space.dim != model.dim_k:
        raise PairingMismatch(f"{model.name} is {model.dim_k}D but the space is {space}")
    if path_samples < 2:
        raise ValueError(f"path_samples must be >= 2, got {path_samples}")

    tree = _GaugeTree(model, space, path_samples, tol).build()
    data = TransitionData(space)
    anchor = (0,) * space.dim
    w_anchor = transition_matrix(theta, tree.frames[anchor], tree.frames[anchor])
    roots = {anchor: complex(np.sqrt(complex(np.linalg.det(w_anchor))))}

    for parent, child, axis, plus, minus in tree.edges:
        w_path = transition_matrix(theta, minus, plus)
        trace = track_sqrt_det(np.linalg.det(w_path), roots[parent], strict=False, tol=tol)
        name = (f"{fixed_point_from_bits(space, parent).label}->"
                f"{fixed_point_from_bits(space, child).label}")
        if strict and not trace.winding_ok:
            raise BranchAmbiguous(f"det w jumps by pi or more along {name}; "
                                  f"raise path_samples above {path_samples}")
        data.traces[name] = trace
        roots[child] = trace.final_sqrt

    for point in fixed_points(space):
        frame = tree.frames[point.bits]
        w = transition_matrix(theta, frame, frame)
        pf = pfaffian(w, tol)
        if abs(pf) < tol.pf:
            raise ZeroPfaffian(f"|pf(w)| = {abs(pf):.3e} at {point}")
        root = roots[point.bits]
        ratio = pf / root
        sign = 1 if ratio.real > 0 else -1
        data.records.append(TrimRecord(point, w, pf, root, sign, skew_defect(w)))
        logger.debug("%s: pf=%s sqrt=%s sign=%+d", point, pf, root, sign)
    return data


def kane_mele(
    model: BlochModel,
    space: MomentumSpace,
    path_samples: int = DEFAULT_PATH_SAMPLES,
    pairing: TrimPairing | None = None,
    chern_grid=None,
    strict: bool = True,
    tol: Tolerances = TOLERANCES,
) -> InvariantReport:
    """
    Kane-Mele invariant nu = prod sgn(pf w / sqrt det w) over the fixed
    points, with weak indices on T^3 and the Stiefel-Whitney classes of the
    chosen pairing.

    Raises:
        GapClosed, BranchAmbiguous, ZeroPfaffian

    Example:
        kane_mele(phase_function_model(PhaseFunctionModel.linear(1)), T1).nu -> -1
    """
    if model.extended:
        logger.warning("%s occupies %d bands; reporting the extended multi-band product",
                       model.name, model.n_occupied)
    data = compute_transition_data(model, space, path_samples, strict, tol)
    bundle = PfaffianBundle(space, {r.point.index: r.sign for r in data.records})
    pairing = pairing or default_pairing(space)

    chern_total = None
    if chern_grid is not None and space.dim == 2:
        chern_total = berry_sweep(model, chern_grid, tol).chern

    report = report_from_bundle(bundle, pairing, model=model.name)
    report.trims = [TrimSummary.from_record(r) for r in data.records]
    report.chern_total = chern_total
    report.extended = model.extended
    report.transition = data
    report.diagnostics.update({
        "path_samples": path_samples,
        "winding_ok": data.winding_ok,
        "max_skew_defect": round_float(max(r.skew_defect for r in data.records)),
        "traces": {name: _trace_summary(t) for name, t in sorted(data.traces.items())},
    })
    if chern_grid is not None:
        report.diagnostics["chern_grid"] = [int(n) for n in np.atleast_1d(chern_grid)]
    logger.info("kane-mele for %s on %s: nu=%+d", model.name, space, report.nu)
    return report


def _trace_summary(trace: BranchTrace) -> dict:
    summary = trace.to_dict()
    for key in ("sqrt_start", "sqrt_end"):
        summary[key] = [round_float(v) for v in summary[key]]
    summary["max_step"] = round_float(summary["max_step"])
    return summary


def report_from_bundle(bundle: PfaffianBundle, pairing: TrimPairing | None = None,
                       model: str = "signs") -> InvariantReport:
    """InvariantReport of a PfaffianBundle, without model-level data."""
    space = bundle.space
    nu = bundle.nu
    report = InvariantReport(model=model, space=space.label, nu=nu, strong=(1 - nu) // 2)
    if space.is_torus and space.dim == 3:
        report.weak = weak_indices(bundle)
    if space.is_torus:
        pairing = pairing or default_pairing(space)
    report.sw = sw_classes(bundle, pairing)
    report.diagnostics["pairing"] = pairing.to_dict() if pairing is not None else None
    report.bundle = bundle
    return report


# =============================================================================
# HALF WINDING
# =============================================================================

def half_winding(beta, tol: Tolerances = TOLERANCES) -> int:
    """
    n(beta) = (beta(pi) - beta(0)) / pi.

    Raises:
        NotHalfIntegral: the ratio is not an integer within tol.phase

    Example:
        half_winding(PhaseFunctionModel.linear(5)) -> 5
    """
    ends = np.asarray(beta(np.array([0.0, np.pi])), dtype=float)
    ratio = float((ends[1] - ends[0]) / np.pi)
    nearest = round(ratio)
    if abs(ratio - nearest) * np.pi > tol.phase:
        raise NotHalfIntegral(f"(beta(pi) - beta(0)) / pi = {ratio:.12g}")
    return int(nearest)


# =============================================================================
# STIEFEL-WHITNEY CLASSES
# =============================================================================

def bundle_from_signs(space: MomentumSpace, signs) -> PfaffianBundle:
    """
    PfaffianBundle from one sign per fixed point, in fixed_points order.

    Raises:
        PairingMismatch: wrong number of signs
    """
    values = [int(s) for s in signs]
    points = fixed_points(space)
    if len(values) != len(points):
        raise PairingMismatch(f"{space} has {len(points)} fixed points, got {len(values)} signs")
    if any(v not in (-1, 1) for v in values):
        raise ValueError(f"signs must be +1 or -1, got {values}")
    return PfaffianBundle(space, {p.index: v for p, v in zip(points, values)})


def check_pairing(bundle: PfaffianBundle, pairing: TrimPairing):
    """Raise PairingMismatch unless the pairing and every sign live on the bundle's space."""
    if pairing.space != bundle.space:
        raise PairingMismatch(f"pairing on {pairing.space} used with a bundle on {bundle.space}")
    missing = [p for p in fixed_points(bundle.space) if p.index not in bundle.signs]
    if missing:
        raise PairingMismatch(f"bundle has no sign at {', '.join(str(p) for p in missing)}")


def pair_products(bundle: PfaffianBundle, pairing: TrimPairing) -> list:
    """h(a) h(b) for every pair; their product is nu."""
    check_pairing(bundle, pairing)
    return [bundle.sign(a) * bundle.sign(b) for a, b in pairing.pairs]


def sw_classes(bundle: PfaffianBundle, pairing: TrimPairing | None = None) -> list:
    """
    Stiefel-Whitney classes of the Pfaffian bundle.

    Per pair: w1 of the circle through it (1 iff the two signs multiply to
    -1). On T^2 the top class w2 is the sum of its two circles; on T^3 each
    N/S plane carries w2 (sum of its circles) and w3 is the sum of all four.
    Spheres only carry the top class, h(N) h(S).

    Raises:
        PairingMismatch

    Example:
        T^1, signs (-1, +1) -> [SWClass(1, 1, "T^1")]
    """
    space = bundle.space
    if not space.is_torus:
        value = int(bundle.nu == -1)
        return [SWClass(space.dim, value, str(space))]
    if pairing is None:
        pairing = default_pairing(space)
    products = pair_products(bundle, pairing)
    w1 = [int(p == -1) for p in products]

    if space.dim == 1:
        return [SWClass(1, w1[0], str(space))]
    classes = [SWClass(1, w1[i], f"T_{i}[{pairing.pair_label(i)}]") for i in range(len(w1))]
    if space.dim == 3:
        for side, indices in (("N", pairing.north), ("S", pairing.south)):
            value = sum(w1[i] for i in indices) % 2
            classes.append(SWClass(2, value, f"T2_{side}[{pairing.side_label(side)}]"))
    classes.append(SWClass(space.dim, sum(w1) % 2, str(space)))
    return classes


def top_class(bundle: PfaffianBundle) -> int:
    """Top Stiefel-Whitney class: parity of the number of -1 signs."""
    return int(bundle.nu == -1)


def weak_indices(bundle: PfaffianBundle) -> list:
    """nu of the plane k_i = pi for each axis of T^3, as Z2 values."""
    space = bundle.space
    if not space.is_torus or space.dim != 3:
        raise UnsupportedSpace(f"weak indices are defined on T^3, not {space}")
    result = []
    for axis in range(3):
        product = 1
        for p in fixed_points(space):
            if p.bits[axis] == 1:
                product *= bundle.sign(p)
        result.append({"axis": AXIS_NAMES[axis], "value": (1 - product) // 2})
    return result


def chern_parity_check(model: BlochModel, half_model: BlochModel, grid=(24, 24),
                       path_samples: int = DEFAULT_PATH_SAMPLES, tol: Tolerances = TOLERANCES) -> dict:
    """
    Compare w2 of the Pfaffian bundle (from fixed-point signs) with the
    parity of the Chern number of a half of the occupied bundle.
    """
    report = kane_mele(model, MomentumSpace.torus(2), path_samples, tol=tol)
    chern = berry_sweep(half_model, grid, tol).chern
    w2 = report.strong
    return {"w2": w2, "chern": chern, "match": w2 == chern % 2}
