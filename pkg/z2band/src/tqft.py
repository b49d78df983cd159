"""
TQFT
====
The bordism decomposition of a torus with time reversal and the partition
function Z(M) = top Stiefel-Whitney class of the Pfaffian bundle restricted
to M.

A torus T^d is cut by a pairing into two sub-tori of dimension d-1 (north
and south), each of those into its own halves, and so on down to the fixed
points. Every object is identified by the set of fixed points it contains.
Z values live in Z2 and nu(M) = (-1)^Z(M) is always derived from them.
"""

import itertools
import logging
from dataclasses import dataclass, field

from z2band.src.errors import PairingMismatch, UnsupportedSpace
from z2band.src.invariants import PfaffianBundle, pair_products, top_class
from z2band.src.momentum import MomentumSpace, TrimPairing, default_pairing, fixed_points

logger = logging.getLogger(__name__)


# =============================================================================
# DECOMPOSITION
# =============================================================================

@dataclass(frozen=True)
class BordismObject:
    """
    A stratum of the decomposition.

    Attributes:
        dimension (int): 0 for a fixed point up to d for the ambient torus
        carrier (str): printable name, e.g. "Γ", "T[Γ-X]", "T2_N[...]", "T^3"
        fixed (tuple): sorted indices of the fixed points it contains
    """

    dimension: int
    carrier: str
    fixed: tuple

    def __post_init__(self):
        if len(self.fixed) != 2 ** self.dimension:
            raise ValueError(
                f"{self.carrier}: a {self.dimension}-torus holds {2 ** self.dimension} fixed points, "
                f"got {len(self.fixed)}"
            )


@dataclass
class BordismDecomposition:
    """
    Attributes:
        ambient (MomentumSpace): the torus being decomposed
        pairing (TrimPairing): pairing that fixed the north/south cuts
        levels (dict): dimension -> list of BordismObject
        boundary_map (dict): carrier -> (north child, south child)
    """

    ambient: MomentumSpace
    pairing: TrimPairing
    levels: dict = field(default_factory=dict)
    boundary_map: dict = field(default_factory=dict)

    @property
    def top(self) -> BordismObject:
        return self.levels[self.ambient.dim][0]

    def objects(self) -> list:
        """All objects, top level first."""
        return [obj for d in sorted(self.levels, reverse=True) for obj in self.levels[d]]

    def _add(self, obj: BordismObject):
        self.levels.setdefault(obj.dimension, []).append(obj)


def _circle(pairing: TrimPairing, index: int) -> BordismObject:
    first, second = pairing.pairs[index]
    return BordismObject(1, f"T[{pairing.pair_label(index)}]", tuple(sorted((first.index, second.index))))


def _point(point) -> BordismObject:
    return BordismObject(0, point.label, (point.index,))


def decompose(space: MomentumSpace, pairing: TrimPairing | None = None) -> BordismDecomposition:
    """
    Decompose T^1, T^2 or T^3 along a pairing.

    Raises:
        UnsupportedSpace: not a torus
        PairingMismatch: the pairing belongs to another space

    Example:
        decompose(T3, make_pairing(T3, 2, 0)).levels -> {3: 1, 2: 2, 1: 4, 0: 8 objects}
    """
    if not space.is_torus:
        raise UnsupportedSpace(f"bordism decomposition is defined on tori, not {space}")
    pairing = pairing or default_pairing(space)
    if pairing.space != space:
        raise PairingMismatch(f"pairing on {pairing.space} used to decompose {space}")
    if space.dim == 3 and pairing.grouping is None:
        raise PairingMismatch("a T^3 decomposition needs a grouping")

    points = fixed_points(space)
    decomp = BordismDecomposition(space, pairing)
    top = BordismObject(space.dim, str(space), tuple(p.index for p in points))
    decomp._add(top)

    if space.dim == 1:
        first, second = pairing.pairs[0]
        decomp.boundary_map[top.carrier] = (_point(first), _point(second))
    elif space.dim == 2:
        north, south = _circle(pairing, pairing.north[0]), _circle(pairing, pairing.south[0])
        decomp.boundary_map[top.carrier] = (north, south)
        for circle in (north, south):
            decomp._add(circle)
    else:
        halves = []
        for side, indices in (("N", pairing.north), ("S", pairing.south)):
            fixed = tuple(sorted(p.index for i in indices for p in pairing.pairs[i]))
            plane = BordismObject(2, f"T2_{side}[{pairing.side_label(side)}]", fixed)
            decomp._add(plane)
            circles = tuple(_circle(pairing, i) for i in indices)
            decomp.boundary_map[plane.carrier] = circles
            for circle in circles:
                decomp._add(circle)
            halves.append(plane)
        decomp.boundary_map[top.carrier] = tuple(halves)

    for index in range(len(pairing.pairs)):
        first, second = pairing.pairs[index]
        if space.dim > 1:
            decomp.boundary_map[_circle(pairing, index).carrier] = (_point(first), _point(second))
    for point in points:
        decomp._add(_point(point))
    return decomp


# =============================================================================
# PARTITION FUNCTION
# =============================================================================

@dataclass(frozen=True)
class PartitionValue:
    """
    Z(M) for one object.

    Attributes:
        object (BordismObject): the stratum
        z_value (int): top Stiefel-Whitney class of the restricted bundle
    """

    object: BordismObject
    z_value: int

    @property
    def nu_value(self) -> int:
        return -1 if self.z_value else 1

    def to_dict(self) -> dict:
        return {
            "dim": self.object.dimension,
            "carrier": self.object.carrier,
            "z": self.z_value,
            "nu": self.nu_value,
        }


def disjoint_union_value(values) -> int:
    """Z of a disjoint union: the Z2 sum of the parts."""
    return sum(values) % 2


def _check_bundle(bundle: PfaffianBundle, decomp: BordismDecomposition):
    if bundle.space != decomp.ambient:
        raise PairingMismatch(f"bundle on {bundle.space} used with a decomposition of {decomp.ambient}")


def partition(bundle: PfaffianBundle, decomp: BordismDecomposition) -> list:
    """
    Z(M) for every object of the decomposition, top level first.

    Points take (1 - h)/2, circles w1 of their pair, 2-tori the sum of their
    circles, the ambient torus its top class.

    Example:
        T^1 with signs (-1, +1) -> Z(Γ)=1, Z(X)=0, Z(T^1)=1
    """
    _check_bundle(bundle, decomp)
    pairing = decomp.pairing
    w1 = {_circle(pairing, i).carrier: int(p == -1)
          for i, p in enumerate(pair_products(bundle, pairing))}

    z = {}
    for obj in decomp.levels[0]:
        z[obj.carrier] = (1 - bundle.signs[obj.fixed[0]]) // 2
    if decomp.ambient.dim > 1:
        for obj in decomp.levels[1]:
            z[obj.carrier] = w1[obj.carrier]
    if decomp.ambient.dim > 2:
        for obj in decomp.levels[2]:
            z[obj.carrier] = disjoint_union_value(z[c.carrier] for c in decomp.boundary_map[obj.carrier])
    z[decomp.top.carrier] = top_class(bundle)
    return [PartitionValue(obj, z[obj.carrier]) for obj in decomp.objects()]


# =============================================================================
# MONOIDAL LAWS
# =============================================================================

@dataclass
class MonoidalReport:
    """
    Outcome of check_monoidal.

    Attributes:
        checked (int): number of identities evaluated
        failures (list): one message per failed identity
    """

    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def counterexample(self) -> str | None:
        return self.failures[0] if self.failures else None

    def record(self, ok: bool, message: str):
        self.checked += 1
        if not ok:
            self.failures.append(message)

    def to_dict(self) -> dict:
        return {"passed": self.passed, "checked": self.checked, "counterexample": self.counterexample}


def _restricted_top(bundle: PfaffianBundle, fixed) -> int:
    """Top class of the bundle restricted to a union of strata."""
    return sum(1 for i in fixed if bundle.signs[i] == -1) % 2


def check_monoidal(bundle: PfaffianBundle, decomp: BordismDecomposition) -> MonoidalReport:
    """
    Check that Z is a monoidal functor on the decomposition.

    For every pair of distinct objects of the same dimension, Z of their
    disjoint union (the top class of the bundle restricted to it) equals the
    sum of their Z values and nu multiplies. Every object's Z equals the sum
    over its boundary, and nu of the ambient torus is the product of the
    fixed-point signs.
    """
    report = MonoidalReport()
    values = {v.object.carrier: v for v in partition(bundle, decomp)}

    for dim, objects in sorted(decomp.levels.items()):
        for m, n in itertools.combinations(objects, 2):
            union = _restricted_top(bundle, m.fixed + n.fixed)
            vm, vn = values[m.carrier], values[n.carrier]
            report.record(
                union == disjoint_union_value((vm.z_value, vn.z_value)),
                f"Z({m.carrier} ⊔ {n.carrier}) = {union}, expected {vm.z_value} + {vn.z_value}",
            )
            report.record(
                (-1) ** union == vm.nu_value * vn.nu_value,
                f"nu({m.carrier} ⊔ {n.carrier}) is not nu({m.carrier}) nu({n.carrier})",
            )

    for carrier, children in decomp.boundary_map.items():
        expected = disjoint_union_value(values[c.carrier].z_value for c in children)
        report.record(
            values[carrier].z_value == expected,
            f"Z({carrier}) = {values[carrier].z_value}, boundary sum {expected}",
        )

    ambient = values[decomp.top.carrier].nu_value
    point_product = 1
    for obj in decomp.levels[0]:
        point_product *= values[obj.carrier].nu_value
    report.record(ambient == point_product, f"nu(X) = {ambient}, product over fixed points {point_product}")
    report.record(ambient == bundle.nu, f"nu(X) = {ambient}, bundle nu {bundle.nu}")

    if not report.passed:
        logger.warning("monoidal check failed: %s", report.counterexample)
    return report
