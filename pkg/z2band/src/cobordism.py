"""
Cobordism
=========
Unoriented cobordism of the Pfaffian bundle restricted to circles.

A restricted bundle over a circle through two paired fixed points is a
cylinder when the two signs agree and a Moebius strip when they differ.
Compactifying gives a closed surface (T^2 or RP^2), and closed surfaces are
classified up to unoriented cobordism by their Euler characteristic mod 2.
Surfaces are symbolic: a name, an Euler characteristic and an orientability
flag.
"""

from dataclasses import dataclass
from enum import Enum

from z2band.src.errors import NotNearestNeighbors, PairingMismatch, UnrepresentableSurface
from z2band.src.invariants import PfaffianBundle, check_pairing
from z2band.src.momentum import TrimPairing, check_nearest_neighbors


# =============================================================================
# DATA TYPES
# =============================================================================

class Classification(Enum):
    CYLINDER = "cylinder"
    MOEBIUS = "moebius"


@dataclass(frozen=True)
class LineBundleOverCircle:
    """
    A Z2 line bundle over a circle through two fixed points.

    Attributes:
        transition_signs (tuple): ((label, sign), (label, sign))
        classification (Classification): Moebius iff the signs multiply to -1
    """

    transition_signs: tuple
    classification: Classification = None

    def __post_init__(self):
        product = self.transition_signs[0][1] * self.transition_signs[1][1]
        expected = Classification.MOEBIUS if product == -1 else Classification.CYLINDER
        if self.classification is None:
            object.__setattr__(self, "classification", expected)
        elif self.classification != expected:
            raise ValueError(f"signs {self.signs} give {expected.value}, not {self.classification.value}")

    @property
    def signs(self) -> tuple:
        return tuple(sign for _, sign in self.transition_signs)

    @property
    def w1(self) -> int:
        return int(self.classification is Classification.MOEBIUS)

    def to_dict(self) -> dict:
        return {
            "points": [label for label, _ in self.transition_signs],
            "signs": list(self.signs),
            "classification": self.classification.value,
            "w1": self.w1,
        }


class ClosedSurface(Enum):
    """The closed surfaces reachable from restricted Pfaffian bundles."""

    TORUS2 = ("T^2", 0, True)
    RP2 = ("RP^2", 1, False)
    KLEIN = ("K", 0, False)

    def __init__(self, symbol: str, euler_char: int, orientable: bool):
        self.symbol = symbol
        self.euler_char = euler_char
        self.orientable = orientable

    def euler_characteristic(self) -> int:
        return self.euler_char

    def is_orientable(self) -> bool:
        return self.orientable


@dataclass(frozen=True)
class CobordismClass:
    """An element of the unoriented cobordism group N_2 = Z2."""

    value: int

    def __post_init__(self):
        if self.value not in (0, 1):
            raise ValueError(f"cobordism class must be 0 or 1, got {self.value}")


# =============================================================================
# OPERATIONS
# =============================================================================

def restrict_bundle(bundle: PfaffianBundle, pair) -> LineBundleOverCircle:
    """
    Restrict the Pfaffian bundle to the circle through a nearest-neighbour pair.

    Raises:
        PairingMismatch: the pair is not a neighbouring pair of fixed points

    Example:
        signs (-1, +1) -> Moebius, signs (-1, -1) -> Cylinder
    """
    try:
        check_nearest_neighbors(bundle.space, pair)
    except NotNearestNeighbors as exc:
        raise PairingMismatch(str(exc)) from exc
    first, second = pair
    return LineBundleOverCircle(((first.label, bundle.sign(first)), (second.label, bundle.sign(second))))


def compactify(line_bundle: LineBundleOverCircle) -> ClosedSurface:
    """Cylinder -> T^2, Moebius -> RP^2."""
    if line_bundle.classification is Classification.MOEBIUS:
        return ClosedSurface.RP2
    return ClosedSurface.TORUS2


def connected_sum(a: ClosedSurface, b: ClosedSurface) -> ClosedSurface:
    """
    a # b, with chi(a # b) = chi(a) + chi(b) - 2; the sum is non-orientable
    if either summand is.

    Raises:
        UnrepresentableSurface: the result is none of T^2, RP^2, K

    Example:
        connected_sum(RP2, RP2) -> KLEIN
    """
    euler_char = a.euler_char + b.euler_char - 2
    orientable = a.orientable and b.orientable
    for surface in ClosedSurface:
        if surface.euler_char == euler_char and surface.orientable == orientable:
            return surface
    raise UnrepresentableSurface(euler_char, orientable)


def cobordism_class(surface) -> CobordismClass:
    """chi mod 2, for a ClosedSurface or an UnrepresentableSurface."""
    return CobordismClass(surface.euler_char % 2)


def are_cobordant(a: LineBundleOverCircle, b: LineBundleOverCircle) -> bool:
    return cobordism_class(compactify(a)) == cobordism_class(compactify(b))


def bundle_surfaces(bundle: PfaffianBundle, pairing: TrimPairing) -> list:
    """
    Per pair of the pairing: the restricted bundle, its compactified surface
    and the surface's cobordism class.
    """
    check_pairing(bundle, pairing)
    rows = []
    for index, pair in enumerate(pairing.pairs):
        restricted = restrict_bundle(bundle, pair)
        surface = compactify(restricted)
        row = restricted.to_dict()
        row.update({
            "pair": pairing.pair_label(index),
            "surface": surface.symbol,
            "euler_char": surface.euler_char,
            "class": cobordism_class(surface).value,
        })
        rows.append(row)
    return rows
