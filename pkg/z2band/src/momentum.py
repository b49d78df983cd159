"""
Momentum Spaces
===============
Involutive momentum spaces (tori and spheres) as Z2-CW complexes.

Torus points are angle vectors with components in (-pi, pi]; time reversal
acts as k -> -k, which fixes {0, pi}^d exactly. Sphere points are unit
vectors in R^(d+1); time reversal negates every coordinate except the first,
fixing the poles N = +e0 and S = -e0.
"""

import itertools
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from z2band.src.errors import NotNearestNeighbors, PairingMismatch, UnsupportedSpace

AXIS_NAMES = "xyz"


def wrap_angle(k):
    """Map angles into (-pi, pi]."""
    return np.pi - np.mod(np.pi - np.asarray(k, dtype=float), 2 * np.pi)


# =============================================================================
# SPACES AND FIXED POINTS
# =============================================================================

class SpaceKind(Enum):
    TORUS = "t"
    SPHERE = "s"


@dataclass(frozen=True)
class MomentumSpace:
    """
    A torus T^d or sphere S^d with its time-reversal involution.

    Attributes:
        kind (SpaceKind): torus or sphere
        dim (int): 1, 2 or 3

    Example:
        MomentumSpace.parse("t2") -> MomentumSpace(kind=SpaceKind.TORUS, dim=2)
    """

    kind: SpaceKind
    dim: int

    def __post_init__(self):
        if self.dim not in (1, 2, 3):
            raise UnsupportedSpace(f"dimension must be 1, 2 or 3, got {self.dim}")

    @classmethod
    def torus(cls, dim: int) -> "MomentumSpace":
        return cls(SpaceKind.TORUS, dim)

    @classmethod
    def sphere(cls, dim: int) -> "MomentumSpace":
        return cls(SpaceKind.SPHERE, dim)

    @classmethod
    def parse(cls, text: str) -> "MomentumSpace":
        """Parse 't1'..'t3' or 's1'..'s3'."""
        value = text.strip().lower()
        if len(value) != 2 or value[0] not in "ts" or not value[1].isdigit():
            raise UnsupportedSpace(f"unknown space {text!r}; expected t1..t3 or s1..s3")
        return cls(SpaceKind(value[0]), int(value[1]))

    @property
    def is_torus(self) -> bool:
        return self.kind is SpaceKind.TORUS

    @property
    def label(self) -> str:
        return f"{self.kind.value}{self.dim}"

    def involution(self, k) -> np.ndarray:
        """
        Apply time reversal to one point or an array of points.

        Torus inputs must already lie in (-pi, pi]; the result does too, and
        applying it twice returns the input bit for bit.
        """
        points = np.asarray(k, dtype=float)
        if self.is_torus:
            return np.where(points == np.pi, np.pi, -points)
        flipped = -points
        flipped[..., 0] = points[..., 0]
        return flipped

    def __str__(self) -> str:
        letter = "T" if self.is_torus else "S"
        return f"{letter}^{self.dim}"


@dataclass(frozen=True)
class FixedPoint:
    """
    A time-reversal invariant point.

    Attributes:
        index (int): position in fixed_points order
        coords (tuple): angles in {0, pi} for tori, empty for spheres
        pole (str | None): "N" or "S" for spheres
    """

    index: int
    coords: tuple = ()
    pole: str | None = None

    @property
    def bits(self) -> tuple:
        """1 where the coordinate is pi."""
        return tuple(int(c == np.pi) for c in self.coords)

    @property
    def label(self) -> str:
        if self.pole is not None:
            return self.pole
        axes = "".join(AXIS_NAMES[i] for i, bit in enumerate(self.bits) if bit)
        return axes.upper() if axes else "Γ"

    def coords_text(self) -> str:
        if self.pole is not None:
            return self.pole
        return "(" + ",".join("pi" if b else "0" for b in self.bits) + ")"

    def __str__(self) -> str:
        return f"{self.label}{self.coords_text() if self.pole is None else ''}"


def fixed_points(space: MomentumSpace) -> list:
    """
    All time-reversal fixed points, lexicographic with the last coordinate
    varying fastest.

    Example:
        fixed_points(MomentumSpace.torus(2)) -> [(0,0), (0,pi), (pi,0), (pi,pi)]
        fixed_points(MomentumSpace.sphere(3)) -> [N, S]
    """
    if not space.is_torus:
        return [FixedPoint(0, pole="N"), FixedPoint(1, pole="S")]
    points = []
    for index, bits in enumerate(itertools.product((0, 1), repeat=space.dim)):
        coords = tuple(np.pi if b else 0.0 for b in bits)
        points.append(FixedPoint(index, coords))
    return points


def fixed_point_from_bits(space: MomentumSpace, bits) -> FixedPoint:
    """Look up the torus fixed point with the given 0/1 coordinates."""
    index = 0
    for bit in bits:
        index = 2 * index + int(bit)
    return fixed_points(space)[index]


# =============================================================================
# CELL DECOMPOSITION
# =============================================================================

# 1D cells of the circle: the two fixed points and the two open arcs
ARC_PLUS = "+"     # (0, pi)
ARC_MINUS = "-"    # (-pi, 0)
POINT_ZERO = "0"
POINT_PI = "pi"


@dataclass(frozen=True)
class Cell:
    """
    A product cell of T^d, or a symbolic cell of S^d.

    Attributes:
        factors (tuple): per-axis 1D cell names for tori
        name (str): display name, unique within a decomposition
        dimension (int): cell dimension
    """

    factors: tuple = ()
    name: str = ""
    dimension: int = 0

    @classmethod
    def product(cls, factors) -> "Cell":
        factors = tuple(factors)
        dim = sum(f in (ARC_PLUS, ARC_MINUS) for f in factors)
        return cls(factors, "(" + ",".join(factors) + ")", dim)

    def image(self) -> "Cell":
        """tau exchanges the two open arcs and fixes the points."""
        swap = {ARC_PLUS: ARC_MINUS, ARC_MINUS: ARC_PLUS}
        return Cell.product(swap.get(f, f) for f in self.factors)

    def contains(self, k) -> np.ndarray:
        """Membership of torus points (..., d) in this cell."""
        points = np.asarray(k, dtype=float)
        inside = np.ones(points.shape[:-1], dtype=bool)
        for axis, factor in enumerate(self.factors):
            x = points[..., axis]
            if factor == POINT_ZERO:
                inside &= x == 0.0
            elif factor == POINT_PI:
                inside &= x == np.pi
            elif factor == ARC_PLUS:
                inside &= (x > 0.0) & (x < np.pi)
            else:
                inside &= (x < 0.0) & (x > -np.pi)
        return inside


@dataclass
class CellDecomposition:
    """
    Z2-CW structure of a momentum space.

    Attributes:
        space (MomentumSpace): the decomposed space
        fixed_cells (list): FixedPoint 0-cells
        free_cells (list): (dimension, representative Cell, tau-image Cell)
        boundary (dict): cell name -> list of boundary cell names
    """

    space: MomentumSpace
    fixed_cells: list = field(default_factory=list)
    free_cells: list = field(default_factory=list)
    boundary: dict = field(default_factory=dict)

    def all_cells(self) -> list:
        """Every torus cell, fixed and free, as Cell objects."""
        cells = [Cell.product(POINT_PI if b else POINT_ZERO for b in p.bits)
                 for p in self.fixed_cells]
        for _, rep, image in self.free_cells:
            cells.extend([rep, image])
        return cells


def _arc_boundary(cell: Cell) -> list:
    names = []
    for axis, factor in enumerate(cell.factors):
        if factor in (ARC_PLUS, ARC_MINUS):
            for end in (POINT_ZERO, POINT_PI):
                face = list(cell.factors)
                face[axis] = end
                names.append(Cell.product(face).name)
    return names


def cell_decomposition(space: MomentumSpace) -> CellDecomposition:
    """
    Z2-CW decomposition: fixed points plus free cells exchanged by tau.

    Tori are built as products of the circle decomposition
    {0, pi} + (0, pi) + (-pi, 0). S^1 is T^1; higher spheres get the
    symbolic decomposition {N, S} plus one exchanged pair of cells per
    dimension.

    Example:
        cell_decomposition(MomentumSpace.torus(1)).free_cells
            -> [(1, (+), (-))]
    """
    if space.is_torus or space.dim == 1:
        decomposition = CellDecomposition(space, fixed_points(MomentumSpace.torus(space.dim)))
        circle = (POINT_ZERO, POINT_PI, ARC_PLUS, ARC_MINUS)
        for factors in itertools.product(circle, repeat=space.dim):
            cell = Cell.product(factors)
            decomposition.boundary[cell.name] = _arc_boundary(cell)
            if cell.dimension == 0:
                continue
            first_open = next(f for f in factors if f in (ARC_PLUS, ARC_MINUS))
            if first_open == ARC_PLUS:
                decomposition.free_cells.append((cell.dimension, cell, cell.image()))
        return decomposition

    decomposition = CellDecomposition(space, fixed_points(space))
    previous = ["N", "S"]
    for dim in range(1, space.dim + 1):
        rep = Cell(name=f"e{dim}+", dimension=dim)
        image = Cell(name=f"e{dim}-", dimension=dim)
        decomposition.free_cells.append((dim, rep, image))
        decomposition.boundary[rep.name] = list(previous)
        decomposition.boundary[image.name] = list(previous)
        previous = [rep.name, image.name]
    return decomposition


# =============================================================================
# PAIRINGS
# =============================================================================

@dataclass(frozen=True)
class TrimPairing:
    """
    Nearest-neighbour pairs of fixed points along one axis, optionally
    grouped into a north and a south set.

    Attributes:
        space (MomentumSpace): ambient torus
        axis (int): the coordinate in which paired points differ
        pairs (tuple): (FixedPoint at 0, FixedPoint at pi) per pair
        grouping (int | None): which of the three groupings (T^3 only)
        north (tuple): pair indices of the north set
        south (tuple): pair indices of the south set
    """

    space: MomentumSpace
    axis: int
    pairs: tuple
    grouping: int | None = None
    north: tuple = ()
    south: tuple = ()

    @property
    def name(self) -> str:
        return f"axis-{AXIS_NAMES[self.axis]}"

    def induced_subspaces(self) -> list:
        """Per pair, the circle through it as (axis, base point)."""
        return [(self.axis, first) for first, _ in self.pairs]

    def pair_label(self, index: int) -> str:
        first, second = self.pairs[index]
        return f"{first.label}-{second.label}"

    def side_label(self, side: str) -> str:
        indices = self.north if side == "N" else self.south
        return "+".join(self.pair_label(i) for i in indices)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "grouping": self.grouping,
            "pairs": [[a.index, b.index] for a, b in self.pairs],
            "north": list(self.north),
            "south": list(self.south),
        }


def _axis_pairs(space: MomentumSpace, axis: int) -> tuple:
    points = fixed_points(space)
    pairs = []
    for p in points:
        if p.bits[axis] == 0:
            partner_bits = list(p.bits)
            partner_bits[axis] = 1
            pairs.append((p, fixed_point_from_bits(space, partner_bits)))
    return tuple(pairs)


def _groupings(space: MomentumSpace, axis: int, pairs: tuple) -> list:
    """The three ways to split four T^3 pairs into two planes."""
    others = [a for a in range(space.dim) if a != axis]
    rules = [
        lambda bits: bits[others[0]] == 0,
        lambda bits: bits[others[1]] == 0,
        lambda bits: bits[others[0]] == bits[others[1]],
    ]
    result = []
    for rule in rules:
        north = tuple(i for i, (p, _) in enumerate(pairs) if rule(p.bits))
        south = tuple(i for i in range(len(pairs)) if i not in north)
        result.append((north, south))
    return result


def make_pairing(space: MomentumSpace, axis: int, grouping: int | None = None) -> TrimPairing:
    """
    Build the pairing along one axis.

    T^1 has the single pair {0, pi}; T^2 puts pair 0 north and pair 1
    south; T^3 takes its north/south split from grouping (0, 1 or 2).
    """
    if not space.is_torus:
        raise UnsupportedSpace(f"pairings are defined on tori only, not {space}")
    if not 0 <= axis < space.dim:
        raise PairingMismatch(f"axis {axis} out of range for {space}")
    pairs = _axis_pairs(space, axis)
    if space.dim == 1:
        return TrimPairing(space, axis, pairs, None, (0,), ())
    if space.dim == 2:
        return TrimPairing(space, axis, pairs, None, (0,), (1,))
    if grouping is None:
        grouping = 0
    if grouping not in (0, 1, 2):
        raise PairingMismatch(f"grouping must be 0, 1 or 2, got {grouping}")
    north, south = _groupings(space, axis, pairs)[grouping]
    return TrimPairing(space, axis, pairs, grouping, north, south)


def default_pairing(space: MomentumSpace) -> TrimPairing:
    """The pairing along the first axis (grouping 0 on T^3)."""
    return make_pairing(space, 0, 0 if space.dim == 3 else None)


def enumerate_pairings(space: MomentumSpace) -> list:
    """
    All axis-aligned nearest-neighbour pairings.

    T^2 gives the two axis pairings; T^3 gives three axes times three
    groupings.

    Raises:
        UnsupportedSpace: for spheres and T^1
    """
    if not space.is_torus or space.dim == 1:
        raise UnsupportedSpace(f"no pairing layer on {space}")
    groupings = (None,) if space.dim == 2 else (0, 1, 2)
    return [make_pairing(space, axis, g) for axis in range(space.dim) for g in groupings]


def check_nearest_neighbors(space: MomentumSpace, pair) -> int:
    """Return the axis along which the pair differs, or raise."""
    first, second = pair
    known = fixed_points(space)
    if not space.is_torus:
        raise UnsupportedSpace(f"no effective-zone paths on {space}")
    if first not in known or second not in known:
        raise PairingMismatch(f"{first} / {second} are not fixed points of {space}")
    diff = [a for a in range(space.dim) if first.bits[a] != second.bits[a]]
    if len(diff) != 1:
        raise NotNearestNeighbors(f"{first} and {second} differ in {len(diff)} coordinates")
    return diff[0]


# =============================================================================
# PATHS AND GRIDS
# =============================================================================

def effective_zone_path(space: MomentumSpace, pair, samples: int) -> np.ndarray:
    """
    Straight path inside the effective zone between two neighbouring fixed
    points, endpoints included.

    Returns:
        ndarray of shape (samples, d)

    Example:
        effective_zone_path(T1, (0, pi), 3) -> [[0], [pi/2], [pi]]
    """
    check_nearest_neighbors(space, pair)
    if samples < 2:
        raise ValueError(f"samples must be >= 2, got {samples}")
    start = np.array(pair[0].coords, dtype=float)
    stop = np.array(pair[1].coords, dtype=float)
    t = np.linspace(0.0, 1.0, samples)[:, None]
    path = start + t * (stop - start)
    path[0], path[-1] = start, stop
    return path


def circle_points(space: MomentumSpace, pair, samples: int) -> np.ndarray:
    """
    The closed circle through a neighbouring pair, sampled uniformly from the
    pair's first point (last point not repeated).
    """
    axis = check_nearest_neighbors(space, pair)
    if samples < 3:
        raise ValueError(f"samples must be >= 3, got {samples}")
    base = np.array(pair[0].coords, dtype=float)
    points = np.tile(base, (samples, 1))
    points[:, axis] = wrap_angle(base[axis] + 2 * np.pi * np.arange(samples) / samples)
    return points


def uniform_grid(space: MomentumSpace, density: int) -> np.ndarray:
    """density^d torus points 2*pi*j/density, wrapped into (-pi, pi]."""
    if not space.is_torus:
        raise UnsupportedSpace(f"no sampling grid on {space}")
    axis = wrap_angle(2 * np.pi * np.arange(density) / density)
    mesh = np.meshgrid(*([axis] * space.dim), indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=-1)
