"""Random right-angled hexagons in H^3 and augmented hexagons in H^4.

A hexagon is grown as a chain L1, ..., L5 of lines, each meeting the previous
one at a right angle a random distance further along, and closed by the
common perpendicular L6 of L5 and L1. Attempts whose closing feet land too
close to the chain, or whose sides grow too long, are rejected.

Every generator takes either an integer seed or a ``numpy.random.Generator``;
:func:`instance_rng` derives independent per-instance streams from a batch
seed through the counter-based Philox bit generator.
"""

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass
from typing import ClassVar, TypeVar

import numpy as np
from numpy.typing import NDArray

from hexagauss.clifford import paravector
from hexagauss.hypgeo.crosses import cross_residual
from hexagauss.hypgeo.half_distance import complex_half_length
from hexagauss.hypgeo.metric import (
    apply_to_line,
    apply_to_side,
    distance,
    geodesic_from_point_direction,
    line_tangent,
    point_along_line,
)
from hexagauss.hypgeo.objects import (
    InteriorPoint,
    OrientedFlag,
    OrientedLine,
    Side,
    boundary_coords,
)
from hexagauss.hypgeo.perpendicular import (
    augment,
    common_perpendicular_feet,
    perpendicular_residual,
)
from hexagauss.vahlen import BoundaryPoint, Infinity, VahlenMatrix

logger = logging.getLogger(__name__)

RNG_NAME = "numpy.random.Philox"
MAX_ATTEMPTS = 32
GAP_RANGE = (0.5, 2.0)
MIN_SIDE = 0.05
MAX_SIDE = 8.0

H3_DIMS = (0, 1, 3)
H4_DIMS = (0, 1, 2, 3)
PLANE_DIMS = (0, 3)

T = TypeVar("T")


class GeneratorError(ValueError):
    """Raised when no valid instance was found within the attempt budget."""


def instance_rng(seed: int, index: int = 0) -> np.random.Generator:
    """Independent random stream number ``index`` of a batch seed.

    Example:
        >>> a = instance_rng(7, 3).normal()
        >>> a == instance_rng(7, 3).normal()
        True
    """
    sequence = np.random.SeedSequence(seed, spawn_key=(index,))
    return np.random.Generator(np.random.Philox(sequence))


def as_rng(seed: int | np.random.Generator) -> np.random.Generator:
    """Use a generator as is, or build the instance 0 generator of a seed."""
    if isinstance(seed, np.random.Generator):
        return seed
    return instance_rng(int(seed))


@dataclass(frozen=True, eq=False)
class HexagonH3:
    """Right-angled hexagon of H^3 given by its six oriented lines.

    Boundary points lie in R + R e1 (or at infinity); ``lines[n]`` meets
    ``lines[n + 1]`` at a right angle, indices mod 6.
    """

    lines: tuple[OrientedLine, ...]
    space: ClassVar[str] = "h3"

    def __post_init__(self) -> None:
        """Check the side count."""
        if len(self.lines) != 6:
            raise ValueError(f"A hexagon has 6 sides, got {len(self.lines)}")

    @property
    def sides(self) -> tuple[Side, ...]:
        """The six sides."""
        return self.lines

    def transformed(self, A: VahlenMatrix) -> "HexagonH3":
        """Image under an isometry that preserves the H^3 slice."""
        return HexagonH3(tuple(apply_to_line(A, line) for line in self.lines))


@dataclass(frozen=True, eq=False)
class AugmentedHexagonH4:
    """Augmented right-angled hexagon of H^4.

    Sides alternate between oriented lines and oriented flags. The usual layout
    has lines at indices 0, 2, 4; the parity-swapped layout is also accepted.
    """

    sides: tuple[Side, ...]
    space: ClassVar[str] = "h4"

    def __post_init__(self) -> None:
        """Check the side count and the alternation of lines and flags."""
        if len(self.sides) != 6:
            raise ValueError(f"A hexagon has 6 sides, got {len(self.sides)}")
        kinds = [isinstance(s, OrientedFlag) for s in self.sides]
        if any(kinds[n] == kinds[(n + 1) % 6] for n in range(6)):
            raise ValueError("Sides must alternate between lines and flags")

    @property
    def lines_first(self) -> bool:
        """True when side 0 is a line."""
        return isinstance(self.sides[0], OrientedLine)

    def line_of(self, n: int) -> OrientedLine:
        """Underlying line of side n."""
        side = self.sides[n % 6]
        return side.line if isinstance(side, OrientedFlag) else side

    def transformed(self, A: VahlenMatrix) -> "AugmentedHexagonH4":
        """Image under an isometry."""
        return AugmentedHexagonH4(tuple(apply_to_side(A, s) for s in self.sides))


Hexagon = HexagonH3 | AugmentedHexagonH4


def side_residuals(hexagon: Hexagon) -> list[float]:
    """Orthogonality residual of each consecutive pair (side n, side n + 1)."""
    residuals = []
    for n in range(6):
        a, b = hexagon.sides[n], hexagon.sides[(n + 1) % 6]
        if isinstance(a, OrientedFlag) and isinstance(b, OrientedLine):
            residuals.append(cross_residual(a, b))
        elif isinstance(a, OrientedLine) and isinstance(b, OrientedFlag):
            residuals.append(cross_residual(b, a))
        else:
            assert isinstance(a, OrientedLine) and isinstance(b, OrientedLine)
            residuals.append(perpendicular_residual(a, b))
    return residuals


def _random_direction(
    rng: np.random.Generator,
    dims: tuple[int, ...],
    against: NDArray[np.float64] | None = None,
) -> NDArray[np.float64]:
    v = np.zeros(4)
    v[list(dims)] = rng.normal(size=len(dims))
    if against is not None:
        v -= float(np.dot(v, against)) * against
    return v / float(np.linalg.norm(v))


def _random_base(rng: np.random.Generator, dims: tuple[int, ...]) -> InteriorPoint:
    coords = np.zeros(4)
    for d in dims:
        if d != 3:
            coords[d] = rng.normal()
    coords[3] = math.exp(0.5 * rng.normal())
    return InteriorPoint(coords)


def _left_turn(tangent: NDArray[np.float64]) -> NDArray[np.float64]:
    return np.array([-tangent[3], 0.0, 0.0, tangent[0]])


def _close_chain(
    lines: list[OrientedLine], base: InteriorPoint, last: InteriorPoint
) -> OrientedLine:
    closing = common_perpendicular_feet(lines[4], lines[0])
    ends = (
        distance(closing.foot1, last),
        distance(closing.foot2, base),
        closing.distance,
    )
    if min(ends) < MIN_SIDE:
        raise GeneratorError(f"Closing feet too close to the chain ({min(ends):.3f})")
    if max(ends) > MAX_SIDE:
        raise GeneratorError(f"Side too long ({max(ends):.3f})")
    return closing.line


def _random_chain(
    rng: np.random.Generator, dims: tuple[int, ...]
) -> list[OrientedLine]:
    base = _random_base(rng, dims)
    lines = [geodesic_from_point_direction(base, _random_direction(rng, dims))]
    point = base
    for k in range(4):
        tangent = line_tangent(lines[-1], point)
        direction = _random_direction(rng, dims, tangent)
        lines.append(geodesic_from_point_direction(point, direction))
        if k < 3:
            point = point_along_line(lines[-1], point, float(rng.uniform(*GAP_RANGE)))
    lines.append(_close_chain(lines, base, point))
    return lines


def _flip_randomly(
    rng: np.random.Generator, lines: list[OrientedLine]
) -> list[OrientedLine]:
    return [line.reversed() if rng.random() < 0.5 else line for line in lines]


def with_retries(
    build: Callable[[np.random.Generator], T], rng: np.random.Generator, what: str
) -> T:
    """Call build until it stops raising ValueError, at most MAX_ATTEMPTS times."""
    for attempt in range(MAX_ATTEMPTS):
        try:
            return build(rng)
        except ValueError as e:
            logger.debug(f"Rejected {what} attempt {attempt}: {e}")
    raise GeneratorError(f"No valid {what} after {MAX_ATTEMPTS} attempts")


def random_hexagon_h3(seed: int | np.random.Generator) -> HexagonH3:
    """Random right-angled hexagon of H^3 with randomly oriented sides.

    Args:
        seed: Integer seed or random generator.

    Returns:
        A hexagon whose boundary points lie in R + R e1.

    Raises:
        GeneratorError: If 32 consecutive attempts are rejected.
    """
    rng = as_rng(seed)

    def build(r: np.random.Generator) -> HexagonH3:
        return HexagonH3(tuple(_flip_randomly(r, _random_chain(r, H3_DIMS))))

    return with_retries(build, rng, "H^3 hexagon")


def random_augmented_hexagon_h4(seed: int | np.random.Generator) -> AugmentedHexagonH4:
    """Random augmented right-angled hexagon of H^4.

    Sides 0, 2 and 4 are lines; sides 1, 3 and 5 are the flags obtained by
    augmenting the remaining lines, with a random plane orientation each.

    Raises:
        GeneratorError: If 32 consecutive attempts are rejected.
    """
    rng = as_rng(seed)

    def build(r: np.random.Generator) -> AugmentedHexagonH4:
        lines = _flip_randomly(r, _random_chain(r, H4_DIMS))
        sides: list[Side] = []
        for n, line in enumerate(lines):
            if n % 2 == 0:
                sides.append(line)
                continue
            plus, minus = augment(lines[n - 1], line, lines[(n + 1) % 6])
            sides.append(plus if r.random() < 0.5 else minus)
        return AugmentedHexagonH4(tuple(sides))

    return with_retries(build, rng, "H^4 hexagon")


@dataclass(frozen=True)
class PlanarHexagon:
    """Convex right-angled hexagon of a hyperbolic plane with its side lengths.

    Attributes:
        hexagon: The hexagon, sides oriented cyclically with left turns.
        lengths: Design lengths of sides 2, 3, 4 and 6 (1-based), keyed by side.
    """

    hexagon: HexagonH3
    lengths: dict[int, float]


def random_planar_hexagon(seed: int | np.random.Generator) -> PlanarHexagon:
    """Random convex right-angled hexagon in the plane over the real axis.

    Three alternate sides l2, l4, l6 are drawn at random; l3 then follows from
    cosh l3 = (cosh l6 + cosh l2 cosh l4) / (sinh l2 sinh l4). The chain turns
    left at every corner, so every complex side length is l + pi e1.

    Raises:
        GeneratorError: If 32 consecutive attempts are rejected.
    """
    rng = as_rng(seed)

    def build(r: np.random.Generator) -> PlanarHexagon:
        l2, l4, l6 = (float(r.uniform(*GAP_RANGE)) for _ in range(3))
        l3 = math.acosh(
            (math.cosh(l6) + math.cosh(l2) * math.cosh(l4))
            / (math.sinh(l2) * math.sinh(l4))
        )
        base = _random_base(r, PLANE_DIMS)
        lines = [geodesic_from_point_direction(base, _random_direction(r, PLANE_DIMS))]
        point = base
        for gap in (l2, l3, l4, None):
            tangent = _left_turn(line_tangent(lines[-1], point))
            line = geodesic_from_point_direction(point, tangent)
            lines.append(line)
            if gap is not None:
                point = point_along_line(line, point, gap)
        lines.append(_close_chain(lines, base, point))
        hexagon = HexagonH3(tuple(lines))
        for n in range(6):
            half = complex_half_length(lines[n - 1], lines[n], lines[(n + 1) % 6])
            sigma = half.principal * 2.0
            if sigma["1"] < MIN_SIDE or math.cos(sigma["e1"]) > -1.0 + 1e-9:
                raise GeneratorError(f"Side {n + 1} is not convex (sigma = {sigma})")
        return PlanarHexagon(hexagon, {2: l2, 3: l3, 4: l4, 6: l6})

    return with_retries(build, rng, "planar hexagon")


def _shift(p: BoundaryPoint, offset: NDArray[np.float64]) -> BoundaryPoint:
    if isinstance(p, Infinity):
        return p
    return paravector(*(boundary_coords(p) + offset))


def perturb_side(
    hexagon: Hexagon, index: int, magnitude: float, rng: np.random.Generator
) -> Hexagon:
    """Move the head of one side's line by a random boundary offset.

    The offset stays inside the boundary of the hexagon's space, so an H^3
    hexagon keeps its e2 coordinates at zero.
    """
    dims = [0, 1] if isinstance(hexagon, HexagonH3) else [0, 1, 2]
    offset = np.zeros(3)
    offset[dims] = rng.normal(size=len(dims))
    offset *= magnitude / float(np.linalg.norm(offset))
    side = hexagon.sides[index]
    line = side.line if isinstance(side, OrientedFlag) else side
    moved = OrientedLine(line.src, _shift(line.dst, offset))
    new_side: Side = moved
    if isinstance(side, OrientedFlag):
        new_side = OrientedFlag(moved, side.p)
    sides = list(hexagon.sides)
    sides[index] = new_side
    logger.debug(f"Perturbed side {index} by {magnitude}")
    if isinstance(hexagon, HexagonH3):
        return HexagonH3(tuple(s for s in sides if isinstance(s, OrientedLine)))
    return AugmentedHexagonH4(tuple(sides))
