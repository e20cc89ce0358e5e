"""Distances, geodesics and the action of Vahlen matrices on H^4 objects.

Tangent vectors are handled as Euclidean unit directions in R^4; the metric
ds = |dx| / x3 is conformal, so angles agree with the Euclidean ones.
"""

import logging
import math

import numpy as np
from numpy.typing import NDArray

from hexagauss.clifford import Multivector, inverse, paravector
from hexagauss.hypgeo.objects import (
    FlagLineCross,
    GeometryError,
    InteriorPoint,
    OrientedFlag,
    OrientedLine,
    boundary_coords,
)
from hexagauss.vahlen import (
    BoundaryPoint,
    Infinity,
    VahlenMatrix,
    identity,
    inversion,
    mobius_apply,
    poincare_extend,
    translation,
)

logger = logging.getLogger(__name__)

HORIZONTAL_EPS = 1e-14


def distance(x: InteriorPoint, y: InteriorPoint) -> float:
    """Hyperbolic distance, from cosh d = 1 + |x - y|^2 / (2 x3 y3).

    Example:
        >>> e3 = InteriorPoint(np.array([0.0, 0.0, 0.0, 1.0]))
        >>> distance(e3, e3)
        0.0
    """
    gap = float(np.linalg.norm(x.coords - y.coords))
    return 2.0 * math.asinh(gap / (2.0 * math.sqrt(x.height * y.height)))


def point_at_height(height: float) -> InteriorPoint:
    """Return height * e3."""
    return InteriorPoint(np.array([0.0, 0.0, 0.0, height]))


def geodesic_from_point_direction(
    x: InteriorPoint, w: NDArray[np.float64]
) -> OrientedLine:
    """Oriented geodesic through x with Euclidean unit tangent w.

    Args:
        x: Point on the line.
        w: Unit direction [w0, w1, w2, w3].

    Returns:
        The line whose ``dst`` lies ahead in direction w.

    Raises:
        GeometryError: If w is not a unit vector.
    """
    w = np.asarray(w, dtype=np.float64)
    if w.shape != (4,) or abs(float(np.linalg.norm(w)) - 1.0) > 1e-9:
        raise GeometryError(f"Direction must be a unit 4-vector, got {w}")
    base = x.horizontal
    horizontal = w[:3]
    wh = float(np.linalg.norm(horizontal))
    if wh <= HORIZONTAL_EPS:
        foot = paravector(*base)
        if w[3] > 0:
            return OrientedLine(foot, Infinity())
        return OrientedLine(Infinity(), foot)

    hdir = horizontal / wh
    x3 = x.height
    offset = x3 * float(w[3]) / wh
    radius = math.hypot(offset, x3)
    # (offset + radius)(offset - radius) = -x3^2, used to avoid cancellation
    if offset >= 0:
        ahead = offset + radius
        behind = -(x3 * x3) / ahead
    else:
        behind = offset - radius
        ahead = -(x3 * x3) / behind
    return OrientedLine(
        paravector(*(base + behind * hdir)), paravector(*(base + ahead * hdir))
    )


def line_tangent(line: OrientedLine, x: InteriorPoint) -> NDArray[np.float64]:
    """Unit tangent of ``line`` at a point x on it, pointing toward ``dst``."""
    if isinstance(line.dst, Infinity):
        return np.array([0.0, 0.0, 0.0, 1.0])
    if isinstance(line.src, Infinity):
        return np.array([0.0, 0.0, 0.0, -1.0])
    u, v = boundary_coords(line.src), boundary_coords(line.dst)
    h = (v - u) / float(np.linalg.norm(v - u))
    rel = x.horizontal - (u + v) / 2.0
    along = float(np.dot(rel, h))
    tangent = np.concatenate([x.height * h, [-along]])
    return tangent / float(np.linalg.norm(tangent))


def line_to_vertical(line: OrientedLine) -> VahlenMatrix:
    """Isometry sending ``line.src`` to 0 and ``line.dst`` to infinity."""
    if isinstance(line.dst, Infinity):
        assert not isinstance(line.src, Infinity)
        return translation(-line.src)
    if isinstance(line.src, Infinity):
        return inversion() @ translation(-line.dst)
    shift = -inverse(line.src - line.dst)
    return translation(-shift) @ inversion() @ translation(-line.dst)


def apply_to_point(A: VahlenMatrix, x: InteriorPoint) -> InteriorPoint:
    """Image of an interior point."""
    return poincare_extend(A, x)


def apply_to_line(A: VahlenMatrix, line: OrientedLine) -> OrientedLine:
    """Image of an oriented line."""
    return OrientedLine(mobius_apply(A, line.src), mobius_apply(A, line.dst))


def apply_to_flag(A: VahlenMatrix, flag: OrientedFlag) -> OrientedFlag:
    """Image of a flag; orientation-preserving maps keep the arc convention."""
    return OrientedFlag(apply_to_line(A, flag.line), mobius_apply(A, flag.p))


def apply_to_cross(A: VahlenMatrix, cross: FlagLineCross) -> FlagLineCross:
    """Image of a flag-line cross."""
    return FlagLineCross(apply_to_flag(A, cross.flag), apply_to_line(A, cross.line))


def apply_to_side(
    A: VahlenMatrix, side: OrientedLine | OrientedFlag
) -> OrientedLine | OrientedFlag:
    """Image of a hexagon side (line or flag)."""
    if isinstance(side, OrientedFlag):
        return apply_to_flag(A, side)
    return apply_to_line(A, side)


def _finite(p: BoundaryPoint, what: str) -> Multivector:
    if isinstance(p, Infinity):
        raise GeometryError(f"{what} is at infinity")
    return p


def closest_point_on_line(line: OrientedLine, y: InteriorPoint) -> InteriorPoint:
    """Orthogonal projection of y onto ``line``."""
    M = line_to_vertical(line)
    image = apply_to_point(M, y)
    foot = point_at_height(float(np.linalg.norm(image.coords)))
    return apply_to_point(M.inverse(), foot)


def point_along_line(
    line: OrientedLine, x: InteriorPoint, step: float
) -> InteriorPoint:
    """Move a point of ``line`` by hyperbolic distance ``step`` toward ``dst``."""
    M = line_to_vertical(line)
    image = apply_to_point(M, x)
    moved = point_at_height(float(np.linalg.norm(image.coords)) * math.exp(step))
    return apply_to_point(M.inverse(), moved)


def line_parameter(line: OrientedLine, x: InteriorPoint) -> float:
    """Signed arclength coordinate of the projection of x onto ``line``."""
    image = apply_to_point(line_to_vertical(line), x)
    return math.log(float(np.linalg.norm(image.coords)))


def point_on_line(line: OrientedLine, s: float) -> InteriorPoint:
    """Point with arclength coordinate s (inverse of :func:`line_parameter`)."""
    back = line_to_vertical(line).inverse()
    return apply_to_point(back, point_at_height(math.exp(s)))


def opposite_arc_point(line: OrientedLine, p: BoundaryPoint) -> BoundaryPoint:
    """Reflect p across ``line`` inside the plane it spans with the line."""
    M = line_to_vertical(line)
    image = _finite(mobius_apply(M, p), "Flag point")
    return mobius_apply(M.inverse(), -image)


def is_identity_map(A: VahlenMatrix, atol: float = 1e-9) -> bool:
    """True if A = +-I."""
    return A.allclose(identity(), atol)
