"""Flag-line crosses, their normalizing isometries and orthonormal frames.

Every cross (F, L) is carried to the standard cross (F_h, L_v) by an explicit
product N = R^-1 S M: M sends the cross line to the vertical line, S rescales
the flag line to the unit semicircle and R = diag(a) rotates it onto the real
axis. The rotation part a is read from the unit tangent of the flag data with
:func:`hexagauss.rotations.read_euler_from_tangent`.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from hexagauss.clifford import Multivector, paravector
from hexagauss.config import SETTINGS
from hexagauss.hypgeo.metric import (
    apply_to_point,
    geodesic_from_point_direction,
    line_tangent,
    line_to_vertical,
    point_at_height,
)
from hexagauss.hypgeo.objects import (
    DegenerateConfigurationError,
    FlagLineCross,
    GeometryError,
    InteriorPoint,
    OrientedFlag,
    OrientedLine,
    OrthoFrame,
    boundary_coords,
)
from hexagauss.rotations import UnitTangent, read_euler_from_tangent
from hexagauss.transcend import exp
from hexagauss.vahlen import (
    BoundaryPoint,
    Infinity,
    VahlenMatrix,
    diagonal,
    mobius_apply,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class _CrossData:
    """Boundary data of a cross after its line is made vertical."""

    to_vertical: VahlenMatrix
    radius: float
    direction: NDArray[np.float64]
    normal: NDArray[np.float64]
    residual: float


def _image_coords(M: VahlenMatrix, p: BoundaryPoint, what: str) -> NDArray[np.float64]:
    image = mobius_apply(M, p)
    if isinstance(image, Infinity):
        raise DegenerateConfigurationError(f"{what} meets the cross line at infinity")
    coords = boundary_coords(image)
    if float(np.linalg.norm(coords)) <= SETTINGS.atol:
        raise DegenerateConfigurationError(f"{what} meets the cross line at its source")
    return coords


def _unit(v: NDArray[np.float64], what: str) -> NDArray[np.float64]:
    size = float(np.linalg.norm(v))
    if size <= SETTINGS.atol:
        raise DegenerateConfigurationError(f"{what} has no direction")
    return v / size


def _cross_data(flag: OrientedFlag, line: OrientedLine) -> _CrossData:
    M = line_to_vertical(line)
    src = _image_coords(M, flag.line.src, "Flag line")
    dst = _image_coords(M, flag.line.dst, "Flag line")
    q = _image_coords(M, flag.p, "Flag point")
    radius = math.sqrt(float(np.linalg.norm(src)) * float(np.linalg.norm(dst)))
    residual = (
        max(
            float(np.linalg.norm(src + dst)),
            abs(float(np.linalg.norm(src)) - float(np.linalg.norm(dst))),
            abs(float(np.linalg.norm(q)) - radius),
        )
        / radius
    )
    direction = _unit(dst - src, "Flag line")
    scaled = q / radius
    normal = _unit(scaled - float(np.dot(scaled, direction)) * direction, "Flag plane")
    return _CrossData(M, radius, direction, normal, residual)


def cross_residual(flag: OrientedFlag, line: OrientedLine) -> float:
    """Relative failure of (flag, line) to be a flag-line cross.

    Zero when the line meets the flag line and is perpendicular to the flag
    plane. Raises :class:`DegenerateConfigurationError` when the flag touches
    an endpoint of the line.
    """
    return _cross_data(flag, line).residual


def normalize_cross(cross: FlagLineCross, strict: bool = True) -> VahlenMatrix:
    """Isometry carrying ``cross`` onto the standard cross (F_h, L_v).

    Args:
        cross: Flag-line cross.
        strict: Reject inputs whose cross residual exceeds the orthogonality
            tolerance.

    Returns:
        N with N(cross.line) = L_v and N(cross.flag) equivalent to F_h.

    Raises:
        DegenerateConfigurationError: If the input is not a cross.
    """
    data = _cross_data(cross.flag, cross.line)
    if strict and data.residual > SETTINGS.ortho_tol:
        raise DegenerateConfigurationError(
            f"Flag and line do not form a cross (residual {data.residual:.3e})"
        )
    scale = diagonal(Multivector.scalar(1.0 / math.sqrt(data.radius)))
    tangent = UnitTangent(paravector(*data.direction), paravector(*data.normal))
    a, _ = read_euler_from_tangent(tangent)
    return diagonal(a).inverse() @ scale @ data.to_vertical


def isometry_between_crosses(
    c1: FlagLineCross, c2: FlagLineCross, strict: bool = True
) -> VahlenMatrix:
    """The unique orientation-preserving isometry taking c1 to c2, up to sign.

    Example:
        >>> from hexagauss.hypgeo.objects import STANDARD_CROSS
        >>> from hexagauss.vahlen import identity
        >>> A = isometry_between_crosses(STANDARD_CROSS, STANDARD_CROSS)
        >>> A.allclose(identity(), 1e-12)
        True
    """
    return normalize_cross(c2, strict).inverse() @ normalize_cross(c1, strict)


def normalize_line_pair(
    line: OrientedLine, prev: OrientedLine, strict: bool = True
) -> VahlenMatrix:
    """Isometry of H^3 taking ``line`` to L_v and the perpendicular ``prev`` to L_h.

    Both lines must lie in the upper half-space over R + R e1; the result is
    then a matrix with entries in R + R e1.

    Raises:
        DegenerateConfigurationError: If the lines are not perpendicular or
            leave the H^3 slice.
    """
    M = line_to_vertical(line)
    src = _image_coords(M, prev.src, "Previous line")
    dst = _image_coords(M, prev.dst, "Previous line")
    radius = math.sqrt(float(np.linalg.norm(src)) * float(np.linalg.norm(dst)))
    residual = max(float(np.linalg.norm(src + dst)), abs(src[2]) + abs(dst[2])) / radius
    if strict and residual > SETTINGS.ortho_tol:
        raise DegenerateConfigurationError(
            f"Lines are not perpendicular in H^3 (residual {residual:.3e})"
        )
    direction = _unit(dst - src, "Previous line")
    phi = math.atan2(direction[1], direction[0])
    rotation = diagonal(exp(Multivector.basis("e1") * (phi / 2.0)))
    scale = diagonal(Multivector.scalar(1.0 / math.sqrt(radius)))
    return rotation.inverse() @ scale @ M


def cross_foot(cross: FlagLineCross) -> InteriorPoint:
    """Intersection point of the flag line and the cross line."""
    data = _cross_data(cross.flag, cross.line)
    return apply_to_point(data.to_vertical.inverse(), point_at_height(data.radius))


def cross_to_frame(cross: FlagLineCross, strict: bool = True) -> OrthoFrame:
    """Positively oriented frame (v1, v2, v3, v4) of a cross.

    v1 is the tangent of the flag line, v2 points inside the flag plane toward
    the arc of ``p``, v4 is the tangent of the cross line and v3 completes a
    positive frame.

    Raises:
        DegenerateConfigurationError: If the input is not a cross.
    """
    data = _cross_data(cross.flag, cross.line)
    if strict and data.residual > SETTINGS.ortho_tol:
        raise DegenerateConfigurationError(
            f"Flag and line do not form a cross (residual {data.residual:.3e})"
        )
    back = data.to_vertical.inverse()
    foot = apply_to_point(back, point_at_height(data.radius))
    in_plane = OrientedLine(
        mobius_apply(back, paravector(*(-data.radius * data.normal))),
        mobius_apply(back, paravector(*(data.radius * data.normal))),
    )
    t1 = line_tangent(cross.flag.line, foot)
    t2 = line_tangent(in_plane, foot)
    t4 = line_tangent(cross.line, foot)
    _, _, vh = np.linalg.svd(np.vstack([t1, t2, t4]))
    t3 = vh[-1]
    if np.linalg.det(np.vstack([t1, t2, t3, t4])) < 0:
        t3 = -t3
    return OrthoFrame(foot, np.vstack([t1, t2, t3, t4]))


def frame_to_cross(frame: OrthoFrame) -> FlagLineCross:
    """Cross spanned by a positively oriented frame.

    Raises:
        GeometryError: If the frame is negatively oriented.
    """
    if frame.orientation() < 0:
        raise GeometryError("Frame is negatively oriented")
    v1, v2, _, v4 = frame.vectors
    l1 = geodesic_from_point_direction(frame.base, v1)
    l2 = geodesic_from_point_direction(frame.base, v2)
    l4 = geodesic_from_point_direction(frame.base, v4)
    return FlagLineCross(OrientedFlag(l1, l2.dst), l4)


def flags_equivalent(f1: OrientedFlag, f2: OrientedFlag, atol: float = 1e-9) -> bool:
    """True if both flags have the same oriented line and oriented plane."""
    if not f1.line.close_to(f2.line, atol):
        return False
    M = line_to_vertical(f1.line)
    d1 = _unit(_image_coords(M, f1.p, "Flag point"), "Flag point")
    d2 = _unit(_image_coords(M, f2.p, "Flag point"), "Flag point")
    return float(np.linalg.norm(d1 - d2)) <= math.sqrt(atol)


def crosses_equivalent(
    c1: FlagLineCross, c2: FlagLineCross, atol: float = 1e-9
) -> bool:
    """True if the crosses agree as oriented objects."""
    return c1.line.close_to(c2.line, atol) and flags_equivalent(c1.flag, c2.flag, atol)
