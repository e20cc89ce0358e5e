"""Common perpendiculars of lines in H^4 and the augmentation of line triples.

After moving the first line to the vertical line over 0, a second line with
finite endpoints P and Q spans, together with the vertical line, a copy of H^3
over the plane through 0, P and Q. Identifying that plane with C, the common
perpendicular is the semicircle with endpoints +-m where m^2 = P Q. The
numerical :func:`minimize_line_distance` is kept as an independent check.
"""

import logging
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray
from scipy.optimize import minimize

from hexagauss.clifford import paravector
from hexagauss.config import SETTINGS
from hexagauss.hypgeo.metric import (
    apply_to_point,
    closest_point_on_line,
    distance,
    line_parameter,
    line_to_vertical,
    point_at_height,
    point_on_line,
)
from hexagauss.hypgeo.objects import (
    DegenerateConfigurationError,
    InteriorPoint,
    OrientedFlag,
    OrientedLine,
    boundary_coords,
)
from hexagauss.vahlen import BoundaryPoint, Infinity, VahlenMatrix, mobius_apply

logger = logging.getLogger(__name__)

MIN_SEPARATION = 1e-6
COPLANAR_EPS = 1e-8


@dataclass(frozen=True)
class Perpendicular:
    """Common perpendicular together with its feet.

    Attributes:
        line: Perpendicular oriented from the first line toward the second.
        foot1: Foot on the first line.
        foot2: Foot on the second line.
        distance: Hyperbolic distance between the feet.
    """

    line: OrientedLine
    foot1: InteriorPoint
    foot2: InteriorPoint
    distance: float


def _finite_image(M: VahlenMatrix, p: BoundaryPoint) -> NDArray[np.float64]:
    image = mobius_apply(M, p)
    if isinstance(image, Infinity):
        raise DegenerateConfigurationError("Lines are asymptotic (shared endpoint)")
    coords = boundary_coords(image)
    if float(np.linalg.norm(coords)) <= SETTINGS.atol:
        raise DegenerateConfigurationError("Lines are asymptotic (shared endpoint)")
    return coords


def _complement(f1: NDArray[np.float64]) -> NDArray[np.float64]:
    # stay in the (x0, x1) plane when possible so H^3 input keeps x2 = 0
    candidate = np.array([-f1[1], f1[0], 0.0])
    if float(np.linalg.norm(candidate)) < 0.5:
        candidate = np.array([0.0, 0.0, 1.0]) - f1[2] * f1
    return candidate / float(np.linalg.norm(candidate))


def common_perpendicular_feet(l1: OrientedLine, l2: OrientedLine) -> Perpendicular:
    """Common perpendicular of two lines with its feet.

    Args:
        l1: First line.
        l2: Second line.

    Returns:
        The perpendicular, oriented from ``l1`` to ``l2``, and its feet.

    Raises:
        DegenerateConfigurationError: If the lines share an endpoint or
            intersect.
    """
    M = line_to_vertical(l1)
    P = _finite_image(M, l2.src)
    Q = _finite_image(M, l2.dst)

    size_p = float(np.linalg.norm(P))
    f1 = P / size_p
    rest = Q - float(np.dot(Q, f1)) * f1
    if float(np.linalg.norm(rest)) > SETTINGS.atol * float(np.linalg.norm(Q)):
        f2 = rest / float(np.linalg.norm(rest))
    elif float(np.dot(Q, f1)) < 0:
        raise DegenerateConfigurationError("Lines intersect")
    else:
        f2 = _complement(f1)

    pq = complex(size_p * float(np.dot(Q, f1)), size_p * float(np.dot(Q, f2)))
    root = complex(np.sqrt(pq))
    m = root.real * f1 + root.imag * f2
    height = abs(root)

    image_l2 = OrientedLine(paravector(*P), paravector(*Q))
    near = point_at_height(height)
    far = closest_point_on_line(image_l2, near)
    gap = distance(near, far)
    if gap < MIN_SEPARATION:
        raise DegenerateConfigurationError(f"Lines intersect (distance {gap:.3e})")
    if float(np.dot(far.horizontal, m)) < 0:
        m = -m

    back = M.inverse()
    line = OrientedLine(
        mobius_apply(back, paravector(*(-m))), mobius_apply(back, paravector(*m))
    )
    return Perpendicular(
        line, apply_to_point(back, near), apply_to_point(back, far), gap
    )


def common_perpendicular(l1: OrientedLine, l2: OrientedLine) -> OrientedLine:
    """Oriented common perpendicular from ``l1`` to ``l2``.

    Raises:
        DegenerateConfigurationError: If the lines share an endpoint or
            intersect.
    """
    return common_perpendicular_feet(l1, l2).line


def minimize_line_distance(
    l1: OrientedLine, l2: OrientedLine
) -> tuple[float, float, float]:
    """Numerically minimize the distance between points of two lines.

    Points are parametrized by signed arclength along each line and the
    objective is cosh(d) - 1, which is smooth near the minimum.

    Returns:
        Arclength parameters (s, t) of the closest points and their distance.
    """
    t0 = 0.0
    s0 = line_parameter(l1, point_on_line(l2, t0))
    t0 = line_parameter(l2, point_on_line(l1, s0))

    def objective(params: NDArray[np.float64]) -> float:
        x = point_on_line(l1, float(params[0]))
        y = point_on_line(l2, float(params[1]))
        gap = x.coords - y.coords
        return float(np.dot(gap, gap)) / (2.0 * x.height * y.height)

    result = minimize(
        objective,
        x0=np.array([s0, t0]),
        method="Nelder-Mead",
        options={"xatol": 1e-12, "fatol": 1e-16, "maxiter": 4000},
    )
    if not result.success:
        logger.warning(f"Line distance minimization did not converge: {result.message}")
    s, t = (float(v) for v in result.x)
    gap = distance(point_on_line(l1, s), point_on_line(l2, t))
    return s, t, gap


def augment(
    l_prev: OrientedLine, l_mid: OrientedLine, l_next: OrientedLine
) -> tuple[OrientedFlag, OrientedFlag]:
    """The two flags on ``l_mid`` whose plane is perpendicular to both neighbours.

    Args:
        l_prev: Line meeting ``l_mid`` at a right angle.
        l_mid: Middle line.
        l_next: Line meeting ``l_mid`` at a right angle.

    Returns:
        The flags (Pi+, Pi-), differing only in plane orientation.

    Raises:
        DegenerateConfigurationError: If the neighbours are not perpendicular
            to ``l_mid`` or the three lines lie in a common plane.
    """
    M = line_to_vertical(l_mid)
    directions = []
    for neighbour in (l_prev, l_next):
        src = _finite_image(M, neighbour.src)
        dst = _finite_image(M, neighbour.dst)
        residual = float(np.linalg.norm(src + dst)) / float(np.linalg.norm(dst))
        if residual > SETTINGS.ortho_tol:
            raise DegenerateConfigurationError(
                "Neighbour is not perpendicular to the middle line "
                f"(residual {residual:.3e})"
            )
        directions.append(dst / float(np.linalg.norm(dst)))

    normal = np.cross(directions[0], directions[1])
    size = float(np.linalg.norm(normal))
    if size < COPLANAR_EPS:
        raise DegenerateConfigurationError("S1 family: augmentation not unique")
    normal = normal / size
    back = M.inverse()
    plus = OrientedFlag(l_mid, mobius_apply(back, paravector(*normal)))
    minus = OrientedFlag(l_mid, mobius_apply(back, paravector(*(-normal))))
    return plus, minus


def perpendicular_residual(l1: OrientedLine, l2: OrientedLine) -> float:
    """Relative failure of two lines to meet at a right angle (inf if asymptotic)."""
    M = line_to_vertical(l1)
    try:
        src = _finite_image(M, l2.src)
        dst = _finite_image(M, l2.dst)
    except DegenerateConfigurationError:
        return float("inf")
    scale = max(float(np.linalg.norm(src)), float(np.linalg.norm(dst)))
    return float(np.linalg.norm(src + dst)) / scale
