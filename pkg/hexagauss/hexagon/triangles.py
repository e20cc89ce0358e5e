"""Classical Delambre-Gauss formulas.

Spherical and hyperbolic triangles, and planar right-angled hexagons.

A triangle has sides a, b, c opposite its angles alpha, beta, gamma. The
spherical formulas

    cos((a+b)/2) sin(gamma/2) = cos((alpha+beta)/2) cos(c/2)
    sin((a+b)/2) sin(gamma/2) = cos((alpha-beta)/2) sin(c/2)
    cos((a-b)/2) cos(gamma/2) = sin((alpha+beta)/2) cos(c/2)
    sin((a-b)/2) cos(gamma/2) = sin((alpha-beta)/2) sin(c/2)

carry over to hyperbolic triangles with hyperbolic functions of the sides.
Napier's analogies and the law of tangents are products of pairs of them.
Every formula is checked for all three cyclic relabelings of the triangle.
"""

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass
from typing import Literal

import numpy as np
from numpy.typing import NDArray

from hexagauss.config import resolve_tolerance
from hexagauss.hexagon.formulas import VerificationReport
from hexagauss.hexagon.generators import (
    PlanarHexagon,
    as_rng,
    random_planar_hexagon,
    with_retries,
)
from hexagauss.hypgeo.half_distance import complex_half_length
from hexagauss.hypgeo.objects import DegenerateConfigurationError

logger = logging.getLogger(__name__)

TriangleKind = Literal["spherical", "hyperbolic", "planar-hexagon"]

MIN_VOLUME = 1e-6
MIN_AREA = 1e-6


def _residual(lhs: float, rhs: float) -> float:
    return abs(lhs - rhs) / (1.0 + max(abs(lhs), abs(rhs)))


@dataclass(frozen=True)
class Triangle:
    """Side lengths and angles of a triangle; side ``sides[i]`` faces ``angles[i]``."""

    sides: tuple[float, float, float]
    angles: tuple[float, float, float]

    def rotations(self) -> list["Triangle"]:
        """The three cyclic relabelings."""
        out = []
        for k in range(3):
            s = self.sides[k:] + self.sides[:k]
            t = self.angles[k:] + self.angles[:k]
            out.append(Triangle((s[0], s[1], s[2]), (t[0], t[1], t[2])))
        return out


def _vector_angle(u: NDArray[np.float64], v: NDArray[np.float64]) -> float:
    return math.atan2(float(np.linalg.norm(np.cross(u, v))), float(np.dot(u, v)))


def spherical_triangle(
    A: NDArray[np.float64], B: NDArray[np.float64], C: NDArray[np.float64]
) -> Triangle:
    """Triangle on the unit sphere with the given unit-vector vertices.

    Raises:
        DegenerateConfigurationError: If the vertices are nearly coplanar
            with the origin.

    Example:
        >>> t = spherical_triangle(*np.eye(3))
        >>> round(t.angles[0], 12) == round(math.pi / 2, 12)
        True
    """
    volume = float(np.linalg.det(np.stack([A, B, C])))
    if abs(volume) < MIN_VOLUME:
        raise DegenerateConfigurationError(
            f"Spherical triangle is degenerate (volume {volume:.2e})"
        )

    def angle_at(
        P: NDArray[np.float64], Q: NDArray[np.float64], R: NDArray[np.float64]
    ) -> float:
        return _vector_angle(Q - float(np.dot(P, Q)) * P, R - float(np.dot(P, R)) * P)

    sides = (_vector_angle(B, C), _vector_angle(C, A), _vector_angle(A, B))
    angles = (angle_at(A, B, C), angle_at(B, C, A), angle_at(C, A, B))
    return Triangle(sides, angles)


def random_spherical_vertices(seed: int | np.random.Generator) -> NDArray[np.float64]:
    """Three random unit vectors (rows) spanning a non-degenerate triangle."""
    rng = as_rng(seed)

    def build(r: np.random.Generator) -> NDArray[np.float64]:
        points = r.normal(size=(3, 3))
        points /= np.linalg.norm(points, axis=1, keepdims=True)
        spherical_triangle(*points)
        return points

    return with_retries(build, rng, "spherical triangle")


def random_spherical_triangle(seed: int | np.random.Generator) -> Triangle:
    """Spherical triangle with three random unit-vector vertices."""
    return spherical_triangle(*random_spherical_vertices(seed))


def _half_plane_distance(z: complex, w: complex) -> float:
    return 2.0 * math.asinh(abs(z - w) / (2.0 * math.sqrt(z.imag * w.imag)))


def _tangent_toward(z: complex, w: complex) -> complex:
    if abs(z.real - w.real) <= 1e-12 * (1.0 + abs(z) + abs(w)):
        t = 1j
    else:
        c = (abs(w) ** 2 - abs(z) ** 2) / (2.0 * (w.real - z.real))
        t = 1j * (z - c)
    if (t.conjugate() * (w - z)).real < 0:
        t = -t
    return t / abs(t)


def _tangent_angle(z: complex, w1: complex, w2: complex) -> float:
    q = _tangent_toward(z, w1).conjugate() * _tangent_toward(z, w2)
    return math.atan2(abs(q.imag), q.real)


def hyperbolic_triangle(A: complex, B: complex, C: complex) -> Triangle:
    """Triangle in the upper half-plane with the given vertices.

    Raises:
        DegenerateConfigurationError: If a vertex is not in the upper
            half-plane or the area is below 1e-6.
    """
    if min(A.imag, B.imag, C.imag) <= 0:
        raise DegenerateConfigurationError("Vertices must lie in the upper half-plane")
    sides = (
        _half_plane_distance(B, C),
        _half_plane_distance(C, A),
        _half_plane_distance(A, B),
    )
    angles = (_tangent_angle(A, B, C), _tangent_angle(B, C, A), _tangent_angle(C, A, B))
    area = math.pi - sum(angles)
    if area < MIN_AREA:
        raise DegenerateConfigurationError(
            f"Hyperbolic triangle is degenerate (area {area:.2e})"
        )
    return Triangle(sides, angles)


def random_hyperbolic_vertices(seed: int | np.random.Generator) -> list[complex]:
    """Three random points of the upper half-plane spanning a proper triangle."""
    rng = as_rng(seed)

    def build(r: np.random.Generator) -> list[complex]:
        points = [complex(r.normal(), math.exp(0.5 * r.normal())) for _ in range(3)]
        hyperbolic_triangle(*points)
        return points

    return with_retries(build, rng, "hyperbolic triangle")


def random_hyperbolic_triangle(seed: int | np.random.Generator) -> Triangle:
    """Hyperbolic triangle with three random vertices in the upper half-plane."""
    return hyperbolic_triangle(*random_hyperbolic_vertices(seed))


def _spherical_once(t: Triangle) -> dict[str, float]:
    a, b, c = t.sides
    al, be, ga = t.angles
    s, co = math.sin, math.cos
    return {
        "delambre1": _residual(
            co((a + b) / 2) * s(ga / 2),
            co((al + be) / 2) * co(c / 2),
        ),
        "delambre2": _residual(
            s((a + b) / 2) * s(ga / 2),
            co((al - be) / 2) * s(c / 2),
        ),
        "delambre3": _residual(
            co((a - b) / 2) * co(ga / 2),
            s((al + be) / 2) * co(c / 2),
        ),
        "delambre4": _residual(
            s((a - b) / 2) * co(ga / 2),
            s((al - be) / 2) * s(c / 2),
        ),
        "napier1": _residual(
            s((al - be) / 2) * s(c / 2) * co((a - b) / 2),
            s((a - b) / 2) * co(c / 2) * s((al + be) / 2),
        ),
        "napier2": _residual(
            co((al - be) / 2) * s(c / 2) * co((a + b) / 2),
            s((a + b) / 2) * co(c / 2) * co((al + be) / 2),
        ),
        "napier3": _residual(
            s((a - b) / 2) * co(ga / 2) * co((al - be) / 2),
            s((al - be) / 2) * s((a + b) / 2) * s(ga / 2),
        ),
        "napier4": _residual(
            co((a - b) / 2) * co(ga / 2) * co((al + be) / 2),
            s((al + be) / 2) * co((a + b) / 2) * s(ga / 2),
        ),
        "tangents": _residual(
            s((a - b) / 2) * co((a + b) / 2) * s((al + be) / 2) * co((al - be) / 2),
            s((al - be) / 2) * co((al + be) / 2) * s((a + b) / 2) * co((a - b) / 2),
        ),
    }


def _hyperbolic_once(t: Triangle) -> dict[str, float]:
    a, b, c = t.sides
    al, be, ga = t.angles
    s, co, sh, ch = math.sin, math.cos, math.sinh, math.cosh
    return {
        "delambre1": _residual(
            ch((a + b) / 2) * s(ga / 2),
            co((al + be) / 2) * ch(c / 2),
        ),
        "delambre2": _residual(
            sh((a + b) / 2) * s(ga / 2),
            co((al - be) / 2) * sh(c / 2),
        ),
        "delambre3": _residual(
            ch((a - b) / 2) * co(ga / 2),
            s((al + be) / 2) * ch(c / 2),
        ),
        "delambre4": _residual(
            sh((a - b) / 2) * co(ga / 2),
            s((al - be) / 2) * sh(c / 2),
        ),
        "napier1": _residual(
            s((al - be) / 2) * sh(c / 2) * ch((a - b) / 2),
            sh((a - b) / 2) * ch(c / 2) * s((al + be) / 2),
        ),
        "napier2": _residual(
            co((al - be) / 2) * sh(c / 2) * ch((a + b) / 2),
            sh((a + b) / 2) * ch(c / 2) * co((al + be) / 2),
        ),
        "napier3": _residual(
            sh((a - b) / 2) * co(ga / 2) * co((al - be) / 2),
            s((al - be) / 2) * sh((a + b) / 2) * s(ga / 2),
        ),
        "napier4": _residual(
            ch((a - b) / 2) * co(ga / 2) * co((al + be) / 2),
            s((al + be) / 2) * ch((a + b) / 2) * s(ga / 2),
        ),
        "tangents": _residual(
            sh((a - b) / 2) * ch((a + b) / 2) * s((al + be) / 2) * co((al - be) / 2),
            s((al - be) / 2) * co((al + be) / 2) * sh((a + b) / 2) * ch((a - b) / 2),
        ),
    }


def _over_rotations(
    t: Triangle, once: Callable[[Triangle], dict[str, float]]
) -> dict[str, float]:
    merged: dict[str, float] = {}
    for rotated in t.rotations():
        for name, value in once(rotated).items():
            merged[name] = max(merged.get(name, 0.0), value)
    return merged


def spherical_residuals(t: Triangle) -> dict[str, float]:
    """Delambre, Napier and law-of-tangents residuals of a spherical triangle."""
    return _over_rotations(t, _spherical_once)


def hyperbolic_residuals(t: Triangle) -> dict[str, float]:
    """Delambre, Napier and law-of-tangents residuals of a hyperbolic triangle."""
    return _over_rotations(t, _hyperbolic_once)


def sum_remark_holds(t: Triangle) -> bool:
    """On the sphere, a + b > pi exactly when alpha + beta > pi (all relabelings)."""
    return all(
        (r.sides[0] + r.sides[1] > math.pi) == (r.angles[0] + r.angles[1] > math.pi)
        for r in t.rotations()
    )


def measured_lengths(planar: PlanarHexagon) -> list[float]:
    """Side lengths l1, ..., l6 read from the complex side lengths."""
    lines = planar.hexagon.lines
    lengths = []
    for n in range(6):
        half = complex_half_length(lines[n - 1], lines[n], lines[(n + 1) % 6])
        lengths.append(2.0 * half.principal["1"])
    return lengths


def planar_hexagon_residuals(planar: PlanarHexagon) -> dict[str, float]:
    """Delambre-Gauss residuals of a convex right-angled hexagon of the plane.

    Also reports ``design``, the largest gap between measured side lengths
    and the lengths the hexagon was built from, and ``ordering``, which is 0
    when l1 < l3 exactly if l4 < l6, else 1.
    """
    l1, l2, l3, l4, l5, l6 = measured_lengths(planar)
    s, c = math.sinh, math.cosh
    measured = {1: l1, 2: l2, 3: l3, 4: l4, 5: l5, 6: l6}
    design = max(
        (_residual(measured[k], v) for k, v in planar.lengths.items()), default=0.0
    )
    return {
        "prah1": _residual(c((l1 + l3) / 2) * s(l2 / 2), c((l4 + l6) / 2) * s(l5 / 2)),
        "prah2": _residual(s((l1 + l3) / 2) * s(l2 / 2), c((l4 - l6) / 2) * c(l5 / 2)),
        "prah3": _residual(c((l1 - l3) / 2) * c(l2 / 2), s((l4 + l6) / 2) * s(l5 / 2)),
        "prah4": _residual(s((l1 - l3) / 2) * c(l2 / 2), s((l4 - l6) / 2) * c(l5 / 2)),
        "design": design,
        "ordering": 0.0 if (l1 < l3) == (l4 < l6) else 1.0,
    }


def _split(
    residuals: dict[str, float], prefix: str
) -> tuple[dict[str, float], dict[str, float]]:
    formulas = {k: v for k, v in residuals.items() if k.startswith(prefix)}
    entries = {k: v for k, v in residuals.items() if not k.startswith(prefix)}
    return formulas, entries


def verify_triangle_formulas(
    kind: TriangleKind, seed: int | np.random.Generator, tolerance: float | None = None
) -> VerificationReport:
    """Generate one random instance of ``kind`` and check its classical formulas.

    Args:
        kind: ``"spherical"``, ``"hyperbolic"`` or ``"planar-hexagon"``.
        seed: Integer seed or random generator.
        tolerance: Residual threshold; defaults to :func:`resolve_tolerance`.

    Returns:
        Report with the four Delambre-Gauss formulas under ``formulas`` and the
        corollaries under ``entries``. The sign is always +1.

    Raises:
        ValueError: If ``kind`` is unknown.
        GeneratorError: If no valid instance was found.
    """
    if kind == "spherical":
        return triangle_report("spherical", random_spherical_triangle(seed), tolerance)
    if kind == "hyperbolic":
        triangle = random_hyperbolic_triangle(seed)
        return triangle_report("hyperbolic", triangle, tolerance)
    if kind == "planar-hexagon":
        return planar_hexagon_report(random_planar_hexagon(seed), tolerance)
    raise ValueError(f"Unknown triangle kind: {kind!r}")


def _report(
    kind: str,
    formulas: dict[str, float],
    entries: dict[str, float],
    tol: float,
    notes: tuple[str, ...] = (),
) -> VerificationReport:
    passed = all(v <= tol for v in [*formulas.values(), *entries.values()])
    if not passed:
        logger.warning(f"{kind} formulas fail: {formulas} {entries}")
    return VerificationReport(kind, formulas, entries, 1, (), tol, passed, notes=notes)


def triangle_report(
    kind: Literal["spherical", "hyperbolic"],
    triangle: Triangle,
    tolerance: float | None = None,
) -> VerificationReport:
    """Check the classical formulas on a given triangle."""
    tol = resolve_tolerance(tolerance)
    if kind == "spherical":
        formulas, entries = _split(spherical_residuals(triangle), "delambre")
        entries["sum_remark"] = 0.0 if sum_remark_holds(triangle) else 1.0
    else:
        formulas, entries = _split(hyperbolic_residuals(triangle), "delambre")
    return _report(kind, formulas, entries, tol)


def planar_hexagon_report(
    planar: PlanarHexagon, tolerance: float | None = None
) -> VerificationReport:
    """Check the planar-hexagon formulas on a given convex hexagon."""
    tol = resolve_tolerance(tolerance)
    formulas, entries = _split(planar_hexagon_residuals(planar), "prah")
    return _report("planar-hexagon", formulas, entries, tol)
