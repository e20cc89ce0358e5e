"""Geometric objects of H^4 in the upper half-space model.

Boundary points are para-vectors of A_2 (or ``INF``); interior points are
para-vectors of A_3 with positive e3 part. Lines, flags and crosses are stored
through their ideal boundary data.

A flag is a line together with a third ideal point p of its plane. The plane is
oriented by (tangent of the line, in-plane normal pointing toward the ideal arc
that contains p).
"""

import logging
from dataclasses import dataclass
from typing import Any

import numpy as np
from numpy.typing import NDArray

from hexagauss.clifford import Multivector, paravector, paravector_coords
from hexagauss.vahlen import INF, BoundaryPoint, Infinity, boundary_points_close

logger = logging.getLogger(__name__)


class GeometryError(ValueError):
    """Raised for invalid geometric input."""


class DegenerateConfigurationError(GeometryError):
    """Raised when a construction has no unique answer."""


@dataclass(frozen=True, eq=False)
class InteriorPoint:
    """Point x0 + x1 e1 + x2 e2 + x3 e3 of H^4 with x3 > 0.

    Attributes:
        coords: Array [x0, x1, x2, x3].
    """

    coords: NDArray[np.float64]

    def __post_init__(self) -> None:
        """Validate and freeze the coordinates."""
        arr = np.array(self.coords, dtype=np.float64)
        if arr.shape != (4,):
            raise GeometryError(f"Interior point needs 4 coordinates, got {arr.shape}")
        if not arr[3] > 0:
            raise GeometryError(f"Interior point needs x3 > 0, got {arr[3]}")
        arr.setflags(write=False)
        object.__setattr__(self, "coords", arr)

    @classmethod
    def from_multivector(cls, x: Multivector) -> "InteriorPoint":
        """Build from a para-vector of A_3."""
        return cls(paravector_coords(x)[:4])

    def to_multivector(self) -> Multivector:
        """Return the para-vector of A_3."""
        return paravector(*self.coords, n=3)

    @property
    def horizontal(self) -> NDArray[np.float64]:
        """Return [x0, x1, x2]."""
        return self.coords[:3]

    @property
    def height(self) -> float:
        """Return x3."""
        return float(self.coords[3])


def boundary_coords(p: BoundaryPoint) -> NDArray[np.float64]:
    """Return [x0, x1, x2] of a finite boundary point."""
    if isinstance(p, Infinity):
        raise GeometryError("The point at infinity has no coordinates")
    return paravector_coords(p)[:3]


def boundary_point(coords: Any) -> BoundaryPoint:
    """Build a boundary point from ``"inf"`` or up to three coordinates."""
    if isinstance(coords, Infinity) or (isinstance(coords, str) and coords == "inf"):
        return INF
    if isinstance(coords, Multivector):
        return coords
    if isinstance(coords, str):
        raise GeometryError(f"Unknown boundary point {coords!r}")
    values = [float(v) for v in coords]
    if not 1 <= len(values) <= 3:
        raise GeometryError(f"Boundary point needs 1 to 3 coordinates, got {values}")
    return paravector(*values)


def point_to_json(p: BoundaryPoint) -> list[float] | str:
    """Encode a boundary point as ``[x0, x1, x2]`` or ``"inf"``."""
    if isinstance(p, Infinity):
        return "inf"
    return [float(v) for v in boundary_coords(p)]


def point_from_json(data: Any) -> BoundaryPoint:
    """Decode :func:`point_to_json` output."""
    if data == "inf":
        return INF
    if not isinstance(data, list):
        raise GeometryError(f"Boundary point must be a list or 'inf', got {data!r}")
    return boundary_point(data)


@dataclass(frozen=True, eq=False)
class OrientedLine:
    """Geodesic oriented from ``src`` to ``dst``."""

    src: BoundaryPoint
    dst: BoundaryPoint

    def __post_init__(self) -> None:
        """Reject coincident endpoints."""
        if boundary_points_close(self.src, self.dst, 1e-12):
            raise GeometryError(f"Line endpoints coincide: {self.src}")

    def reversed(self) -> "OrientedLine":
        """Return the line with opposite orientation."""
        return OrientedLine(self.dst, self.src)

    def is_vertical(self) -> bool:
        """True if one endpoint is infinite."""
        return isinstance(self.src, Infinity) or isinstance(self.dst, Infinity)

    def close_to(self, other: "OrientedLine", atol: float = 1e-9) -> bool:
        """Same endpoints in the same order."""
        return boundary_points_close(
            self.src, other.src, atol
        ) and boundary_points_close(self.dst, other.dst, atol)

    def to_dict(self) -> dict[str, Any]:
        """JSON encoding {"src", "dst"}."""
        return {"src": point_to_json(self.src), "dst": point_to_json(self.dst)}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "OrientedLine":
        """Decode :meth:`to_dict` output."""
        try:
            return cls(point_from_json(data["src"]), point_from_json(data["dst"]))
        except KeyError as e:
            raise GeometryError(f"Line is missing field {e}") from e


@dataclass(frozen=True, eq=False)
class OrientedFlag:
    """Oriented line inside an oriented 2-plane.

    Attributes:
        line: The oriented line.
        p: Ideal point of the plane off the line, marking the positive side.
    """

    line: OrientedLine
    p: BoundaryPoint

    def __post_init__(self) -> None:
        """Reject a marker point on the line."""
        for end in (self.line.src, self.line.dst):
            if boundary_points_close(self.p, end, 1e-12):
                raise GeometryError("Flag point must differ from the line endpoints")

    def with_plane_reversed(self) -> "OrientedFlag":
        """Same line, opposite plane orientation."""
        from hexagauss.hypgeo.metric import opposite_arc_point

        return OrientedFlag(self.line, opposite_arc_point(self.line, self.p))

    def with_line_reversed(self) -> "OrientedFlag":
        """Reversed line, same plane orientation."""
        from hexagauss.hypgeo.metric import opposite_arc_point

        return OrientedFlag(self.line.reversed(), opposite_arc_point(self.line, self.p))

    def with_both_reversed(self) -> "OrientedFlag":
        """Reversed line and reversed plane orientation."""
        return OrientedFlag(self.line.reversed(), self.p)

    def to_dict(self) -> dict[str, Any]:
        """JSON encoding {"line", "p"}."""
        return {"line": self.line.to_dict(), "p": point_to_json(self.p)}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "OrientedFlag":
        """Decode :meth:`to_dict` output."""
        try:
            return cls(OrientedLine.from_dict(data["line"]), point_from_json(data["p"]))
        except KeyError as e:
            raise GeometryError(f"Flag is missing field {e}") from e


Side = OrientedLine | OrientedFlag


def side_from_dict(data: dict[str, Any]) -> Side:
    """Decode a line or flag from its JSON encoding."""
    if "line" in data:
        return OrientedFlag.from_dict(data)
    return OrientedLine.from_dict(data)


@dataclass(frozen=True, eq=False)
class FlagLineCross:
    """A flag together with a line orthogonal to it."""

    flag: OrientedFlag
    line: OrientedLine


@dataclass(frozen=True, eq=False)
class OrthoFrame:
    """Orthonormal frame of H^4 at ``base``.

    Attributes:
        base: Foot point.
        vectors: 4 x 4 array whose rows are Euclidean unit tangent directions.
    """

    base: InteriorPoint
    vectors: NDArray[np.float64]

    def __post_init__(self) -> None:
        """Check the Gram matrix."""
        arr = np.array(self.vectors, dtype=np.float64)
        if arr.shape != (4, 4):
            raise GeometryError(f"Frame needs 4 vectors of length 4, got {arr.shape}")
        gram_error = float(np.max(np.abs(arr @ arr.T - np.eye(4))))
        if gram_error > 1e-8:
            raise GeometryError(
                f"Frame is not orthonormal (Gram error {gram_error:.2e})"
            )
        arr.setflags(write=False)
        object.__setattr__(self, "vectors", arr)

    def orientation(self) -> int:
        """Sign of det[v1, v2, v3, v4] against the standard (1, e1, e2, e3)."""
        return 1 if np.linalg.det(self.vectors) > 0 else -1


def _one() -> Multivector:
    return Multivector.scalar(1.0)


L_H = OrientedLine(-_one(), _one())
L_V = OrientedLine(Multivector.zero(), INF)
F_H = OrientedFlag(L_H, Multivector.basis("e1"))
F_V = OrientedFlag(L_V, -Multivector.basis("e2"))
STANDARD_CROSS = FlagLineCross(F_H, L_V)
