"""JSON scene files.

A scene file holds a batch of generated instances together with what is
needed to regenerate them:

    {
      "rng": "numpy.random.Philox",
      "seed": 7,
      "space": "h4",
      "scenes": [{"space": "h4", "seed": 7, "index": 0, "sides": [...]}, ...]
    }

Hexagon scenes carry their sides (lines as {"src", "dst"}, flags as
{"line", "p"}), triangle scenes their vertices, planar hexagons their sides
and design lengths. Files are written with sorted keys so equal batches give
identical bytes.
"""

import json
import logging
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from hexagauss.hexagon.generators import (
    RNG_NAME,
    AugmentedHexagonH4,
    Hexagon,
    HexagonH3,
    PlanarHexagon,
)
from hexagauss.hexagon.triangles import (
    Triangle,
    hyperbolic_triangle,
    spherical_triangle,
)
from hexagauss.hypgeo.objects import GeometryError, OrientedLine, side_from_dict

logger = logging.getLogger(__name__)

SPACES = ("h3", "h4", "triangle-spherical", "triangle-hyperbolic", "planar-hexagon")
HEXAGON_SPACES = ("h3", "h4", "planar-hexagon")


class SceneError(ValueError):
    """Raised for malformed scene files."""


@dataclass(frozen=True, eq=False)
class Scene:
    """One generated instance.

    Attributes:
        space: One of :data:`SPACES`.
        seed: Batch seed the instance was drawn from.
        index: Position of the instance's random stream in the batch.
        hexagon: The hexagon, for hexagon spaces.
        vertices: Triangle vertices as coordinate rows (unit vectors on the
            sphere, (x, y) in the upper half-plane).
        lengths: Design side lengths of a planar hexagon, keyed by side.
    """

    space: str
    seed: int
    index: int
    hexagon: Hexagon | None = None
    vertices: tuple[tuple[float, ...], ...] | None = None
    lengths: dict[int, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        """Check that the payload matches the space."""
        if self.space not in SPACES:
            raise SceneError(f"Unknown space {self.space!r}")
        if self.space in HEXAGON_SPACES and self.hexagon is None:
            raise SceneError(f"A {self.space} scene needs sides")
        if self.space not in HEXAGON_SPACES and self.vertices is None:
            raise SceneError(f"A {self.space} scene needs vertices")

    def triangle(self) -> Triangle:
        """Side lengths and angles of a triangle scene.

        Raises:
            SceneError: If this is not a triangle scene or the triangle is
                degenerate.
        """
        if self.vertices is None:
            raise SceneError(f"A {self.space} scene has no vertices")
        try:
            if self.space == "triangle-spherical":
                return spherical_triangle(*(np.array(v) for v in self.vertices))
            return hyperbolic_triangle(*(complex(x, y) for x, y in self.vertices))
        except GeometryError as e:
            raise SceneError(f"Scene {self.index}: {e}") from e

    def planar(self) -> PlanarHexagon:
        """The planar hexagon of a ``planar-hexagon`` scene."""
        if not isinstance(self.hexagon, HexagonH3):
            raise SceneError(f"A {self.space} scene is not a planar hexagon")
        return PlanarHexagon(self.hexagon, dict(self.lengths))

    def to_dict(self) -> dict[str, Any]:
        """JSON encoding."""
        data: dict[str, Any] = {
            "space": self.space,
            "seed": self.seed,
            "index": self.index,
        }
        if self.hexagon is not None:
            data["sides"] = [side.to_dict() for side in self.hexagon.sides]
        if self.vertices is not None:
            data["vertices"] = [list(v) for v in self.vertices]
        if self.lengths:
            data["lengths"] = {str(k): v for k, v in sorted(self.lengths.items())}
        return data

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "Scene":
        """Decode :meth:`to_dict` output.

        Raises:
            SceneError: If fields are missing or malformed.
        """
        if not isinstance(data, dict):
            raise SceneError(f"Scene must be an object, got {type(data).__name__}")
        try:
            space = str(data["space"])
            seed = int(data["seed"])
            index = int(data.get("index", 0))
            hexagon = _hexagon_from(space, data["sides"]) if "sides" in data else None
            vertices = None
            if "vertices" in data:
                vertices = tuple(tuple(float(x) for x in v) for v in data["vertices"])
                width = 3 if space == "triangle-spherical" else 2
                if len(vertices) != 3 or any(len(v) != width for v in vertices):
                    raise SceneError(
                        f"A {space} scene needs 3 vertices of {width} coordinates"
                    )
            lengths = {int(k): float(v) for k, v in data.get("lengths", {}).items()}
        except KeyError as e:
            raise SceneError(f"Scene is missing field {e}") from e
        except (TypeError, ValueError) as e:
            if isinstance(e, SceneError):
                raise
            raise SceneError(f"Malformed scene: {e}") from e
        return cls(space, seed, index, hexagon, vertices, lengths)


def _hexagon_from(space: str, sides_data: list[Any]) -> Hexagon:
    sides = tuple(side_from_dict(s) for s in sides_data)
    if space == "h4":
        return AugmentedHexagonH4(sides)
    lines = tuple(s for s in sides if isinstance(s, OrientedLine))
    if len(lines) != len(sides):
        raise SceneError(f"A {space} scene has only lines as sides")
    return HexagonH3(lines)


@dataclass(frozen=True)
class SceneFile:
    """A batch of scenes with its generation header."""

    seed: int
    space: str
    scenes: tuple[Scene, ...]
    rng: str = RNG_NAME

    def to_dict(self) -> dict[str, Any]:
        """JSON encoding."""
        return {
            "rng": self.rng,
            "seed": self.seed,
            "space": self.space,
            "scenes": [scene.to_dict() for scene in self.scenes],
        }


def dumps_scene_file(scene_file: SceneFile) -> str:
    """Serialize with sorted keys and a trailing newline."""
    return json.dumps(scene_file.to_dict(), sort_keys=True, indent=2) + "\n"


def validate_scene_file(data: Any) -> SceneFile:
    """Check the structure of decoded JSON and build a :class:`SceneFile`.

    Raises:
        SceneError: If the header or any scene is malformed.
    """
    if not isinstance(data, dict):
        raise SceneError("Scene file must be a JSON object")
    missing = [k for k in ("rng", "seed", "space", "scenes") if k not in data]
    if missing:
        raise SceneError(f"Scene file is missing {', '.join(missing)}")
    if data["space"] not in SPACES:
        raise SceneError(f"Unknown space {data['space']!r}")
    if not isinstance(data["scenes"], list):
        raise SceneError("'scenes' must be a list")
    try:
        scenes = tuple(Scene.from_dict(s) for s in data["scenes"])
    except (GeometryError, ValueError) as e:
        if isinstance(e, SceneError):
            raise
        raise SceneError(f"Malformed scene: {e}") from e
    if data["rng"] != RNG_NAME:
        logger.warning(f"Scene file was generated with {data['rng']}, not {RNG_NAME}")
    return SceneFile(int(data["seed"]), str(data["space"]), scenes, str(data["rng"]))


def loads_scene_file(text: str) -> SceneFile:
    """Parse and validate a scene file.

    Raises:
        SceneError: If the text is not valid JSON or not a valid scene file.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise SceneError(f"Invalid JSON: {e}") from e
    return validate_scene_file(data)
