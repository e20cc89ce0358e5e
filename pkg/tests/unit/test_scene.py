"""Unit tests for hexagauss.scene module."""

import json

import pytest

from hexagauss.core import generate_scene, generate_scenes
from hexagauss.hexagon.generators import AugmentedHexagonH4, HexagonH3
from hexagauss.hypgeo.objects import L_H, L_V
from hexagauss.scene import (
    Scene,
    SceneError,
    dumps_scene_file,
    loads_scene_file,
    validate_scene_file,
)


def test_dumps_is_deterministic():
    """Test that the same batch serializes to the same bytes."""
    a = dumps_scene_file(generate_scenes("h4", count=2, seed=7))
    b = dumps_scene_file(generate_scenes("h4", count=2, seed=7))
    assert a == b
    assert a.endswith("\n")


def test_header_fields():
    """Test the scene file header."""
    data = json.loads(dumps_scene_file(generate_scenes("h3", count=2, seed=1)))
    assert data["rng"] == "numpy.random.Philox"
    assert data["seed"] == 1
    assert data["space"] == "h3"
    assert [s["index"] for s in data["scenes"]] == [0, 1]


@pytest.mark.parametrize(
    "space", ["h3", "h4", "planar-hexagon", "triangle-spherical", "triangle-hyperbolic"]
)
def test_file_round_trip(space):
    """Test that a written scene file reads back to the same geometry."""
    original = generate_scenes(space, count=1, seed=3)
    loaded = loads_scene_file(dumps_scene_file(original))
    assert loaded.space == space
    assert loaded.seed == 3
    assert dumps_scene_file(loaded) == dumps_scene_file(original)


def test_h4_scene_decodes_flags():
    """Test that H^4 sides come back as lines and flags."""
    scene = generate_scene("h4", seed=7)
    decoded = Scene.from_dict(json.loads(json.dumps(scene.to_dict())))
    assert isinstance(decoded.hexagon, AugmentedHexagonH4)
    assert decoded.hexagon.lines_first


def test_planar_scene_keeps_lengths():
    """Test that planar scenes carry their design lengths."""
    scene = generate_scene("planar-hexagon", seed=5)
    decoded = Scene.from_dict(scene.to_dict())
    assert decoded.lengths == scene.lengths
    assert set(decoded.planar().lengths) == {2, 3, 4, 6}


def test_triangle_scene():
    """Test that a triangle scene rebuilds its triangle."""
    scene = generate_scene("triangle-spherical", seed=2)
    assert len(scene.vertices) == 3
    triangle = scene.triangle()
    assert all(0 < a for a in triangle.angles)


class TestSceneValidation:
    """Test rejection of malformed scenes."""

    def test_unknown_space(self):
        """Test that the space is checked."""
        with pytest.raises(SceneError, match="Unknown space"):
            Scene("h5", 0, 0, hexagon=HexagonH3((L_H,) * 6))

    def test_hexagon_needs_sides(self):
        """Test that hexagon scenes need a hexagon."""
        with pytest.raises(SceneError, match="needs sides"):
            Scene("h3", 0, 0)

    def test_triangle_needs_vertices(self):
        """Test that triangle scenes need vertices."""
        with pytest.raises(SceneError, match="needs vertices"):
            Scene("triangle-hyperbolic", 0, 0)

    def test_missing_field(self):
        """Test a scene without a seed."""
        with pytest.raises(SceneError, match="missing field"):
            Scene.from_dict({"space": "h3", "sides": []})

    def test_wrong_vertex_width(self):
        """Test that hyperbolic vertices have two coordinates."""
        data = {"space": "triangle-hyperbolic", "seed": 0, "vertices": [[0, 1, 2]] * 3}
        with pytest.raises(SceneError, match="3 vertices of 2"):
            Scene.from_dict(data)

    def test_flag_in_h3_scene(self):
        """Test that H^3 scenes only hold lines."""
        h4 = generate_scene("h4", seed=7).to_dict()
        h4["space"] = "h3"
        with pytest.raises(SceneError, match="only lines"):
            Scene.from_dict(h4)

    def test_wrong_side_count(self):
        """Test that a hexagon needs six sides."""
        data = {"space": "h3", "seed": 0, "sides": [L_H.to_dict(), L_V.to_dict()]}
        with pytest.raises(SceneError):
            Scene.from_dict(data)


class TestSceneFileValidation:
    """Test rejection of malformed scene files."""

    def test_invalid_json(self):
        """Test that broken JSON raises SceneError."""
        with pytest.raises(SceneError, match="Invalid JSON"):
            loads_scene_file("{not json")

    def test_not_an_object(self):
        """Test that the top level must be an object."""
        with pytest.raises(SceneError, match="JSON object"):
            validate_scene_file([1, 2])

    def test_missing_header(self):
        """Test that header fields are required."""
        with pytest.raises(SceneError, match="missing rng, seed"):
            validate_scene_file({"space": "h3", "scenes": []})

    def test_scenes_must_be_list(self):
        """Test the type of the scenes field."""
        data = {"rng": "numpy.random.Philox", "seed": 0, "space": "h3", "scenes": {}}
        with pytest.raises(SceneError, match="must be a list"):
            validate_scene_file(data)

    def test_foreign_rng_warns(self, caplog):
        """Test that a different generator name only warns."""
        data = json.loads(dumps_scene_file(generate_scenes("h3", count=1, seed=0)))
        data["rng"] = "numpy.random.PCG64"
        scene_file = validate_scene_file(data)
        assert scene_file.rng == "numpy.random.PCG64"
        assert "PCG64" in caplog.text
