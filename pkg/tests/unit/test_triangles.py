"""Unit tests for hexagauss.hexagon.triangles module."""

import cmath
import math

import numpy as np
import pytest

from hexagauss.hexagon.triangles import (
    Triangle,
    hyperbolic_triangle,
    measured_lengths,
    planar_hexagon_report,
    random_hyperbolic_triangle,
    random_spherical_triangle,
    spherical_triangle,
    sum_remark_holds,
    triangle_report,
    verify_triangle_formulas,
)
from hexagauss.hypgeo.objects import DegenerateConfigurationError

TOL = 1e-9


def test_octant_triangle():
    """Test the triangle cut out by the coordinate planes."""
    t = spherical_triangle(*np.eye(3))
    assert np.allclose(t.sides, math.pi / 2)
    assert np.allclose(t.angles, math.pi / 2)
    assert triangle_report("spherical", t, TOL).passed


def test_coplanar_vertices_rejected():
    """Test that a great-circle triple is degenerate."""
    vertices = np.array([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [1.0, 1.0, 0.0]])
    vertices[2] /= np.linalg.norm(vertices[2])
    with pytest.raises(DegenerateConfigurationError, match="degenerate"):
        spherical_triangle(*vertices)


def test_hyperbolic_right_triangle():
    """Test a right angle at i and the hyperbolic Pythagorean theorem."""
    t = hyperbolic_triangle(2j, cmath.exp(1j * math.pi / 3), 1j)
    a, b, c = t.sides
    assert math.isclose(t.angles[2], math.pi / 2, rel_tol=1e-12)
    assert math.isclose(b, math.log(2.0), rel_tol=1e-12)
    assert math.isclose(math.cosh(c), math.cosh(a) * math.cosh(b), rel_tol=1e-12)
    assert sum(t.angles) < math.pi


def test_hyperbolic_vertex_below_axis():
    """Test that vertices must lie in the upper half-plane."""
    with pytest.raises(DegenerateConfigurationError, match="upper half-plane"):
        hyperbolic_triangle(1j, -1j, 1 + 1j)


def test_rotations_cycle_labels():
    """Test the cyclic relabelings."""
    t = Triangle((1.0, 2.0, 3.0), (0.1, 0.2, 0.3))
    rotated = t.rotations()
    assert len(rotated) == 3
    assert rotated[0] == t
    assert rotated[1].sides == (2.0, 3.0, 1.0)
    assert rotated[2].angles == (0.3, 0.1, 0.2)


@pytest.mark.parametrize("seed", range(5))
def test_random_spherical_triangles(seed):
    """Test the spherical formulas and the sum remark on random triangles."""
    t = random_spherical_triangle(seed)
    assert sum_remark_holds(t)
    report = triangle_report("spherical", t, TOL)
    assert report.passed, report.failing()
    assert set(report.formulas) == {f"delambre{n}" for n in range(1, 5)}
    assert {"napier1", "tangents", "sum_remark"} <= set(report.entries)


@pytest.mark.parametrize("seed", range(5))
def test_random_hyperbolic_triangles(seed):
    """Test the hyperbolic formulas on random triangles."""
    report = triangle_report("hyperbolic", random_hyperbolic_triangle(seed), TOL)
    assert report.passed, report.failing()
    assert report.epsilon == 1


def test_arbitrary_numbers_fail():
    """Test that sides and angles of no triangle are rejected."""
    arbitrary = Triangle((0.3, 0.4, 0.5), (1.0, 1.0, 1.0))
    report = triangle_report("spherical", arbitrary, TOL)
    assert not report.passed
    assert "delambre1" in report.failing()


def test_planar_hexagon_report(planar_hexagon):
    """Test the planar hexagon formulas and the design lengths."""
    report = planar_hexagon_report(planar_hexagon, TOL)
    assert report.passed, report.failing()
    assert set(report.formulas) == {f"prah{n}" for n in range(1, 5)}
    assert report.entries["ordering"] == 0.0
    assert report.entries["design"] <= TOL


def test_measured_lengths_positive(planar_hexagon):
    """Test that all six measured lengths are positive."""
    lengths = measured_lengths(planar_hexagon)
    assert len(lengths) == 6
    assert min(lengths) > 0


@pytest.mark.parametrize("kind", ["spherical", "hyperbolic", "planar-hexagon"])
def test_verify_triangle_formulas(kind):
    """Test the seeded entry point for every classical family."""
    report = verify_triangle_formulas(kind, 3, TOL)
    assert report.space == kind
    assert report.passed


def test_unknown_kind():
    """Test that an unknown family raises."""
    with pytest.raises(ValueError, match="Unknown triangle kind"):
        verify_triangle_formulas("euclidean", 0)  # type: ignore[arg-type]
