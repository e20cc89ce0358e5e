"""Unit tests for hexagauss.hypgeo.crosses module."""

import numpy as np
import pytest

from hexagauss.clifford import Multivector, paravector
from hexagauss.hypgeo.crosses import (
    cross_foot,
    cross_residual,
    cross_to_frame,
    crosses_equivalent,
    flags_equivalent,
    frame_to_cross,
    isometry_between_crosses,
    normalize_cross,
    normalize_line_pair,
)
from hexagauss.hypgeo.metric import apply_to_cross, apply_to_line
from hexagauss.hypgeo.objects import (
    F_H,
    F_V,
    L_H,
    L_V,
    STANDARD_CROSS,
    DegenerateConfigurationError,
    FlagLineCross,
    OrientedFlag,
    OrientedLine,
)
from hexagauss.transcend import exp
from hexagauss.vahlen import diagonal, identity, k_matrix, random_vahlen, translation


@pytest.fixture
def random_cross(rng) -> FlagLineCross:
    """Return the image of the standard cross under a random isometry."""
    return apply_to_cross(random_vahlen(rng), STANDARD_CROSS)


def test_standard_cross_normalizes_to_identity():
    """Test N(F_h, L_v) = +-I and the foot e3."""
    assert normalize_cross(STANDARD_CROSS).allclose(identity(), atol=1e-12)
    assert cross_residual(F_H, L_V) == 0.0
    assert np.allclose(cross_foot(STANDARD_CROSS).coords, [0.0, 0.0, 0.0, 1.0])


def test_normalize_random_cross(rng):
    """Test that N A = +-I when the cross is the A-image of the standard one."""
    A = random_vahlen(rng)
    N = normalize_cross(apply_to_cross(A, STANDARD_CROSS))
    assert (N @ A).allclose(identity(), atol=1e-8 * max(1.0, A.scale()) ** 2)


def test_k_matrix_relates_standard_crosses():
    """Test that (F_v, L_h) is normalized by K up to sign."""
    N = normalize_cross(FlagLineCross(F_V, L_H))
    K = k_matrix()
    assert N.allclose(K, atol=1e-12) or N.allclose(K.inverse(), atol=1e-12)


def test_isometry_between_crosses(random_cross):
    """Test that the isometry maps the first cross onto the second."""
    B = isometry_between_crosses(STANDARD_CROSS, random_cross)
    image = apply_to_cross(B, STANDARD_CROSS)
    assert crosses_equivalent(image, random_cross, atol=1e-8)


def test_non_cross_is_rejected(e1):
    """Test strict and lenient normalization of a non-orthogonal pair."""
    slanted = OrientedLine(Multivector.scalar(0.5), Multivector.scalar(4.0))
    flag = OrientedFlag(L_H, e1)
    assert cross_residual(flag, slanted) > 1e-3
    with pytest.raises(DegenerateConfigurationError, match="cross"):
        normalize_cross(FlagLineCross(flag, slanted))
    normalize_cross(FlagLineCross(flag, slanted), strict=False)


def test_flag_touching_line_is_degenerate(e1):
    """Test that a flag line ending on the cross line raises."""
    flag = OrientedFlag(OrientedLine(Multivector.zero(), Multivector.scalar(1.0)), e1)
    with pytest.raises(DegenerateConfigurationError):
        cross_residual(flag, L_V)


def test_frame_of_standard_cross():
    """Test the frame (1, e1, e2, e3)-directions at e3."""
    frame = cross_to_frame(STANDARD_CROSS)
    assert frame.orientation() == 1
    assert np.allclose(frame.vectors[0], [1.0, 0.0, 0.0, 0.0], atol=1e-12)
    assert np.allclose(frame.vectors[1], [0.0, 1.0, 0.0, 0.0], atol=1e-12)
    assert np.allclose(frame.vectors[3], [0.0, 0.0, 0.0, 1.0], atol=1e-12)


def test_frame_round_trip(random_cross):
    """Test that a cross is recovered from its frame."""
    frame = cross_to_frame(random_cross)
    assert frame.orientation() == 1
    assert crosses_equivalent(frame_to_cross(frame), random_cross, atol=1e-8)


def test_flags_equivalent_ignores_marker_position(e1):
    """Test that moving the flag point along its arc keeps the flag."""
    marker = exp(0.4 * e1)
    assert flags_equivalent(F_H, OrientedFlag(L_H, marker))
    assert not flags_equivalent(F_H, F_H.with_plane_reversed())
    assert not flags_equivalent(F_H, F_H.with_both_reversed())


def test_normalize_line_pair_in_h3(e1):
    """Test that an H^3 isometry is recovered from the image of (L_v, L_h)."""
    A = translation(paravector(0.3, -0.7)) @ diagonal(exp(0.2 + 0.9 * e1))
    N = normalize_line_pair(apply_to_line(A, L_V), apply_to_line(A, L_H))
    assert (N @ A).allclose(identity(), atol=1e-10)
    for entry in N.entries():
        assert abs(entry["e2"]) < 1e-12 and abs(entry["e12"]) < 1e-12


def test_normalize_line_pair_rejects_skew_lines():
    """Test that non-perpendicular lines raise."""
    with pytest.raises(DegenerateConfigurationError, match="perpendicular"):
        skew = OrientedLine(Multivector.scalar(1.0), Multivector.scalar(3.0))
        normalize_line_pair(L_V, skew)
