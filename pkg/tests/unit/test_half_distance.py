"""Unit tests for hexagauss.hypgeo.half_distance module."""

import math

import pytest

from hexagauss.clifford import Multivector, allclose, paravector
from hexagauss.hypgeo.half_distance import (
    HalfLength,
    chi,
    complex_half_length,
    e1_half_distance,
    e2_half_distance,
    quaternion_half_distance,
)
from hexagauss.hypgeo.metric import apply_to_flag, apply_to_line
from hexagauss.hypgeo.objects import (
    F_H,
    F_V,
    L_H,
    L_V,
    GeometryError,
    OrientedFlag,
    OrientedLine,
)
from hexagauss.transcend import exp
from hexagauss.vahlen import diagonal, normal_form_pm1, random_vahlen

DELTA = Multivector(2, [0.3, 0.4, -0.2, 0.5])


def test_half_length_branches(e12):
    """Test value(), matches() and the branch pair."""
    half = HalfLength((0.1 * e12, 0.1 * e12 + math.pi * e12), "quaternion")
    assert half.value(0) is half.principal
    assert half.value(1) is half.partner
    assert half.matches(0.1 * e12 + 2.0 * math.pi * e12)
    assert half.matches(half.partner)
    assert not half.matches(0.2 * e12)
    with pytest.raises(ValueError, match="Branch"):
        half.value(2)


def test_quaternion_half_distance_of_equal_flags():
    """Test that f2 = f1 gives 0."""
    half = quaternion_half_distance(F_H, L_V, F_H)
    assert half.kind == "quaternion"
    assert half.matches(Multivector.zero())


def test_quaternion_half_distance_translation():
    """Test that translating by 2t along the line gives t."""
    t = 0.35
    f2 = apply_to_flag(diagonal(Multivector.scalar(math.exp(t))), F_H)
    half = quaternion_half_distance(F_H, L_V, f2)
    assert half.matches(Multivector.scalar(t))
    assert math.isclose(half.principal["1"], t, abs_tol=1e-12)


def test_quaternion_half_distance_general():
    """Test that diag(exp delta) moves F_h by the half distance delta."""
    f2 = apply_to_flag(diagonal(exp(DELTA)), F_H)
    half = quaternion_half_distance(F_H, L_V, f2)
    assert half.matches(DELTA)
    back = quaternion_half_distance(f2, L_V, F_H)
    assert back.matches(-DELTA)


def test_quaternion_half_distance_plane_flip(e12):
    """Test that reversing the plane of the second flag adds (pi/2) e12."""
    half = quaternion_half_distance(F_H, L_V, F_H.with_plane_reversed())
    assert half.matches(0.5 * math.pi * e12)


def test_quaternion_half_distance_invariance(rng):
    """Test invariance under an isometry applied to every argument."""
    f2 = apply_to_flag(diagonal(exp(DELTA)), F_H)
    A = random_vahlen(rng)
    half = quaternion_half_distance(
        apply_to_flag(A, F_H), apply_to_line(A, L_V), apply_to_flag(A, f2)
    )
    assert half.matches(DELTA, atol=1e-7)


def test_quaternion_half_distance_rejects_non_orthogonal(e1):
    """Test that a flag not orthogonal to the line raises."""
    line = OrientedLine(Multivector.scalar(-1.0), Multivector.scalar(2.0))
    tilted = OrientedFlag(line, e1)
    with pytest.raises(GeometryError):
        quaternion_half_distance(F_H, L_V, tilted)


def test_e2_half_distance(e2):
    """Test that moving L_v by [[cosh d, sinh d], [sinh d, cosh d]] gives d."""
    d = 0.6 + 0.8 * e2
    l2 = apply_to_line(normal_form_pm1(d), L_V)
    half = e2_half_distance(L_V, F_H, l2)
    assert half.kind == "e2"
    assert half.matches(d)
    assert abs(half.principal["e1"]) < 1e-12 and abs(half.principal["e12"]) < 1e-12


def test_e2_half_distance_of_equal_and_reversed_lines(e2):
    """Test l2 = l1 and l2 = reversed l1."""
    assert e2_half_distance(L_V, F_H, L_V).matches(Multivector.zero())
    assert e2_half_distance(L_V, F_H, L_V.reversed()).matches(0.5 * math.pi * e2)


def test_e2_half_distance_antisymmetry(e2):
    """Test delta(l2, l1) = -delta(l1, l2)."""
    l2 = apply_to_line(normal_form_pm1(0.6 + 0.8 * e2), L_V)
    forward = e2_half_distance(L_V, F_H, l2)
    backward = e2_half_distance(l2, F_H, L_V)
    assert backward.matches(-forward.principal)


def test_e1_half_distance_and_chi(e1):
    """Test the e1 value and its image under chi."""
    value = 0.25 + 0.7 * e1
    l2 = apply_to_line(diagonal(exp(value)), L_H)
    half = e1_half_distance(L_H, F_V, l2)
    assert half.kind == "e1"
    assert half.matches(value)
    assert e2_half_distance(L_H, F_V, l2).matches(chi(value), atol=1e-10)


def test_chi(e1, e2):
    """Test chi(1) = 1 and chi(e1) = e2."""
    assert allclose(chi(Multivector.scalar(1.0)), Multivector.scalar(1.0))
    assert allclose(chi(e1), e2)
    assert allclose(chi(0.5 - 2.0 * e1), 0.5 - 2.0 * e2)


def test_complex_half_length(e1):
    """Test half of the complex distance to a semicircle centred at 0."""
    z = 2.0 * exp(0.6 * e1)
    nxt = OrientedLine(-z, z)
    half = complex_half_length(L_H, L_V, nxt)
    assert half.kind == "complex"
    assert allclose(half.principal, paravector(0.5 * math.log(2.0), 0.3), atol=1e-12)
    assert allclose(half.partner, half.principal + math.pi * e1)


def test_complex_half_length_rejects_skew_line():
    """Test that a next line off the H^3 slice raises."""
    nxt = OrientedLine(
        Multivector(2, [-1.0, 0.0, -1.0, 0.0]), Multivector(2, [1.0, 0.0, 1.0, 0.0])
    )
    with pytest.raises(GeometryError):
        complex_half_length(L_H, L_V, nxt)
