"""Unit tests for hexagauss.hexagon.formulas module."""

import cmath
import math

import pytest

from hexagauss.clifford import Multivector, allclose, paravector
from hexagauss.hexagon.formulas import (
    derive_laws_h3,
    dg_h4_residuals,
    flip_side_h3,
    verify_dg_h3,
    verify_dg_h4,
    verify_dg_h4_oplus,
)
from hexagauss.hexagon.lengths import closure_check, side_half_lengths

TOL = 1e-9


@pytest.fixture(scope="module")
def h4_lengths(hexagon_h4):
    """Half side-lengths of the shared H^4 hexagon."""
    return side_half_lengths(hexagon_h4)


@pytest.fixture(scope="module")
def h3_lengths(hexagon_h3):
    """Half side-lengths of the shared H^3 hexagon."""
    return side_half_lengths(hexagon_h3)


class TestVerifyH4:
    """Test the four H^4 formulas."""

    def test_zero_lengths(self):
        """Test the degenerate hexagon with all half lengths zero."""
        report = verify_dg_h4([Multivector.zero()] * 6, tolerance=TOL)
        assert report.passed
        assert report.epsilon == 1
        assert report.max_residual == 0.0
        assert not report.degenerate

    def test_generated_hexagon(self, hexagon_h4, h4_lengths):
        """Test the formulas and entry identities on a generated hexagon."""
        closure = closure_check(hexagon_h4).residual
        report = verify_dg_h4(h4_lengths, tolerance=TOL, closure_residual=closure)
        assert report.passed, report.failing()
        assert set(report.formulas) == {"dg1", "dg2", "dg3", "dg4"}
        assert set(report.entries) == {"entry11", "entry12", "entry21", "entry22"}
        assert report.epsilon in (1, -1)
        assert report.notes == ()

    def test_branch_flip_keeps_passing(self, h4_lengths):
        """Test that switching one side to its partner value flips eps."""
        principal = verify_dg_h4(h4_lengths, tolerance=TOL)
        flipped = verify_dg_h4(h4_lengths.with_branches(0b000001), tolerance=TOL)
        assert flipped.passed
        assert flipped.epsilon == -principal.epsilon
        assert flipped.branches == (1, 0, 0, 0, 0, 0)

    def test_every_branch_mask_passes(self, h4_lengths):
        """Test all 64 branch choices."""
        eps = verify_dg_h4(h4_lengths, tolerance=TOL).epsilon
        for mask in range(64):
            report = verify_dg_h4(h4_lengths.with_branches(mask), tolerance=TOL)
            assert report.passed, mask
            flips = bin(mask).count("1")
            assert report.epsilon == (eps if flips % 2 == 0 else -eps)

    def test_shift_by_three_swaps_middle_formulas(self, h4_lengths):
        """Test that reading the hexagon from side 4 swaps dg2 and dg3."""
        eps = verify_dg_h4(h4_lengths, tolerance=TOL).epsilon
        values = list(h4_lengths.values)
        original = dg_h4_residuals(values, eps)
        shifted = dg_h4_residuals(values[3:] + values[:3], eps)
        assert max(shifted.values()) <= TOL
        assert math.isclose(shifted["dg2"], original["dg3"], abs_tol=1e-14)
        assert math.isclose(shifted["dg3"], original["dg2"], abs_tol=1e-14)

    def test_wrong_values_fail(self, h4_lengths):
        """Test that a disturbed half length is detected."""
        values = list(h4_lengths.values)
        values[0] = values[0] + paravector(0.01)
        report = verify_dg_h4(values, tolerance=TOL)
        assert not report.passed
        assert "dg1" in report.failing()

    def test_rejects_e2_values_off_plane(self):
        """Test that flag sides must lie in R + R e2."""
        values = [Multivector.zero()] * 6
        values[1] = Multivector.basis("e1")
        with pytest.raises(ValueError, match="R \\+ R e2"):
            verify_dg_h4(values)

    def test_rejects_wrong_count(self):
        """Test that six values are needed."""
        with pytest.raises(ValueError, match="6 half"):
            verify_dg_h4([Multivector.zero()] * 5)

    def test_report_dict(self, h4_lengths):
        """Test the JSON-ready form of a report."""
        data = verify_dg_h4(h4_lengths, tolerance=TOL).to_dict()
        assert data["space"] == "h4"
        assert data["pass"] is True
        assert data["branches"] == [0] * 6
        keys = {"formulas", "entries", "epsilon", "tolerance", "closure_residual"}
        assert set(data) >= keys

    def test_failing_lists_closure(self):
        """Test that a bad closure residual fails the report."""
        zeros = [Multivector.zero()] * 6
        report = verify_dg_h4(zeros, tolerance=TOL, closure_residual=1.0)
        assert not report.passed
        assert report.failing() == ["closure"]


class TestVerifyH4Oplus:
    """Test the (+)/(-) forms of the H^4 formulas."""

    def test_agrees_with_product_form(self, h4_lengths):
        """Test that both forms pass with the same sign."""
        direct = verify_dg_h4(h4_lengths, tolerance=TOL)
        oplus = verify_dg_h4_oplus(h4_lengths, tolerance=1e-8)
        assert oplus.space == "h4-oplus"
        assert oplus.passed, oplus.failing()
        assert set(oplus.formulas) == {"c1", "c2", "c3", "c4"}
        assert oplus.epsilon == direct.epsilon


class TestVerifyH3:
    """Test the four H^3 formulas and the derived laws."""

    def test_generated_hexagon(self, hexagon_h3, h3_lengths):
        """Test the formulas on a generated hexagon."""
        closure = closure_check(hexagon_h3).residual
        report = verify_dg_h3(h3_lengths, tolerance=TOL, closure_residual=closure)
        assert report.passed, report.failing()
        assert set(report.formulas) == {"rah1", "rah2", "rah3", "rah4"}
        assert set(report.entries) == {f"cosine{n}" for n in range(1, 7)} | {"sine"}

    def test_flipping_a_side(self, h3_lengths):
        """Test that reversing one side's orientation keeps the formulas."""
        for n in range(6):
            flipped = flip_side_h3(h3_lengths.values, n)
            assert verify_dg_h3(flipped, tolerance=TOL).passed, n

    def test_flip_side_values(self):
        """Test how a flip moves the side and its neighbours."""
        values = [paravector(0.1 * k, 0.05 * k) for k in range(1, 7)]
        flipped = flip_side_h3(values, 0)
        quarter = paravector(0.0, math.pi / 2.0)
        assert allclose(flipped[5], values[5] - quarter)
        assert allclose(flipped[0], -values[0])
        assert allclose(flipped[1], values[1] + quarter)
        assert allclose(flipped[3], values[3])

    def test_rejects_quaternion_values(self):
        """Test that H^3 values must lie in R + R e1."""
        values = [paravector(0.1, 0.2)] * 6
        values[2] = Multivector.basis("e12")
        with pytest.raises(ValueError, match="R \\+ R e1"):
            verify_dg_h3(values)

    def test_planar_lengths(self, planar_hexagon):
        """Test that a convex planar hexagon has sides l + pi e1."""
        lengths = side_half_lengths(planar_hexagon.hexagon)
        for side, length in planar_hexagon.lengths.items():
            sigma = lengths.values[side - 1] * 2.0
            assert math.isclose(sigma["1"], length, rel_tol=1e-8)
            assert math.isclose(abs(sigma["e1"]), math.pi, abs_tol=1e-8)
        assert verify_dg_h3(lengths, tolerance=TOL).passed


class TestDeriveLaws:
    """Test the laws of cosines and sines."""

    def test_planar_values(self):
        """Test the laws on sides l + pi i of a planar hexagon."""
        l2, l4, l6 = 0.8, 1.1, 1.4
        c, s = math.cosh, math.sinh
        l3 = math.acosh((c(l6) + c(l2) * c(l4)) / (s(l2) * s(l4)))
        l5 = math.acosh((c(l2) + c(l4) * c(l6)) / (s(l4) * s(l6)))
        l1 = math.acosh((c(l4) + c(l6) * c(l2)) / (s(l6) * s(l2)))
        sigmas = [complex(x, math.pi) for x in (l1, l2, l3, l4, l5, l6)]
        laws = derive_laws_h3(sigmas)
        assert max(laws.values()) < 1e-12

    def test_broken_values(self):
        """Test that arbitrary lengths violate the laws."""
        laws = derive_laws_h3([complex(0.5 + 0.1 * k, 0.2) for k in range(6)])
        assert laws["cosine1"] > 1e-3

    def test_wrong_count(self):
        """Test that six lengths are needed."""
        with pytest.raises(ValueError, match="6 side"):
            derive_laws_h3([cmath.pi] * 5)
