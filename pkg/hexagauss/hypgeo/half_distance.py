"""Half distances between flags and lines.

Each half distance is read off the isometry eta that fixes a normalized pair
of objects and moves the first remaining object onto the second. eta is only
defined up to sign, so every result is a pair (Log a, Log(-a)) of values
whose exponentials differ by sign.
"""

import logging
import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from hexagauss.clifford import Multivector, norm, paravector
from hexagauss.hypgeo.crosses import normalize_cross, normalize_line_pair
from hexagauss.hypgeo.objects import (
    FlagLineCross,
    GeometryError,
    OrientedFlag,
    OrientedLine,
    boundary_coords,
)
from hexagauss.transcend import exp, principal_log
from hexagauss.vahlen import Infinity, VahlenMatrix, k_matrix, mobius_apply

logger = logging.getLogger(__name__)

HalfLengthKind = Literal["quaternion", "e1", "e2", "complex"]

CONSISTENCY_TOL = 1e-8

_E1 = Multivector.basis("e1")
_E2 = Multivector.basis("e2")


@dataclass(frozen=True)
class HalfLength:
    """Both values of a half distance.

    Attributes:
        values: (principal, partner) with exp(partner) = -exp(principal).
        kind: Subalgebra the values live in: ``"quaternion"`` (all of A_2),
            ``"e1"`` or ``"complex"`` (R + R e1) or ``"e2"`` (R + R e2).
    """

    values: tuple[Multivector, Multivector]
    kind: HalfLengthKind

    @property
    def principal(self) -> Multivector:
        """The value Log a."""
        return self.values[0]

    @property
    def partner(self) -> Multivector:
        """The value Log(-a)."""
        return self.values[1]

    def value(self, branch: int) -> Multivector:
        """Return ``values[branch]`` for branch 0 or 1."""
        if branch not in (0, 1):
            raise ValueError(f"Branch must be 0 or 1, got {branch}")
        return self.values[branch]

    def matches(self, x: Multivector, atol: float = 1e-9) -> bool:
        """True if x is one of the two values modulo the period."""
        target, candidate = exp(self.principal), exp(x)
        tol = atol * (1.0 + norm(target))
        return norm(candidate - target) <= tol or norm(candidate + target) <= tol


def _pair(a: Multivector, kind: HalfLengthKind, axis: Multivector | None) -> HalfLength:
    values = (principal_log(a, axis).principal, principal_log(-a, axis).principal)
    return HalfLength(values, kind)


def _relative(size: float, eta: VahlenMatrix) -> float:
    return size / max(1.0, eta.scale())


def _line_eta(
    first: FlagLineCross, second: FlagLineCross, strict: bool
) -> VahlenMatrix:
    return normalize_cross(first, strict) @ normalize_cross(second, strict).inverse()


def quaternion_half_distance(
    f1: OrientedFlag, line: OrientedLine, f2: OrientedFlag, strict: bool = True
) -> HalfLength:
    """Quaternion half distance from ``f1`` to ``f2`` along ``line``.

    With (f1, line) normalized to (F_h, L_v), the isometry carrying the
    standard cross to the image of (f2, line) is diag(a, (a*)^-1).

    Args:
        f1: Flag orthogonal to ``line``.
        line: Common line.
        f2: Flag orthogonal to ``line``.
        strict: Check that eta is diagonal and the inputs are crosses.

    Returns:
        The pair (Log a, Log(-a)).

    Raises:
        GeometryError: If the configuration is not orthogonal.
    """
    eta = _line_eta(FlagLineCross(f1, line), FlagLineCross(f2, line), strict)
    off = _relative(max(norm(eta.b), norm(eta.c)), eta)
    if strict and off > CONSISTENCY_TOL:
        raise GeometryError(
            f"Flags do not share a common orthogonal line (off-diagonal {off:.3e})"
        )
    return _pair(eta.a, "quaternion", None)


def _flag_eta(
    l1: OrientedLine, flag: OrientedFlag, l2: OrientedLine, strict: bool
) -> VahlenMatrix:
    return _line_eta(FlagLineCross(flag, l1), FlagLineCross(flag, l2), strict)


def _project(x: Multivector, axis: Multivector) -> tuple[Multivector, float]:
    along = float(np.dot(x.coeffs, axis.coeffs))
    projected = Multivector.scalar(x["1"]) + axis * along
    return projected, norm(x - projected)


def e2_half_distance(
    l1: OrientedLine, flag: OrientedFlag, l2: OrientedLine, strict: bool = True
) -> HalfLength:
    """e2-complex half distance from ``l1`` to ``l2`` across ``flag``.

    With (flag, l1) normalized to (F_h, L_v), eta fixes F_h and has the form
    [[cosh d, sinh d], [sinh d, cosh d]] with d in R + R e2, so
    a + b = exp d.

    Raises:
        GeometryError: If the configuration is not orthogonal or eta leaves
            the expected form.
    """
    eta = _flag_eta(l1, flag, l2, strict)
    g = eta.a + eta.b
    if strict:
        asym = _relative(max(norm(eta.a - eta.d), norm(eta.b - eta.c)), eta)
        _, off = _project(g, _E2)
        off = _relative(off, eta)
        if max(asym, off) > CONSISTENCY_TOL:
            raise GeometryError(
                "Lines do not meet the flag orthogonally "
                f"(symmetry {asym:.3e}, subspace {off:.3e})"
            )
    g, _ = _project(g, _E2)
    return _pair(g, "e2", _E2)


def e1_half_distance(
    l1: OrientedLine, flag: OrientedFlag, l2: OrientedLine, strict: bool = True
) -> HalfLength:
    """e1-complex half distance from ``l1`` to ``l2`` across ``flag``.

    Normalizing (flag, l1) to (F_v, L_h) instead conjugates eta by K, after
    which it is diag(a, a^-1) with a in R + R e1.

    Raises:
        GeometryError: If the configuration is not orthogonal or eta leaves
            the expected form.
    """
    K = k_matrix()
    eta = K.inverse() @ _flag_eta(l1, flag, l2, strict) @ K
    a = eta.a
    if strict:
        off = _relative(max(norm(eta.b), norm(eta.c)), eta)
        _, drift = _project(a, _E1)
        drift = _relative(drift, eta)
        if max(off, drift) > CONSISTENCY_TOL:
            raise GeometryError(
                "Lines do not meet the flag orthogonally "
                f"(off-diagonal {off:.3e}, subspace {drift:.3e})"
            )
    a, _ = _project(a, _E1)
    return _pair(a, "e1", _E1)


def chi(x: Multivector) -> Multivector:
    """Algebra map R + R e1 -> R + R e2 with 1 -> 1 and e1 -> e2."""
    return paravector(x["1"], 0.0, x["e1"])


def complex_half_length(
    prev: OrientedLine, line: OrientedLine, nxt: OrientedLine, strict: bool = True
) -> HalfLength:
    """Half of the complex distance along ``line`` from ``prev`` to ``nxt`` in H^3.

    With ``line`` normalized to L_v and ``prev`` to L_h, ``nxt`` becomes a
    semicircle centred at 0 whose head z gives sigma = Log z in R + R e1.

    Raises:
        GeometryError: If the lines are not perpendicular or leave the H^3
            slice.
    """
    N = normalize_line_pair(line, prev, strict)
    head = mobius_apply(N, nxt.dst)
    tail = mobius_apply(N, nxt.src)
    if isinstance(head, Infinity) or isinstance(tail, Infinity):
        raise GeometryError("Next line shares an endpoint with the middle line")
    z = boundary_coords(head)
    if strict:
        w = boundary_coords(tail)
        drift = (float(np.linalg.norm(z + w)) + abs(z[2])) / float(np.linalg.norm(z))
        if drift > CONSISTENCY_TOL:
            raise GeometryError(
                f"Next line is not perpendicular in H^3 (residual {drift:.3e})"
            )
    sigma = principal_log(paravector(z[0], z[1]), _E1).principal
    half = sigma / 2.0
    return HalfLength((half, half + _E1 * math.pi), "complex")

