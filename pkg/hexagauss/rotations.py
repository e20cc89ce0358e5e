"""Rotations of R^3 through unit elements of A_2.

A unit a in A_2 rotates the para-vector space R + R e1 + R e2 by
rho_a(x) = a x (a')^-1. This module extracts axis and angle, composes and
decomposes Euler triples a = exp(alpha e1) exp(beta e12) exp(gamma e1), checks
the conjugation identity behind the Euler form and reads a back from the image
of the unit tangent (1, e1).
"""

import logging
import math
from dataclasses import dataclass
from typing import Literal

import numpy as np
from numpy.typing import NDArray
from scipy.spatial.transform import Rotation

from hexagauss.clifford import AlgebraError, Multivector, mul, norm, paravector, rho
from hexagauss.config import SETTINGS
from hexagauss.transcend import exp

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi


def _mod2pi(angle: float) -> float:
    value = math.fmod(angle, TWO_PI)
    if value < 0:
        value += TWO_PI
    # fmod can return exactly 2 pi after the shift
    return 0.0 if value >= TWO_PI else value


def _require_unit(a: Multivector) -> None:
    if a.n != 2:
        raise AlgebraError(f"Rotations are given by elements of A_2, got A_{a.n}")
    if abs(norm(a) - 1.0) > SETTINGS.unit_tol:
        raise AlgebraError(f"Expected a unit element, got |a| = {norm(a):.12g}")


def _coords(x: Multivector) -> NDArray[np.float64]:
    return np.array([x["1"], x["e1"], x["e2"]])


def _from_coords(v: NDArray[np.float64]) -> Multivector:
    return paravector(float(v[0]), float(v[1]), float(v[2]))


@dataclass(frozen=True)
class AxisAngle:
    """Rotation about the unit para-vector ``v`` by ``angle`` in (0, 2 pi)."""

    v: Multivector
    angle: float

    def flipped(self) -> "AxisAngle":
        """The same rotation written as (-v, 2 pi - angle)."""
        return AxisAngle(-self.v, TWO_PI - self.angle)


def axis_angle(a: Multivector) -> AxisAngle:
    """Axis and angle of rho_a.

    Writing a = cos(theta) + w sin(theta) with theta in (0, pi), the axis is the
    para-vector fixed by rho_a and the angle is 2 theta, measured with the
    orientation induced by (1, e1, e2).

    Args:
        a: Unit element of A_2 other than +-1.

    Returns:
        The axis and angle.

    Raises:
        AlgebraError: If a is not a unit or a = +-1.

    Example:
        >>> r = axis_angle(exp(0.4 * Multivector.basis("e12")))
        >>> round(r.angle, 12), r.v["1"]
        (0.8, 1.0)
    """
    _require_unit(a)
    imag = np.array([a["e12"], -a["e2"], a["e1"]])
    size = float(np.linalg.norm(imag))
    if size <= SETTINGS.unit_tol:
        raise AlgebraError("identity rotation, axis undefined")
    theta = math.atan2(size, a["1"])
    return AxisAngle(_from_coords(imag / size), 2.0 * theta)


def rotation_matrix(a: Multivector) -> NDArray[np.float64]:
    """3 x 3 matrix of rho_a in the basis (1, e1, e2)."""
    _require_unit(a)
    columns = [_coords(rho(a, Multivector.basis(b))) for b in (0, 1, 2)]
    return np.column_stack(columns)


@dataclass(frozen=True)
class EulerTriple:
    """Angles of a = exp(alpha e1) exp(beta e12) exp(gamma e1)."""

    alpha: float
    beta: float
    gamma: float

    @property
    def regular(self) -> bool:
        """True when sin 2 beta is away from zero."""
        return abs(math.sin(2.0 * self.beta)) >= SETTINGS.regular_threshold

    def normalized(self) -> "EulerTriple":
        """Reduce every angle to [0, 2 pi)."""
        return EulerTriple(_mod2pi(self.alpha), _mod2pi(self.beta), _mod2pi(self.gamma))

    def as_tuple(self) -> tuple[float, float, float]:
        """Return (alpha, beta, gamma)."""
        return self.alpha, self.beta, self.gamma

    def close_to(self, other: "EulerTriple", atol: float = 1e-9) -> bool:
        """Compare angles modulo 2 pi."""
        for x, y in zip(self.as_tuple(), other.as_tuple()):
            gap = _mod2pi(x - y)
            if min(gap, TWO_PI - gap) > atol:
                return False
        return True


@dataclass(frozen=True)
class EulerFamily:
    """One-parameter set of Euler triples of a non-regular element.

    Attributes:
        constraint: ``"sum"`` when only gamma + alpha is fixed, ``"difference"``
            when only gamma - alpha is fixed.
        branches: Pairs (beta, fixed value) with the value reduced mod 2 pi.
        tag: Short description of the degeneracy.
    """

    constraint: Literal["sum", "difference"]
    branches: tuple[tuple[float, float], ...]
    tag: str

    def triple(self, alpha: float, branch: int = 0) -> EulerTriple:
        """Member of the family with the given alpha."""
        beta, value = self.branches[branch]
        gamma = value - alpha if self.constraint == "sum" else value + alpha
        return EulerTriple(alpha, beta, gamma).normalized()


def euler_compose(t: EulerTriple) -> Multivector:
    """Return exp(alpha e1) exp(beta e12) exp(gamma e1) in closed form."""
    cb, sb = math.cos(t.beta), math.sin(t.beta)
    total, diff = t.gamma + t.alpha, t.gamma - t.alpha
    return Multivector(
        2,
        np.array(
            [
                cb * math.cos(total),
                cb * math.sin(total),
                sb * math.sin(diff),
                sb * math.cos(diff),
            ]
        ),
    )


def euler_product(t: EulerTriple) -> Multivector:
    """Three-factor product exp(alpha e1) exp(beta e12) exp(gamma e1)."""
    e1, e12 = Multivector.basis("e1"), Multivector.basis("e12")
    return mul(mul(exp(e1 * t.alpha), exp(e12 * t.beta)), exp(e1 * t.gamma))


def psi(t: EulerTriple) -> EulerTriple:
    """Deck transformation (alpha + pi/2, -beta, gamma + pi/2); composes to -a."""
    half = math.pi / 2.0
    return EulerTriple(t.alpha + half, -t.beta, t.gamma + half).normalized()


def euler_decompose(a: Multivector) -> list[EulerTriple] | EulerFamily:
    """All Euler triples of a unit a.

    For regular a the eight solutions in (R / 2 pi Z)^3 are returned. When
    sin 2 beta vanishes only gamma + alpha or gamma - alpha is determined and an
    :class:`EulerFamily` is returned instead.

    Raises:
        AlgebraError: If a is not a unit element of A_2.
    """
    _require_unit(a)
    a0, a1, a2, a12 = (float(v) for v in a.coeffs)
    beta0 = math.atan2(math.hypot(a2, a12), math.hypot(a0, a1))

    if abs(math.sin(2.0 * beta0)) < SETTINGS.regular_threshold:
        if math.sin(beta0) < math.cos(beta0):
            s0 = math.atan2(a1, a0)
            logger.debug(f"Non-regular element {a}: gamma + alpha = {s0}")
            return EulerFamily(
                "sum",
                ((0.0, _mod2pi(s0)), (math.pi, _mod2pi(s0 + math.pi))),
                "beta is a multiple of pi",
            )
        d0 = math.atan2(a2, a12)
        logger.debug(f"Non-regular element {a}: gamma - alpha = {d0}")
        return EulerFamily(
            "difference",
            ((math.pi / 2.0, _mod2pi(d0)), (1.5 * math.pi, _mod2pi(d0 + math.pi))),
            "beta is an odd multiple of pi/2",
        )

    solutions: list[EulerTriple] = []
    for beta in (beta0, math.pi - beta0, math.pi + beta0, TWO_PI - beta0):
        cb, sb = math.cos(beta), math.sin(beta)
        total = math.atan2(a1 / cb, a0 / cb)
        diff = math.atan2(a2 / sb, a12 / sb)
        alpha, gamma = (total - diff) / 2.0, (total + diff) / 2.0
        solutions.append(EulerTriple(alpha, beta, gamma).normalized())
        shifted = EulerTriple(alpha + math.pi, beta, gamma + math.pi)
        solutions.append(shifted.normalized())
    return solutions


def arnold_conjugate(s: float, t: float) -> tuple[Multivector, Multivector]:
    """Both sides of exp(s e1) exp(t e12) exp(-s e1) = exp(t exp(2 s e1) e12).

    Example:
        >>> lhs, rhs = arnold_conjugate(0.0, 0.0)
        >>> lhs["1"], rhs["1"]
        (1.0, 1.0)
    """
    e1, e12 = Multivector.basis("e1"), Multivector.basis("e12")
    lhs = mul(mul(exp(e1 * s), exp(e12 * t)), exp(e1 * -s))
    rhs = exp(mul(exp(e1 * (2.0 * s)), e12) * t)
    return lhs, rhs


def euler_corollary_forms(t: EulerTriple) -> tuple[Multivector, Multivector]:
    """The Euler product rewritten with a single conjugated middle factor.

    Returns:
        exp(beta exp(2 alpha e1) e12) exp((alpha + gamma) e1) and
        exp((alpha + gamma) e1) exp(beta exp(-2 gamma e1) e12).
    """
    e1, e12 = Multivector.basis("e1"), Multivector.basis("e12")
    outer = exp(e1 * (t.alpha + t.gamma))
    left = mul(exp(mul(exp(e1 * (2.0 * t.alpha)), e12) * t.beta), outer)
    right = mul(outer, exp(mul(exp(e1 * (-2.0 * t.gamma)), e12) * t.beta))
    return left, right


@dataclass(frozen=True)
class UnitTangent:
    """Unit tangent vector u at the point x of the unit sphere of R + R e1 + R e2."""

    x: Multivector
    u: Multivector

    def __post_init__(self) -> None:
        """Check unit length and orthogonality."""
        x, u = _coords(self.x), _coords(self.u)
        tol = SETTINGS.unit_tol
        sizes = (float(np.linalg.norm(x)), float(np.linalg.norm(u)))
        if max(abs(size - 1.0) for size in sizes) > tol:
            raise AlgebraError("Unit tangent needs unit x and u")
        if abs(float(np.dot(x, u))) > tol:
            raise AlgebraError(f"Unit tangent needs <x, u> = 0, got {np.dot(x, u):.3e}")

    def frame(self) -> NDArray[np.float64]:
        """Matrix with columns x, u, x cross u."""
        x, u = _coords(self.x), _coords(self.u)
        return np.column_stack([x, u, np.cross(x, u)])


def tangent_transport(a: Multivector) -> UnitTangent:
    """Image (rho_a(1), rho_a(e1)) of the unit tangent (1, e1)."""
    _require_unit(a)
    one, e1 = Multivector.scalar(1.0), Multivector.basis("e1")
    return UnitTangent(rho(a, one), rho(a, e1))


def read_euler_from_tangent(target: UnitTangent) -> tuple[Multivector, Multivector]:
    """Recover +-a from the image of (1, e1) under rho_a.

    The frame (x, u, x cross u) is the rotation matrix of rho_a; its unit
    quaternion (qx, qy, qz, qw) corresponds to a = qw + qz e1 - qy e2 + qx e12.

    Raises:
        AlgebraError: If the target is not a valid unit tangent.

    Example:
        >>> one, e1 = Multivector.scalar(1.0), Multivector.basis("e1")
        >>> a, _ = read_euler_from_tangent(UnitTangent(one, e1))
        >>> abs(abs(a["1"]) - 1.0) < 1e-12
        True
    """
    qx, qy, qz, qw = Rotation.from_matrix(target.frame()).as_quat()
    a = Multivector(2, np.array([qw, qz, -qy, qx]))
    a = a / norm(a)
    return a, -a


def tangent_euler_angles(target: UnitTangent) -> EulerTriple:
    """Doubled Euler angles (2 alpha, 2 beta, 2 gamma) read off the target.

    2 beta is the angle between the great circle through (1, e1) and the one
    through the target, 2 alpha places their intersection and 2 gamma is
    the position of x along the target circle. Halving the returned angles gives
    a triple that composes to one of the two answers of
    :func:`read_euler_from_tangent`. When the circles coincide alpha is set to 0.
    """
    frame = target.frame()
    x, u, w = frame[:, 0], frame[:, 1], frame[:, 2]
    tilt = math.hypot(x[2], u[2])
    if tilt < SETTINGS.regular_threshold:
        if w[2] > 0:
            return EulerTriple(0.0, 0.0, _mod2pi(math.atan2(x[1], x[0])))
        return EulerTriple(0.0, math.pi, _mod2pi(-math.atan2(x[1], x[0])))
    two_beta = math.atan2(tilt, w[2])
    two_gamma = math.atan2(x[2], u[2])
    two_alpha = math.atan2(w[0], -w[1])
    return EulerTriple(_mod2pi(two_alpha), two_beta, _mod2pi(two_gamma))
