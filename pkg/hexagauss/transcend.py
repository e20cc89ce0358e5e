"""Transcendental functions on A_2.

Provides exp, the polar decomposition, single and multi-valued logarithms,
the star-twisted hyperbolic functions and the composition x (+) y.

Every non-real a in A_2 can be written a = |a| (cos t + u sin t) with u^2 = -1,
so Log a = log|a| + t u and the logarithms of a differ by multiples of 2 pi u.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from hexagauss.clifford import (
    AlgebraError,
    Multivector,
    inner,
    mul,
    norm,
    scalar_part,
    star,
)
from hexagauss.config import SETTINGS

logger = logging.getLogger(__name__)

TAYLOR_ORDER = 16
SCALING_RADIUS = 0.5


def _require_a2(a: Multivector, what: str) -> None:
    if a.n > 2:
        raise AlgebraError(f"{what} is only defined on A_2, got A_{a.n}")


def _default_axis(n: int) -> Multivector:
    return Multivector.basis("e12" if n >= 2 else "e1", n)


def exp(x: Multivector) -> Multivector:
    """Exponential sum x^m / m!.

    On A_n with n <= 2 the non-real part v of x satisfies v^2 = -|v|^2, so
    exp(x0 + v) = e^x0 (cos|v| + v sin|v| / |v|). Larger algebras go through
    :func:`exp_series`.

    Example:
        >>> str(exp(Multivector.zero()))
        '1.0'
    """
    if x.n > 2:
        return exp_series(x)
    x0 = float(x.coeffs[0])
    angle = float(np.linalg.norm(x.coeffs[1:]))
    scale = math.exp(x0)
    coeffs = x.coeffs * (scale * math.sin(angle) / angle if angle > 0 else 0.0)
    coeffs[0] = scale * math.cos(angle)
    return Multivector(x.n, coeffs)


def exp_series(x: Multivector) -> Multivector:
    """Exponential by scaling and squaring of the Taylor sum.

    x is halved until |x| <= 0.5, summed to order 16 and squared back.
    """
    size = norm(x)
    squarings = 0
    if size > SCALING_RADIUS:
        squarings = math.ceil(math.log2(size / SCALING_RADIUS))
    y = x / float(2**squarings)

    one = Multivector.scalar(1.0, x.n)
    term = one
    total = one
    for m in range(1, TAYLOR_ORDER + 1):
        term = mul(term, y) / float(m)
        total = total + term
    for _ in range(squarings):
        total = mul(total, total)
    return total


def cosh(x: Multivector) -> Multivector:
    """cosh x = (exp x + exp(-x*)) / 2."""
    return cosh_sinh(x)[0]


def sinh(x: Multivector) -> Multivector:
    """sinh x = (exp x - exp(-x*)) / 2."""
    return cosh_sinh(x)[1]


def cosh_sinh(x: Multivector) -> tuple[Multivector, Multivector]:
    """Return (cosh x, sinh x) from a single pair of exponentials."""
    ahead, behind = exp(x), exp(-star(x))
    return (ahead + behind) / 2.0, (ahead - behind) / 2.0


@dataclass(frozen=True)
class PolarForm:
    """Polar decomposition a = radius (cos theta + u sin theta).

    Attributes:
        radius: |a| > 0.
        theta: Angle in (0, pi) for non-real a; 0 or pi for real a.
        u: Unit element with zero scalar part, or None when a is real and
            the axis is free.
    """

    radius: float
    theta: float
    u: Multivector | None

    @property
    def free(self) -> bool:
        """True when a is real and any unit u would do."""
        return self.u is None

    def reconstruct(self, n: int = 2) -> Multivector:
        """Return radius (cos theta + u sin theta)."""
        value = Multivector.scalar(self.radius * math.cos(self.theta), n)
        if self.u is not None:
            value = value + self.u * (self.radius * math.sin(self.theta))
        return value


def polar(a: Multivector) -> PolarForm:
    """Polar decomposition of a non-zero a in A_2.

    Raises:
        AlgebraError: If a is zero or not in A_2.

    Example:
        >>> polar(Multivector.scalar(-3.0)).theta == math.pi
        True
    """
    _require_a2(a, "polar")
    radius = norm(a)
    if radius <= SETTINGS.atol:
        raise AlgebraError("Polar form of zero is undefined")
    a0 = scalar_part(a)
    imag = a - a0
    imag_size = norm(imag)
    if imag_size <= SETTINGS.atol * radius:
        return PolarForm(radius, 0.0 if a0 > 0 else math.pi, None)
    return PolarForm(radius, math.atan2(imag_size, a0), imag / imag_size)


@dataclass(frozen=True)
class LogValue:
    """Principal logarithm together with its period.

    Attributes:
        principal: The value Log a, with exp(principal) = a.
        period: 2 pi u, or None when a is a positive real and no axis was given.
        canonical: False when a is a negative real and the axis was chosen by
            convention.
    """

    principal: Multivector
    period: Multivector | None
    canonical: bool = True

    def branch(self, k: int) -> Multivector:
        """Return Log a + k * period."""
        if k == 0:
            return self.principal
        if self.period is None:
            raise AlgebraError("Period is free for a positive real; give an axis")
        return self.principal + self.period * float(k)


def principal_log(a: Multivector, axis: Multivector | None = None) -> LogValue:
    """Single-valued logarithm Log a.

    When ``axis`` is given and the imaginary part of a lies along it, the angle
    is measured along ``axis`` in (-pi, pi], so values stay in R + R*axis.
    Negative reals get log|a| + pi*u with u = axis, defaulting to e12, and are
    flagged non-canonical.

    Args:
        a: Non-zero element of A_2.
        axis: Optional unit element with u^2 = -1.

    Returns:
        The principal value and its period.

    Raises:
        AlgebraError: If a is zero.

    Example:
        >>> principal_log(Multivector.scalar(math.e**2)).principal["1"]
        2.0
    """
    _require_a2(a, "Log")
    radius = norm(a)
    if radius <= SETTINGS.atol:
        raise AlgebraError("Logarithm of zero is undefined")
    log_r = math.log(radius)
    a0 = scalar_part(a)
    imag = a - a0
    imag_size = norm(imag)

    if axis is not None:
        unit = axis / norm(axis)
        along = inner(imag, unit)
        if norm(imag - unit * along) <= 1e-9 * radius:
            angle = math.atan2(along, a0)
            if a0 < 0 and abs(along) <= SETTINGS.atol * radius:
                angle = math.pi
            canonical = imag_size > SETTINGS.atol * radius or a0 > 0
            return LogValue(
                Multivector.scalar(log_r, a.n) + unit * angle,
                unit * (2.0 * math.pi),
                canonical,
            )

    if imag_size <= SETTINGS.atol * radius:
        if a0 > 0:
            return LogValue(Multivector.scalar(log_r, a.n), None)
        u = _default_axis(a.n)
        logger.debug(f"Log of negative real {a0} taken along {u}")
        return LogValue(
            Multivector.scalar(log_r, a.n) + u * math.pi,
            u * (2.0 * math.pi),
            canonical=False,
        )

    u = imag / imag_size
    theta = math.atan2(imag_size, a0)
    return LogValue(Multivector.scalar(log_r, a.n) + u * theta, u * (2.0 * math.pi))


def log_branch(a: Multivector, k: int, axis: Multivector | None = None) -> Multivector:
    """Return the k-th logarithm Log a + k * 2 pi u."""
    return principal_log(a, axis).branch(k)


def oplus(x: Multivector, y: Multivector, axis: Multivector | None = None) -> LogValue:
    """x (+) y = Log(exp x exp y)."""
    return principal_log(mul(exp(x), exp(y)), axis)


def ominus(x: Multivector, y: Multivector, axis: Multivector | None = None) -> LogValue:
    """x (-) y = x (+) (-y)."""
    return oplus(x, -y, axis)


def oplus_chain(*terms: Multivector) -> Multivector:
    """Left-associated principal value of t1 (+) t2 (+) ... (+) tk."""
    if not terms:
        raise AlgebraError("Empty composition")
    value = terms[0]
    for t in terms[1:]:
        value = oplus(value, t).principal
    return value


def commutator_norm(x: Multivector, y: Multivector) -> float:
    """Return |exp x exp y - exp y exp x|."""
    ex, ey = exp(x), exp(y)
    return float(np.linalg.norm((mul(ex, ey) - mul(ey, ex)).coeffs))
