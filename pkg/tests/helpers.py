"""Random sample helpers shared by the tests."""

import math

import numpy as np

from hexagauss.clifford import Multivector
from hexagauss.rotations import EulerTriple


def random_multivector(
    rng: np.random.Generator, n: int = 2, scale: float = 1.0
) -> Multivector:
    """Draw a multivector of A_n with normal coefficients."""
    return Multivector(n, scale * rng.normal(size=1 << n))


def random_unit(rng: np.random.Generator) -> Multivector:
    """Draw a unit quaternion."""
    v = rng.normal(size=4)
    return Multivector(2, v / np.linalg.norm(v))


def random_bounded(rng: np.random.Generator, radius: float) -> Multivector:
    """Draw an element of A_2 with norm uniform in [0, radius]."""
    v = rng.normal(size=4)
    return Multivector(2, v * (rng.uniform(0.0, radius) / np.linalg.norm(v)))


def random_regular_triple(rng: np.random.Generator) -> EulerTriple:
    """Draw Euler angles with |sin 2 beta| >= 0.05."""
    while True:
        alpha, beta, gamma = rng.uniform(0.0, 2.0 * math.pi, size=3)
        if abs(math.sin(2.0 * beta)) >= 0.05:
            return EulerTriple(float(alpha), float(beta), float(gamma))


def angle_gap(x: float, y: float) -> float:
    """Distance of two angles on R / 2 pi Z."""
    return abs((x - y + math.pi) % (2.0 * math.pi) - math.pi)


def eight_euler_triples(t: EulerTriple) -> list[tuple[float, float, float]]:
    """The eight triples with the same Euler product as t, by shifts and flips."""
    a, b, g = t.as_tuple()
    pi, half = math.pi, math.pi / 2.0
    return [
        (a, b, g),
        (a + pi, b, g + pi),
        (a + pi, b + pi, g),
        (a, b + pi, g + pi),
        (a + half, -b, g - half),
        (a - half, -b, g + half),
        (a - half, pi - b, g - half),
        (a + half, pi - b, g + half),
    ]


def same_triples_mod_2pi(
    found: list[EulerTriple],
    expected: list[tuple[float, float, float]],
    atol: float = 1e-8,
) -> bool:
    """True if both lists hold the same triples on (R / 2 pi Z)^3."""

    def close(x: tuple[float, ...], y: tuple[float, ...]) -> bool:
        return max(angle_gap(p, q) for p, q in zip(x, y)) <= atol

    tuples = [t.as_tuple() for t in found]
    return (
        len(tuples) == len(expected)
        and all(any(close(x, y) for y in expected) for x in tuples)
        and all(any(close(y, x) for x in tuples) for y in expected)
    )
