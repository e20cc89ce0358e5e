"""Pytest configuration and shared fixtures.

This module provides random generators, sample elements and shared generated
hexagons for all tests.
"""

import numpy as np
import pytest

from hexagauss.clifford import Multivector
from hexagauss.hexagon.generators import (
    AugmentedHexagonH4,
    HexagonH3,
    PlanarHexagon,
    random_augmented_hexagon_h4,
    random_hexagon_h3,
    random_planar_hexagon,
)


@pytest.fixture
def rng() -> np.random.Generator:
    """Return a seeded random generator.

    Returns:
        A fresh generator, identical for every test.
    """
    return np.random.default_rng(20240601)


@pytest.fixture
def e1() -> Multivector:
    """Return the generator e1 of A_2."""
    return Multivector.basis("e1")


@pytest.fixture
def e2() -> Multivector:
    """Return the generator e2 of A_2."""
    return Multivector.basis("e2")


@pytest.fixture
def e12() -> Multivector:
    """Return the bivector e12 of A_2."""
    return Multivector.basis("e12")


@pytest.fixture(scope="session")
def hexagon_h3() -> HexagonH3:
    """Return a generated hexagon of H^3."""
    return random_hexagon_h3(11)


@pytest.fixture(scope="session")
def hexagon_h4() -> AugmentedHexagonH4:
    """Return a generated augmented hexagon of H^4."""
    return random_augmented_hexagon_h4(7)


@pytest.fixture(scope="session")
def planar_hexagon() -> PlanarHexagon:
    """Return a generated convex hexagon of the plane."""
    return random_planar_hexagon(5)
