"""Unit tests for hexagauss.transcend module."""

import math

import pytest

from hexagauss.clifford import AlgebraError, Multivector, allclose, mul, norm, star
from hexagauss.transcend import (
    commutator_norm,
    cosh,
    cosh_sinh,
    exp,
    exp_series,
    log_branch,
    ominus,
    oplus,
    oplus_chain,
    polar,
    principal_log,
    sinh,
)
from tests.helpers import random_multivector


def test_exp_of_zero_and_real():
    """Test exp on real arguments."""
    assert allclose(exp(Multivector.zero()), Multivector.scalar(1.0))
    assert math.isclose(exp(Multivector.scalar(2.5))["1"], math.exp(2.5), rel_tol=1e-13)


def test_exp_half_turn(e1, e12):
    """Test exp(pi u) = -1 for u = e1 and u = e12."""
    for u in (e1, e12):
        assert allclose(exp(math.pi * u), Multivector.scalar(-1.0), atol=1e-12)


def test_exp_large_argument(e12):
    """Test both evaluations far from 0."""
    x = 3.0 + 20.0 * e12
    expected = math.exp(3.0) * (math.cos(20.0) + math.sin(20.0) * e12)
    assert allclose(exp(x), expected, atol=1e-12)
    assert allclose(exp_series(x), expected, atol=1e-9)


def test_exp_matches_series(rng):
    """Test the closed form on A_2 against the Taylor sum."""
    for _ in range(20):
        x = random_multivector(rng)
        assert allclose(exp(x), exp_series(x), atol=1e-11 * max(1.0, norm(exp(x))))
    x = Multivector.from_blades({"1": 0.3, "e1": 0.7, "e2": -0.2, "e12": 0.1})
    assert allclose(exp(x), exp_series(x), atol=1e-13)


def test_exp_in_a3_uses_series():
    """Test exp of a para-vector of A_3 against the closed form."""
    x = Multivector.from_blades({"1": 0.2, "e3": 1.5}, n=3)
    expected = math.exp(0.2) * (
        math.cos(1.5) + math.sin(1.5) * Multivector.basis("e3", n=3)
    )
    assert allclose(exp(x), expected, atol=1e-12)


def test_exp_adds_commuting_arguments(e12):
    """Test exp(x + y) = exp x exp y when x and y commute."""
    x = 0.3 + 0.4 * e12
    y = -0.2 + 1.1 * e12
    assert allclose(exp(x + y), mul(exp(x), exp(y)), atol=1e-12)


def test_cosh_sinh_identity(rng):
    """Test cosh x cosh x* - sinh x sinh x* = 1."""
    for _ in range(5):
        x = random_multivector(rng)
        value = mul(cosh(x), cosh(star(x))) - mul(sinh(x), sinh(star(x)))
        assert allclose(value, Multivector.scalar(1.0), atol=1e-10)


def test_cosh_sinh_pair(rng):
    """Test that cosh_sinh agrees with cosh and sinh and sums to exp."""
    x = random_multivector(rng)
    ch, sh = cosh_sinh(x)
    assert allclose(ch, cosh(x)) and allclose(sh, sinh(x))
    assert allclose(ch + sh, exp(x), atol=1e-12 * max(1.0, norm(exp(x))))


def test_cosh_sinh_on_reals():
    """Test agreement with the real hyperbolic functions."""
    x = Multivector.scalar(0.7)
    assert math.isclose(cosh(x)["1"], math.cosh(0.7), rel_tol=1e-13)
    assert math.isclose(sinh(x)["1"], math.sinh(0.7), rel_tol=1e-13)


def test_polar_form(e12):
    """Test the polar form of 1 + e12."""
    form = polar(1.0 + e12)
    assert math.isclose(form.radius, math.sqrt(2.0))
    assert math.isclose(form.theta, math.pi / 4)
    assert form.u is not None and allclose(form.u, e12)
    assert allclose(form.reconstruct(), 1.0 + e12, atol=1e-14)


def test_polar_form_of_reals():
    """Test that real inputs leave the axis free."""
    positive = polar(Multivector.scalar(3.0))
    negative = polar(Multivector.scalar(-3.0))
    assert positive.free and positive.theta == 0.0
    assert negative.free and negative.theta == math.pi


def test_polar_rejects_zero_and_a3():
    """Test the polar form error cases."""
    with pytest.raises(AlgebraError, match="zero"):
        polar(Multivector.zero())
    with pytest.raises(AlgebraError, match="A_2"):
        polar(Multivector.scalar(1.0, 3))


def test_principal_log_inverts_exp(rng):
    """Test exp(Log a) = a and exp of every branch."""
    for _ in range(5):
        a = random_multivector(rng)
        log = principal_log(a)
        assert allclose(exp(log.principal), a, atol=1e-10 * norm(a))
        for k in (-2, 1, 3):
            assert allclose(exp(log.branch(k)), a, atol=1e-9 * norm(a))
            assert allclose(exp(log_branch(a, k)), a, atol=1e-9 * norm(a))


def test_principal_log_of_positive_real():
    """Test Log e^2 = 2 with a free period."""
    log = principal_log(Multivector.scalar(math.e**2))
    assert math.isclose(log.principal["1"], 2.0)
    assert log.period is None
    with pytest.raises(AlgebraError, match="axis"):
        log.branch(1)


def test_principal_log_of_negative_real(e1, e12):
    """Test Log(-1) with the default axis and with an explicit axis."""
    log = principal_log(Multivector.scalar(-1.0))
    assert allclose(log.principal, math.pi * e12)
    assert not log.canonical

    along = principal_log(Multivector.scalar(-1.0), axis=e1)
    assert allclose(along.principal, math.pi * e1)
    assert along.period is not None and allclose(along.period, 2.0 * math.pi * e1)


def test_principal_log_along_axis(e1):
    """Test that an axis keeps values in R + R*axis with angles in (-pi, pi]."""
    a = exp(0.5 - 2.0 * e1)
    log = principal_log(a, axis=e1)
    assert allclose(log.principal, 0.5 - 2.0 * e1, atol=1e-12)
    assert log.canonical


def test_principal_log_of_zero():
    """Test that Log 0 raises."""
    with pytest.raises(AlgebraError):
        principal_log(Multivector.zero())


def test_oplus_of_commuting_terms(e12):
    """Test that x (+) y = x + y for commuting terms of small angle."""
    x = 0.3 + 0.4 * e12
    y = -0.2 + 1.1 * e12
    assert allclose(oplus(x, y).principal, x + y, atol=1e-12)
    assert allclose(oplus_chain(x, y, -y), x, atol=1e-12)


def test_ominus_of_itself(rng):
    """Test x (-) x = 0."""
    x = random_multivector(rng)
    assert allclose(ominus(x, x).principal, Multivector.zero(), atol=1e-12)


def test_oplus_satisfies_exp(rng):
    """Test exp(x (+) y) = exp x exp y for non-commuting terms."""
    x, y = random_multivector(rng, scale=0.5), random_multivector(rng, scale=0.5)
    assert commutator_norm(x, y) > 1e-3
    value = exp(oplus(x, y).principal)
    assert allclose(value, mul(exp(x), exp(y)), atol=1e-10)


def test_commutator_norm(e1, e2):
    """Test the commutator of exponentials."""
    assert commutator_norm(e1, e1) == 0.0
    assert commutator_norm(e1, e2) > 0.1


def test_oplus_chain_rejects_empty():
    """Test that an empty composition raises."""
    with pytest.raises(AlgebraError):
        oplus_chain()
