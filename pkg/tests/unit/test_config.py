"""Unit tests for hexagauss.config module."""

import pytest

from hexagauss.config import (
    DEFAULT_TOLERANCE,
    SETTINGS,
    TOLERANCE_ENV_VAR,
    resolve_tolerance,
)


def test_default_tolerance(monkeypatch):
    """Test the default when nothing is configured."""
    monkeypatch.delenv(TOLERANCE_ENV_VAR, raising=False)
    assert resolve_tolerance() == DEFAULT_TOLERANCE == 1e-8


def test_environment_override(monkeypatch):
    """Test that the environment variable is honored."""
    monkeypatch.setenv(TOLERANCE_ENV_VAR, "1e-6")
    assert resolve_tolerance() == 1e-6


def test_argument_wins_over_environment(monkeypatch):
    """Test that an explicit value beats the environment."""
    monkeypatch.setenv(TOLERANCE_ENV_VAR, "1e-6")
    assert resolve_tolerance(1e-9) == 1e-9


@pytest.mark.parametrize("value", [0.0, -1e-9, 1e-2, 0.5])
def test_out_of_range_tolerance(value):
    """Test that tolerances outside (0, 1e-2) are rejected."""
    with pytest.raises(ValueError, match="must lie in"):
        resolve_tolerance(value)


def test_unparseable_environment(monkeypatch):
    """Test that a malformed environment value is rejected."""
    monkeypatch.setenv(TOLERANCE_ENV_VAR, "tight")
    with pytest.raises(ValueError, match=TOLERANCE_ENV_VAR):
        resolve_tolerance()


def test_settings_are_frozen():
    """Test that shared thresholds cannot be mutated."""
    with pytest.raises(AttributeError):
        SETTINGS.atol = 1.0  # type: ignore[misc]
