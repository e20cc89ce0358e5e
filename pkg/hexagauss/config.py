"""Numerical thresholds shared across hexagauss.

All tolerances live here so that algebra, geometry and verification agree on
what "zero" means. The verification tolerance can be overridden through the
``HEXAGAUSS_TOL`` environment variable.
"""

import logging
import os
from dataclasses import dataclass

logger = logging.getLogger(__name__)

TOLERANCE_ENV_VAR = "HEXAGAUSS_TOL"
DEFAULT_TOLERANCE = 1e-8
MAX_TOLERANCE = 1e-2


@dataclass(frozen=True)
class Settings:
    """Thresholds used by the numerical routines.

    Attributes:
        atol: Absolute tolerance for algebra-level comparisons.
        invert_residual: Relative residual accepted by ``inverse``.
        infinity_threshold: Relative size below which ``cx + d`` counts as zero.
        ortho_tol: Relative orthogonality slack accepted when normalizing crosses.
        regular_threshold: ``|sin 2β|`` below which an Euler triple is degenerate.
        unit_tol: Slack accepted for unit-length inputs.
    """

    atol: float = 1e-12
    invert_residual: float = 1e-9
    infinity_threshold: float = 1e-9
    ortho_tol: float = 1e-6
    regular_threshold: float = 1e-8
    unit_tol: float = 1e-10


SETTINGS = Settings()


def resolve_tolerance(value: float | None = None) -> float:
    """Pick the verification tolerance.

    An explicit value wins, then ``HEXAGAUSS_TOL``, then the default.

    Args:
        value: Tolerance given on the command line, if any.

    Returns:
        A tolerance in the open interval (0, 1e-2).

    Raises:
        ValueError: If the tolerance is unparseable or out of range.

    Example:
        >>> resolve_tolerance(1e-9)
        1e-09
    """
    source = "argument"
    if value is None:
        raw = os.environ.get(TOLERANCE_ENV_VAR)
        if raw is None:
            return DEFAULT_TOLERANCE
        source = TOLERANCE_ENV_VAR
        try:
            value = float(raw)
        except ValueError as e:
            raise ValueError(f"Invalid {TOLERANCE_ENV_VAR} value: {raw!r}") from e

    if not 0.0 < value < MAX_TOLERANCE:
        raise ValueError(
            f"Tolerance from {source} must lie in (0, {MAX_TOLERANCE}), got {value}"
        )
    logger.debug(f"Using tolerance {value} from {source}")
    return value
