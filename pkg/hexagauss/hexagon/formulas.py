"""Generalized Delambre-Gauss formulas for hexagons.

For an augmented hexagon of H^4 with half side-lengths d1, ..., d6 (d1, d3, d5
quaternions, d2, d4, d6 in R + R e2) and C_n = cosh d_n, S_n = sinh d_n, the
ordered Clifford products satisfy, for one sign eps:

    S1 C2 S3 + C1 C2 C3 = eps (S4 C5 S6 + C4 C5 C6)*
    S1 C2 C3 + C1 C2 S3 = eps (S4 S5 S6 - C4 S5 C6)*
    S1 S2 S3 - C1 S2 C3 = eps (S4 C5 C6 + C4 C5 S6)*
    S1 S2 C3 - C1 S2 S3 = eps (S4 S5 C6 - C4 S5 S6)*

For a hexagon of H^3 the half lengths are complex and the identities reduce
to four formulas in cosh and sinh of sums and differences. The laws of
cosines and sines for the complex side lengths follow from them.

Residuals are max |coefficient of LHS - eps RHS*| / (1 + max(|LHS|, |RHS|)).
"""

import cmath
import logging
import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from typing import Any

from hexagauss.clifford import Multivector, norm, product, star
from hexagauss.config import resolve_tolerance
from hexagauss.hexagon.lengths import HalfLengthSet
from hexagauss.transcend import cosh, exp, oplus_chain, sinh

logger = logging.getLogger(__name__)

Deltas = HalfLengthSet | Sequence[Multivector]

SUBSPACE_TOL = 1e-9

_E1 = Multivector.basis("e1")


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of checking one family of identities on one instance.

    Attributes:
        space: What was checked: ``"h4"``, ``"h4-oplus"``, ``"h3"`` or a
            classical family such as ``"spherical"``.
        formulas: Residual per formula at the chosen sign.
        entries: Residuals of secondary identities (matrix entries, derived
            laws, classical corollaries).
        epsilon: The common sign, +1 or -1.
        branches: Branch bit per side (0 for principal values).
        tolerance: Threshold every residual was compared against.
        passed: True if every residual is within tolerance.
        closure_residual: Distance of the side-isometry product to +-I, if
            it was measured.
        degenerate: True when both signs satisfied the deciding formula.
        notes: Free-form remarks.
    """

    space: str
    formulas: dict[str, float]
    entries: dict[str, float]
    epsilon: int
    branches: tuple[int, ...]
    tolerance: float
    passed: bool
    closure_residual: float | None = None
    degenerate: bool = False
    notes: tuple[str, ...] = field(default=())

    @property
    def max_residual(self) -> float:
        """Largest residual in the report, closure included."""
        values = list(self.formulas.values()) + list(self.entries.values())
        if self.closure_residual is not None:
            values.append(self.closure_residual)
        return max(values, default=0.0)

    def failing(self) -> list[str]:
        """Names of the identities above tolerance."""
        checks = {**self.formulas, **self.entries}
        names = [k for k, v in checks.items() if not v <= self.tolerance]
        closure = self.closure_residual
        if closure is not None and not closure <= self.tolerance:
            names.append("closure")
        return names

    def to_dict(self) -> dict[str, Any]:
        """JSON-ready report."""
        return {
            "space": self.space,
            "formulas": dict(self.formulas),
            "entries": dict(self.entries),
            "epsilon": self.epsilon,
            "branches": list(self.branches),
            "tolerance": self.tolerance,
            "pass": self.passed,
            "closure_residual": self.closure_residual,
            "degenerate": self.degenerate,
            "notes": list(self.notes),
        }


def _residual(lhs: Multivector, rhs: Multivector, eps: int) -> float:
    """Normalized residual of lhs = eps * rhs* (rhs is not yet starred)."""
    rhs_star = star(rhs)
    diff = float(max(abs(c) for c in (lhs - rhs_star * float(eps)).coeffs))
    return diff / (1.0 + max(norm(lhs), norm(rhs_star)))


def _complex_residual(lhs: complex, rhs: complex, eps: int) -> float:
    diff = lhs - eps * rhs
    return max(abs(diff.real), abs(diff.imag)) / (1.0 + max(abs(lhs), abs(rhs)))


@dataclass(frozen=True)
class _Decision:
    epsilon: int
    residuals: dict[str, float]
    degenerate: bool


def _choose_epsilon(
    evaluate: Callable[[int], dict[str, float]], deciding: str, tolerance: float
) -> _Decision:
    """Pick eps from the deciding formula; the overall max breaks ties."""
    plus, minus = evaluate(1), evaluate(-1)
    plus_ok, minus_ok = plus[deciding] <= tolerance, minus[deciding] <= tolerance
    if plus_ok and minus_ok:
        chosen = plus if max(plus.values()) <= max(minus.values()) else minus
        return _Decision(1 if chosen is plus else -1, chosen, True)
    if plus[deciding] <= minus[deciding]:
        return _Decision(1, plus, False)
    return _Decision(-1, minus, False)


def _values(deltas: Deltas) -> tuple[tuple[Multivector, ...], tuple[int, ...]]:
    if isinstance(deltas, HalfLengthSet):
        return deltas.values, deltas.branches
    values = tuple(deltas)
    if len(values) != 6:
        raise ValueError(f"Need 6 half side-lengths, got {len(values)}")
    return values, (0,) * 6


def _in_e2_plane(x: Multivector) -> bool:
    return abs(x["e1"]) + abs(x["e12"]) <= SUBSPACE_TOL * (1.0 + norm(x))


def _in_e1_plane(x: Multivector) -> bool:
    return abs(x["e2"]) + abs(x["e12"]) <= SUBSPACE_TOL * (1.0 + norm(x))


def _h4_layout(deltas: Deltas) -> tuple[tuple[Multivector, ...], tuple[int, ...], bool]:
    """Values in lines-first order, their branches, and whether they were rotated."""
    values, branches = _values(deltas)
    rotated = False
    if isinstance(deltas, HalfLengthSet):
        kinds = deltas.kinds
        if kinds[0] == "e2":
            values = values[1:] + values[:1]
            branches = branches[1:] + branches[:1]
            kinds = kinds[1:] + kinds[:1]
            rotated = True
        if kinds != ("quaternion", "e2") * 3:
            raise ValueError(
                f"Half lengths must alternate quaternion and e2 values, got {kinds}"
            )
    for n in (1, 3, 5):
        if not _in_e2_plane(values[n]):
            raise ValueError(
                f"Half length {n + 1} must lie in R + R e2, got {values[n]}"
            )
    return values, branches, rotated


def dg_h4_residuals(deltas: Sequence[Multivector], eps: int) -> dict[str, float]:
    """Residuals of the four H^4 formulas at a given sign, without layout checks."""
    d = list(deltas)
    C = [cosh(x) for x in d]
    S = [sinh(x) for x in d]
    C1, C2, C3, C4, C5, C6 = C
    S1, S2, S3, S4, S5, S6 = S
    return {
        "dg1": _residual(
            product([S1, C2, S3]) + product([C1, C2, C3]),
            product([S4, C5, S6]) + product([C4, C5, C6]),
            eps,
        ),
        "dg2": _residual(
            product([S1, C2, C3]) + product([C1, C2, S3]),
            product([S4, S5, S6]) - product([C4, S5, C6]),
            eps,
        ),
        "dg3": _residual(
            product([S1, S2, S3]) - product([C1, S2, C3]),
            product([S4, C5, C6]) + product([C4, C5, S6]),
            eps,
        ),
        "dg4": _residual(
            product([S1, S2, C3]) - product([C1, S2, S3]),
            product([S4, S5, C6]) - product([C4, S5, S6]),
            eps,
        ),
    }


def dg_h4_entry_residuals(deltas: Sequence[Multivector], eps: int) -> dict[str, float]:
    """Residuals of the four matrix-entry identities behind the H^4 formulas.

    They compare the entries of A1 A2 A3 and eps (A4 A5 A6)^-1, with
    A_n = diag(exp d, exp(-d*)) on line sides and the symmetric cosh/sinh
    matrix on flag sides.
    """
    d = list(deltas)
    C = [cosh(x) for x in d]
    S = [sinh(x) for x in d]
    E = [exp(x) for x in d]
    Ep = [exp(-star(x)) for x in d]
    return {
        "entry11": _residual(
            product([E[0], C[1], E[2]]),
            product([S[3], E[4], S[5]]) + product([C[3], Ep[4], C[5]]),
            eps,
        ),
        "entry12": _residual(
            product([E[0], S[1], Ep[2]]),
            product([C[3], E[4], S[5]]) + product([S[3], Ep[4], C[5]]),
            -eps,
        ),
        "entry21": _residual(
            product([Ep[0], S[1], E[2]]),
            product([S[3], E[4], C[5]]) + product([C[3], Ep[4], S[5]]),
            -eps,
        ),
        "entry22": _residual(
            product([Ep[0], C[1], Ep[2]]),
            product([C[3], E[4], C[5]]) + product([S[3], Ep[4], S[5]]),
            eps,
        ),
    }


def _passed(
    decision: _Decision, entries: dict[str, float], closure: float | None, tol: float
) -> bool:
    values = list(decision.residuals.values()) + list(entries.values())
    if closure is not None:
        values.append(closure)
    return all(v <= tol for v in values)


def verify_dg_h4(
    deltas: Deltas,
    tolerance: float | None = None,
    closure_residual: float | None = None,
) -> VerificationReport:
    """Check the four H^4 formulas and their matrix-entry identities.

    Args:
        deltas: Half side-lengths, lines first (a flag-first
            :class:`HalfLengthSet` is rotated by one side).
        tolerance: Residual threshold; defaults to :func:`resolve_tolerance`.
        closure_residual: Closure residual of the same instance, if known.

    Returns:
        The report at the sign chosen by the first formula.

    Raises:
        ValueError: If the values do not alternate between quaternions and
            R + R e2.

    Example:
        >>> zero = Multivector.zero()
        >>> verify_dg_h4([zero] * 6).epsilon
        1
    """
    tol = resolve_tolerance(tolerance)
    values, branches, rotated = _h4_layout(deltas)
    decision = _choose_epsilon(lambda e: dg_h4_residuals(values, e), "dg1", tol)
    entries = dg_h4_entry_residuals(values, decision.epsilon)
    notes = ("flag-first layout rotated by one side",) if rotated else ()
    passed = _passed(decision, entries, closure_residual, tol)
    if not passed:
        logger.warning(
            f"H^4 formulas fail (eps={decision.epsilon}): {decision.residuals}"
        )
    return VerificationReport(
        "h4",
        decision.residuals,
        entries,
        decision.epsilon,
        branches,
        tol,
        passed,
        closure_residual,
        decision.degenerate,
        notes,
    )


def dg_h4_oplus_residuals(deltas: Sequence[Multivector], eps: int) -> dict[str, float]:
    """Residuals of the H^4 formulas written through (+) and (-) combinations."""
    d1, d2, d3, d4, d5, d6 = deltas

    def combos(
        x: Multivector, y: Multivector, z: Multivector
    ) -> dict[str, Multivector]:
        return {
            "mid": oplus_chain(x, -star(y), z),
            "all": oplus_chain(x, y, z),
            "neg": oplus_chain(x, -star(y), -star(z)),
            "end": oplus_chain(x, y, -star(z)),
        }

    a, b = combos(d1, d2, d3), combos(d4, d5, d6)
    return {
        "c1": _residual(
            cosh(a["mid"]) + cosh(a["all"]), cosh(b["mid"]) + cosh(b["all"]), eps
        ),
        "c2": _residual(
            sinh(a["mid"]) + sinh(a["all"]), sinh(b["neg"]) - sinh(b["end"]), eps
        ),
        "c3": _residual(
            sinh(a["neg"]) - sinh(a["end"]), sinh(b["mid"]) + sinh(b["all"]), eps
        ),
        "c4": _residual(
            cosh(a["end"]) - cosh(a["neg"]), cosh(b["end"]) - cosh(b["neg"]), eps
        ),
    }


def verify_dg_h4_oplus(
    deltas: Deltas,
    tolerance: float | None = None,
    closure_residual: float | None = None,
) -> VerificationReport:
    """Check the (+)/(-) forms of the H^4 formulas.

    cosh and sinh of Log g do not depend on the branch of the logarithm, so
    the outcome must agree with :func:`verify_dg_h4` on the same values.
    """
    tol = resolve_tolerance(tolerance)
    values, branches, rotated = _h4_layout(deltas)
    decision = _choose_epsilon(lambda e: dg_h4_oplus_residuals(values, e), "c1", tol)
    notes = ("flag-first layout rotated by one side",) if rotated else ()
    return VerificationReport(
        "h4-oplus",
        decision.residuals,
        {},
        decision.epsilon,
        branches,
        tol,
        _passed(decision, {}, closure_residual, tol),
        closure_residual,
        decision.degenerate,
        notes,
    )


def _as_complex(x: Multivector) -> complex:
    return complex(x["1"], x["e1"])


def _h3_values(deltas: Deltas) -> tuple[list[complex], tuple[int, ...]]:
    values, branches = _values(deltas)
    for n, x in enumerate(values):
        if not _in_e1_plane(x):
            raise ValueError(f"Half length {n + 1} must lie in R + R e1, got {x}")
    return [_as_complex(x) for x in values], branches


def dg_h3_residuals(deltas: Sequence[complex], eps: int) -> dict[str, float]:
    """Residuals of the four H^3 formulas at a given sign."""
    d1, d2, d3, d4, d5, d6 = deltas
    return {
        "rah1": _complex_residual(
            cmath.cosh(d1 + d3) * cmath.cosh(d2),
            cmath.cosh(d4 + d6) * cmath.cosh(d5),
            eps,
        ),
        "rah2": _complex_residual(
            -cmath.sinh(d1 + d3) * cmath.cosh(d2),
            cmath.cosh(d4 - d6) * cmath.sinh(d5),
            eps,
        ),
        "rah3": _complex_residual(
            -cmath.cosh(d1 - d3) * cmath.sinh(d2),
            cmath.sinh(d4 + d6) * cmath.cosh(d5),
            eps,
        ),
        "rah4": _complex_residual(
            cmath.sinh(d1 - d3) * cmath.sinh(d2),
            cmath.sinh(d4 - d6) * cmath.sinh(d5),
            eps,
        ),
    }


def derive_laws_h3(sigmas: Sequence[complex]) -> dict[str, float]:
    """Residuals of the laws of cosines and sines for complex side lengths.

    cosh s_n = cosh s_{n+2} cosh s_{n+4} + sinh s_{n+2} sinh s_{n+4} cosh s_{n+3}
    for every n, and sinh s1 / sinh s4 = sinh s3 / sinh s6 = sinh s5 / sinh s2.

    Returns:
        ``cosine1`` ... ``cosine6`` and the relative spread ``sine`` of the
        three ratios.
    """
    s = list(sigmas)
    if len(s) != 6:
        raise ValueError(f"Need 6 side lengths, got {len(s)}")
    laws = {}
    for n in range(6):
        a, b, c = s[(n + 2) % 6], s[(n + 4) % 6], s[(n + 3) % 6]
        lhs = cmath.cosh(s[n])
        rhs = cmath.cosh(a) * cmath.cosh(b) + (
            cmath.sinh(a) * cmath.sinh(b) * cmath.cosh(c)
        )
        laws[f"cosine{n + 1}"] = _complex_residual(lhs, rhs, 1)
    ratios = [cmath.sinh(s[i]) / cmath.sinh(s[j]) for i, j in ((0, 3), (2, 5), (4, 1))]
    spread = max(abs(x - y) for x in ratios for y in ratios)
    laws["sine"] = spread / (1.0 + max(abs(r) for r in ratios))
    return laws


def verify_dg_h3(
    deltas: Deltas,
    tolerance: float | None = None,
    closure_residual: float | None = None,
) -> VerificationReport:
    """Check the four H^3 formulas and the derived laws of cosines and sines.

    Args:
        deltas: Complex half side-lengths in R + R e1.
        tolerance: Residual threshold; defaults to :func:`resolve_tolerance`.
        closure_residual: Closure residual of the same instance, if known.

    Raises:
        ValueError: If a value leaves R + R e1.
    """
    tol = resolve_tolerance(tolerance)
    values, branches = _h3_values(deltas)
    decision = _choose_epsilon(lambda e: dg_h3_residuals(values, e), "rah1", tol)
    laws = derive_laws_h3([2.0 * d for d in values])
    passed = _passed(decision, laws, closure_residual, tol)
    if not passed:
        logger.warning(
            f"H^3 formulas fail (eps={decision.epsilon}): {decision.residuals}"
        )
    return VerificationReport(
        "h3",
        decision.residuals,
        laws,
        decision.epsilon,
        branches,
        tol,
        passed,
        closure_residual,
        decision.degenerate,
    )


def flip_side_h3(deltas: Sequence[Multivector], n: int) -> tuple[Multivector, ...]:
    """Half lengths after reversing the orientation of side n (0-based).

    The side's own value changes sign and its neighbours shift by a quarter
    turn: d_{n-1} - (pi/2) e1 and d_{n+1} + (pi/2) e1.
    """
    values = list(deltas)
    if len(values) != 6:
        raise ValueError(f"Need 6 half side-lengths, got {len(values)}")
    quarter = _E1 * (math.pi / 2.0)
    values[(n - 1) % 6] = values[(n - 1) % 6] - quarter
    values[n % 6] = -values[n % 6]
    values[(n + 1) % 6] = values[(n + 1) % 6] + quarter
    return tuple(values)
