"""Half side-lengths, side isometries and closure of hexagons.

Half side-lengths are always measured on the geometry itself: a line side of
an augmented hexagon gets the quaternion half distance between its two
neighbouring flags, a flag side the e2-complex half distance between its
neighbouring lines, and a side of an H^3 hexagon the complex half length
between its neighbours.
"""

import logging
from dataclasses import dataclass
from typing import Literal

from hexagauss.clifford import Multivector
from hexagauss.hexagon.generators import Hexagon, HexagonH3
from hexagauss.hypgeo.crosses import (
    isometry_between_crosses,
    normalize_cross,
    normalize_line_pair,
)
from hexagauss.hypgeo.half_distance import (
    HalfLength,
    HalfLengthKind,
    complex_half_length,
    e2_half_distance,
    quaternion_half_distance,
)
from hexagauss.hypgeo.objects import FlagLineCross, OrientedFlag, OrientedLine, Side
from hexagauss.transcend import exp
from hexagauss.vahlen import VahlenMatrix, compose, diagonal, identity, normal_form_pm1

logger = logging.getLogger(__name__)

BranchChoice = Literal["principal"] | int


@dataclass(frozen=True)
class HalfLengthSet:
    """Chosen half side-lengths of a hexagon.

    Attributes:
        values: delta_1, ..., delta_6.
        kinds: Kind of each value (quaternion, e2 or complex).
        branches: 0 for the principal value, 1 for its partner, per side.
        pairs: Both values of every side.
    """

    values: tuple[Multivector, ...]
    kinds: tuple[HalfLengthKind, ...]
    branches: tuple[int, ...]
    pairs: tuple[HalfLength, ...]

    @property
    def mask(self) -> int:
        """Branch choice as a 6-bit mask, bit n for side n."""
        return sum(b << n for n, b in enumerate(self.branches))

    def with_branches(self, mask: int) -> "HalfLengthSet":
        """Same sides with another branch assignment."""
        branches = _branches(mask)
        values = tuple(p.value(b) for p, b in zip(self.pairs, branches))
        return HalfLengthSet(values, self.kinds, branches, self.pairs)


def _branches(choice: BranchChoice) -> tuple[int, ...]:
    if choice == "principal":
        return (0,) * 6
    if not isinstance(choice, int) or not 0 <= choice < 64:
        raise ValueError(
            f"Branch choice must be 'principal' or a mask in [0, 64), got {choice!r}"
        )
    return tuple((choice >> n) & 1 for n in range(6))


def _cross(a: Side, b: Side) -> FlagLineCross:
    if isinstance(a, OrientedFlag) and isinstance(b, OrientedLine):
        return FlagLineCross(a, b)
    if isinstance(a, OrientedLine) and isinstance(b, OrientedFlag):
        return FlagLineCross(b, a)
    raise ValueError("A cross needs one flag and one line")


def _side_pair(hexagon: Hexagon, n: int, strict: bool) -> HalfLength:
    prev, side, nxt = hexagon.sides[n - 1], hexagon.sides[n], hexagon.sides[(n + 1) % 6]
    if isinstance(hexagon, HexagonH3):
        assert isinstance(prev, OrientedLine) and isinstance(side, OrientedLine)
        assert isinstance(nxt, OrientedLine)
        return complex_half_length(prev, side, nxt, strict)
    if isinstance(side, OrientedLine):
        assert isinstance(prev, OrientedFlag) and isinstance(nxt, OrientedFlag)
        return quaternion_half_distance(prev, side, nxt, strict)
    assert isinstance(prev, OrientedLine) and isinstance(nxt, OrientedLine)
    return e2_half_distance(prev, side, nxt, strict)


def side_half_lengths(
    hexagon: Hexagon, branch_choice: BranchChoice = "principal", strict: bool = True
) -> HalfLengthSet:
    """Half side-lengths of all six sides.

    Args:
        hexagon: H^3 hexagon or augmented H^4 hexagon.
        branch_choice: ``"principal"`` or a 6-bit mask selecting the partner
            value on the sides whose bit is set.
        strict: Reject configurations that are not orthogonal.

    Returns:
        The chosen values together with both values of every side.

    Raises:
        GeometryError: If a side configuration is degenerate.
    """
    branches = _branches(branch_choice)
    pairs = tuple(_side_pair(hexagon, n, strict) for n in range(6))
    values = tuple(p.value(b) for p, b in zip(pairs, branches))
    kinds = tuple(p.kind for p in pairs)
    return HalfLengthSet(values, kinds, branches, pairs)


def tau_matrices(hexagon: Hexagon, strict: bool = True) -> list[VahlenMatrix]:
    """Isometries tau_n fixing side n and carrying side n - 1 to side n + 1."""
    taus = []
    for n in range(6):
        prev, side = hexagon.sides[n - 1], hexagon.sides[n]
        nxt = hexagon.sides[(n + 1) % 6]
        if isinstance(hexagon, HexagonH3):
            assert isinstance(prev, OrientedLine) and isinstance(side, OrientedLine)
            assert isinstance(nxt, OrientedLine)
            taus.append(
                normalize_line_pair(side, nxt, strict).inverse()
                @ normalize_line_pair(side, prev, strict)
            )
        else:
            taus.append(
                isometry_between_crosses(_cross(prev, side), _cross(nxt, side), strict)
            )
    return taus


@dataclass(frozen=True)
class ClosureResult:
    """Closure of the side isometries.

    Attributes:
        residual: Distance of tau_6 ... tau_1 to the nearest of +-I.
        sign: +1 or -1, whichever of +-I is nearer.
    """

    residual: float
    sign: int


def closure_check(hexagon: Hexagon, strict: bool = True) -> ClosureResult:
    """Check that tau_6 ... tau_1 = +-I."""
    taus = tau_matrices(hexagon, strict)
    product = compose(list(reversed(taus)))
    plus = product.distance(identity(), up_to_sign=False)
    minus = product.distance(-identity(), up_to_sign=False)
    sign = 1 if plus <= minus else -1
    return ClosureResult(min(plus, minus), sign)


def _base_normalization(hexagon: Hexagon, strict: bool) -> VahlenMatrix:
    if isinstance(hexagon, HexagonH3):
        last, first = hexagon.lines[5], hexagon.lines[0]
        return normalize_line_pair(first, last, strict)
    return normalize_cross(_cross(hexagon.sides[5], hexagon.sides[0]), strict)


def normal_form(
    value: Multivector, kind: HalfLengthKind, position: int
) -> VahlenMatrix:
    """The normal form A_n of side n (0-based ``position``) for a half length.

    Line sides of an augmented hexagon give diag(exp d, exp(-d*)), flag sides
    the symmetric [[cosh d, sinh d], [sinh d, cosh d]]. In H^3 the two forms
    alternate, starting with the diagonal one.
    """
    if kind == "quaternion" or (kind == "complex" and position % 2 == 0):
        return diagonal(exp(value))
    return normal_form_pm1(value)


def conjugated_etas(hexagon: Hexagon, strict: bool = True) -> list[VahlenMatrix]:
    """eta_n = G (tau_{n-1} ... tau_1)^-1 tau_n (tau_{n-1} ... tau_1) G^-1.

    G normalizes sides 6 and 1. The product eta_1 ... eta_6 is +-I.
    """
    taus = tau_matrices(hexagon, strict)
    G = _base_normalization(hexagon, strict)
    etas = []
    prefix = identity()
    for tau in taus:
        frame = G @ prefix.inverse()
        etas.append(frame @ tau @ frame.inverse())
        prefix = tau @ prefix
    return etas


def eta_residuals(
    hexagon: Hexagon, lengths: HalfLengthSet, strict: bool = True
) -> list[float]:
    """Distance of every eta_n to +-A_n built from the half lengths."""
    etas = conjugated_etas(hexagon, strict)
    residuals = []
    for n, (eta, value, kind) in enumerate(zip(etas, lengths.values, lengths.kinds)):
        target = normal_form(value, kind, n)
        residuals.append(eta.distance(target) / max(1.0, target.scale()))
    logger.debug(f"eta residuals: {[f'{r:.2e}' for r in residuals]}")
    return residuals
