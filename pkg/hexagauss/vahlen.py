"""Vahlen matrices over A_2 and their Möbius action.

A Vahlen matrix [[a, b], [c, d]] with entries in A_2 satisfies ad* - bc* = 1
with ab* and cd* para-vectors. It acts on the compactified para-vector space
by x -> (ax + b)(cx + d)^-1 and, through the same formula in A_3, on the upper
half-space model of H^4. A and -A induce the same map.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import TYPE_CHECKING, Any, Union

import numpy as np

from hexagauss.clifford import (
    AlgebraError,
    Multivector,
    embed,
    format_multivector,
    inverse,
    mul,
    norm,
    paravector,
    paravector_part,
    parse_multivector,
    star,
)
from hexagauss.config import SETTINGS
from hexagauss.transcend import cosh_sinh

if TYPE_CHECKING:
    from hexagauss.hypgeo.objects import InteriorPoint

logger = logging.getLogger(__name__)


class Infinity:
    """The point at infinity of the compactified para-vector space."""

    _instance: "Infinity | None" = None

    def __new__(cls) -> "Infinity":
        """Return the shared instance."""
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "inf"


INF = Infinity()

BoundaryPoint = Union[Multivector, Infinity]


def is_infinite(x: BoundaryPoint) -> bool:
    """Return True if x is the point at infinity."""
    return isinstance(x, Infinity)


@dataclass(frozen=True, eq=False)
class VahlenMatrix:
    """2x2 matrix [[a, b], [c, d]] over A_2.

    Example:
        >>> A = identity()
        >>> is_vahlen(A @ A)
        True
    """

    a: Multivector
    b: Multivector
    c: Multivector
    d: Multivector

    def entries(self) -> tuple[Multivector, Multivector, Multivector, Multivector]:
        """Return (a, b, c, d)."""
        return self.a, self.b, self.c, self.d

    def __matmul__(self, other: "VahlenMatrix") -> "VahlenMatrix":
        a, b, c, d = self.entries()
        p, q, r, s = other.entries()
        return VahlenMatrix(
            mul(a, p) + mul(b, r),
            mul(a, q) + mul(b, s),
            mul(c, p) + mul(d, r),
            mul(c, q) + mul(d, s),
        )

    def __neg__(self) -> "VahlenMatrix":
        return VahlenMatrix(-self.a, -self.b, -self.c, -self.d)

    def inverse(self) -> "VahlenMatrix":
        """Return (d*, -b*; -c*, a*)."""
        return VahlenMatrix(star(self.d), -star(self.b), -star(self.c), star(self.a))

    def pseudo_determinant(self) -> Multivector:
        """Return ad* - bc*."""
        return mul(self.a, star(self.d)) - mul(self.b, star(self.c))

    def coefficients(self) -> np.ndarray:
        """Return the 4 x 2^n array of entry coefficients."""
        return np.stack([m.coeffs for m in self.entries()])

    @cached_property
    def diagnostics(self) -> "VahlenDiagnostics":
        """Vahlen residuals at the default tolerance, computed once per matrix."""
        return vahlen_diagnostics(self)

    def scale(self) -> float:
        """Largest entry coefficient in absolute value."""
        return float(np.max(np.abs(self.coefficients())))

    def canonical(self) -> "VahlenMatrix":
        """Fix the sign so the first significant coefficient is positive."""
        flat = self.coefficients().ravel()
        threshold = SETTINGS.invert_residual * max(1.0, float(np.max(np.abs(flat))))
        for value in flat:
            if abs(value) > threshold:
                return self if value > 0 else -self
        return self

    def distance(self, other: "VahlenMatrix", up_to_sign: bool = True) -> float:
        """Max entry difference, minimized over the sign of ``other``."""
        diff = float(np.max(np.abs(self.coefficients() - other.coefficients())))
        if not up_to_sign:
            return diff
        summ = float(np.max(np.abs(self.coefficients() + other.coefficients())))
        return min(diff, summ)

    def allclose(
        self, other: "VahlenMatrix", atol: float = 1e-10, up_to_sign: bool = True
    ) -> bool:
        """Entrywise comparison, by default up to the sign of the matrix."""
        return self.distance(other, up_to_sign) <= atol

    def to_dict(self) -> dict[str, str]:
        """JSON object {a, b, c, d} of textual multivectors."""
        return {k: format_multivector(m) for k, m in zip("abcd", self.entries())}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "VahlenMatrix":
        """Inverse of :meth:`to_dict`."""
        try:
            return cls(*(parse_multivector(str(data[k]), n=2) for k in "abcd"))
        except KeyError as e:
            raise ValueError(f"Vahlen matrix is missing entry {e}") from e

    def __str__(self) -> str:
        a, b, c, d = (format_multivector(m) for m in self.entries())
        return f"[ {a} , {b} ]\n[ {c} , {d} ]"


def identity(n: int = 2) -> VahlenMatrix:
    """Return I."""
    one, zero = Multivector.scalar(1.0, n), Multivector.zero(n)
    return VahlenMatrix(one, zero, zero, one)


def diagonal(a: Multivector) -> VahlenMatrix:
    """Return diag(a, (a*)^-1), acting as x -> a x a*."""
    zero = Multivector.zero(a.n)
    return VahlenMatrix(a, zero, zero, inverse(star(a)))


def translation(b: Multivector) -> VahlenMatrix:
    """Return [[1, b], [0, 1]], acting as x -> x + b."""
    one, zero = Multivector.scalar(1.0, b.n), Multivector.zero(b.n)
    return VahlenMatrix(one, b, zero, one)


def inversion(n: int = 2) -> VahlenMatrix:
    """Return J = [[0, -1], [1, 0]], acting as x -> -x^-1."""
    one, zero = Multivector.scalar(1.0, n), Multivector.zero(n)
    return VahlenMatrix(zero, -one, one, zero)


def k_matrix() -> VahlenMatrix:
    """Return K = (1/2)[[e, e], [e, -e]] with e = e1 + e2.

    K carries the standard cross built on the vertical line to the one built
    on the unit semicircle; K^2 = -I.
    """
    half_e = paravector(0.0, 0.5, 0.5)
    return VahlenMatrix(half_e, half_e, half_e, -half_e)


def stabilizer_e3(a: Multivector, b: Multivector) -> VahlenMatrix:
    """Return [[a, b], [-b', a']], which fixes e3 when |a|^2 + |b|^2 = 1."""
    return VahlenMatrix(a, b, -b.prime(), a.prime())


def normal_form_pm1(x: Multivector) -> VahlenMatrix:
    """Return [[cosh x, sinh x], [sinh x, cosh x]], which fixes -1 and 1."""
    ch, sh = cosh_sinh(x)
    return VahlenMatrix(ch, sh, sh, ch)


def random_vahlen(rng: np.random.Generator) -> VahlenMatrix:
    """Random element T(b1) diag(a) J T(b2) of SL(2, Gamma_2)."""
    b1 = paravector(*rng.normal(size=3))
    b2 = paravector(*rng.normal(size=3))
    a = Multivector(2, rng.normal(size=4))
    return translation(b1) @ diagonal(a) @ inversion() @ translation(b2)


@dataclass(frozen=True)
class VahlenDiagnostics:
    """Per-condition residuals of the Vahlen test.

    Attributes:
        determinant: max |ad* - bc* - 1|.
        ab_star: Size of the non-para-vector part of ab*.
        cd_star: Size of the non-para-vector part of cd*.
        valid: All residuals below the tolerance.
    """

    determinant: float
    ab_star: float
    cd_star: float
    valid: bool


def _non_paravector_size(x: Multivector) -> float:
    return norm(x - paravector_part(x))


def vahlen_diagnostics(A: VahlenMatrix, atol: float = 1e-9) -> VahlenDiagnostics:
    """Check ad* - bc* = 1 and that ab*, cd* are para-vectors."""
    one = Multivector.scalar(1.0, A.a.n)
    det = norm(A.pseudo_determinant() - one)
    ab = _non_paravector_size(mul(A.a, star(A.b)))
    cd = _non_paravector_size(mul(A.c, star(A.d)))
    scale = max(1.0, A.scale() ** 2)
    valid = det <= atol * scale and ab <= atol * scale and cd <= atol * scale
    return VahlenDiagnostics(det, ab, cd, valid)


def is_vahlen(A: VahlenMatrix, atol: float = 1e-9) -> bool:
    """Return True if A satisfies the Vahlen conditions.

    Example:
        >>> is_vahlen(k_matrix())
        True
    """
    return vahlen_diagnostics(A, atol).valid


def _is_zero_denominator(den: Multivector, reference: float) -> bool:
    return norm(den) <= SETTINGS.infinity_threshold * reference


def require_vahlen(A: VahlenMatrix) -> None:
    """Raise :class:`AlgebraError` unless A satisfies the Vahlen conditions."""
    diag = A.diagnostics
    if not diag.valid:
        raise AlgebraError(
            f"Not a Vahlen matrix: |ad* - bc* - 1| = {diag.determinant:.3e}, "
            f"ab* off by {diag.ab_star:.3e}, cd* off by {diag.cd_star:.3e}"
        )


def mobius_apply(A: VahlenMatrix, x: BoundaryPoint) -> BoundaryPoint:
    """Möbius action T_A(x) = (ax + b)(cx + d)^-1 with T_A(inf) = a c^-1.

    Args:
        A: Vahlen matrix.
        x: Para-vector in A_2 or ``INF``.

    Returns:
        The image point (``INF`` when cx + d vanishes).

    Raises:
        AlgebraError: If A is not a Vahlen matrix.

    Example:
        >>> mobius_apply(inversion(), Multivector.basis("e1"))["e1"]
        1.0
    """
    require_vahlen(A)
    if isinstance(x, Infinity):
        if norm(A.c) <= SETTINGS.infinity_threshold * norm(A.a):
            return INF
        return paravector_part(mul(A.a, inverse(A.c)))
    den = mul(A.c, x) + A.d
    if _is_zero_denominator(den, norm(A.c) * norm(x) + norm(A.d)):
        return INF
    return paravector_part(mul(mul(A.a, x) + A.b, inverse(den)))


def poincare_extend(A: VahlenMatrix, x: "InteriorPoint") -> "InteriorPoint":
    """Action of A on H^4, evaluated as (ax + b)(cx + d)^-1 in A_3.

    Args:
        A: Vahlen matrix over A_2.
        x: Interior point x0 + x1 e1 + x2 e2 + x3 e3 with x3 > 0.

    Returns:
        The image point, again with positive e3 part.
    """
    from hexagauss.hypgeo.objects import InteriorPoint

    a, b, c, d = (embed(m, 3) for m in A.entries())
    xv = x.to_multivector()
    den = mul(c, xv) + d
    image = paravector_part(mul(mul(a, xv) + b, inverse(den)))
    return InteriorPoint.from_multivector(image)


def decompose_elementary(A: VahlenMatrix) -> list[VahlenMatrix]:
    """Factor A into translations, diagonal matrices and J.

    For c = 0 the factors are diag(a, (a*)^-1), T(a^-1 b); otherwise
    T(a c^-1), diag((c*)^-1, c), J, T(c^-1 d).
    """
    reference = max(1.0, A.scale())
    if norm(A.c) <= SETTINGS.infinity_threshold * reference:
        return [diagonal(A.a), translation(mul(inverse(A.a), A.b))]
    c_inv = inverse(A.c)
    return [
        translation(mul(A.a, c_inv)),
        diagonal(inverse(star(A.c))),
        inversion(),
        translation(mul(c_inv, A.d)),
    ]


def compose(factors: list[VahlenMatrix]) -> VahlenMatrix:
    """Ordered product of matrices."""
    if not factors:
        raise AlgebraError("Empty product of Vahlen matrices")
    result = factors[0]
    for f in factors[1:]:
        result = result @ f
    return result


def boundary_points_close(
    x: BoundaryPoint, y: BoundaryPoint, atol: float = 1e-9
) -> bool:
    """Compare boundary points with a tolerance relative to their size."""
    if isinstance(x, Infinity) or isinstance(y, Infinity):
        return is_infinite(x) and is_infinite(y)
    return norm(x - y) <= atol * (1.0 + norm(x) + norm(y))


def _fixing_probes() -> dict[str, BoundaryPoint]:
    one = Multivector.scalar(1.0)
    e1, e2 = Multivector.basis("e1"), Multivector.basis("e2")
    return {
        "0": Multivector.zero(),
        "inf": INF,
        "1": one,
        "-1": -one,
        "e1": e1,
        "-e1": -e1,
        "e2": e2,
        "-e2": -e2,
    }


def classify_fixing(A: VahlenMatrix, atol: float = 1e-9) -> frozenset[str]:
    """Report which of 0, inf, +-1, +-e1, +-e2 and e3 the map fixes."""
    from hexagauss.hypgeo.objects import InteriorPoint

    fixed = {
        tag
        for tag, point in _fixing_probes().items()
        if boundary_points_close(mobius_apply(A, point), point, atol)
    }
    e3 = InteriorPoint(np.array([0.0, 0.0, 0.0, 1.0]))
    image = poincare_extend(A, e3)
    if float(np.max(np.abs(image.coords - e3.coords))) <= atol:
        fixed.add("e3")
    logger.debug(f"Fixed points: {sorted(fixed)}")
    return frozenset(fixed)

