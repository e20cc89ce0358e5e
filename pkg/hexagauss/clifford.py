"""Arithmetic of the Clifford algebras A_n.

A_n is the real algebra generated by e_1, ..., e_n with e_i^2 = -1 and
e_i e_j = -e_j e_i for i != j. Elements are stored densely: the coefficient of
the blade e_{i1}...e_{ik} (i1 < ... < ik) sits at the bitmask with bits
i1-1, ..., ik-1 set, so mask 0 is the scalar part, mask 1 is e1, mask 3 is e12.

The module also provides the three involutions, norms, inverses, the Clifford
group test, the rotation action rho and the textual form
``0.3 + 0.7*e1 - 0.2*e2 + 0.1*e12``.
"""

import logging
import re
from collections.abc import Iterable
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

import numpy as np
from numpy.typing import NDArray

from hexagauss.config import SETTINGS

logger = logging.getLogger(__name__)

MAX_DIMENSION = 5

Scalar = Union[int, float]

_NUMBER = r"(?:(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?|inf|nan)"
_BLADE = r"e[1-9]+"
_TERM_RE = re.compile(
    rf"(?P<sign>[+-]?)(?:(?P<coef>{_NUMBER})\*(?P<blade>{_BLADE})"
    rf"|(?P<scalar>{_NUMBER})|(?P<bare>{_BLADE}))"
)


class AlgebraError(ValueError):
    """Raised for invalid algebra operations (dimension mismatch, no inverse)."""


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _grade_of_mask(mask: int) -> int:
    return _popcount(mask)


@lru_cache(maxsize=None)
def _blade_sign(a: int, b: int) -> float:
    """Sign of e_A e_B relative to e_{A xor B}."""
    swaps = 0
    x = a >> 1
    while x:
        swaps += _popcount(x & b)
        x >>= 1
    # each shared generator squares to -1
    swaps += _popcount(a & b)
    return -1.0 if swaps % 2 else 1.0


@lru_cache(maxsize=None)
def _product_tables(n: int) -> tuple[NDArray[np.intp], NDArray[np.float64]]:
    size = 1 << n
    index = np.empty((size, size), dtype=np.intp)
    sign = np.empty((size, size), dtype=np.float64)
    for a in range(size):
        for b in range(size):
            index[a, b] = a ^ b
            sign[a, b] = _blade_sign(a, b)
    index.setflags(write=False)
    sign.setflags(write=False)
    return index, sign


@lru_cache(maxsize=None)
def _grade_signs(n: int) -> dict[str, NDArray[np.float64]]:
    grades = np.array([_grade_of_mask(m) for m in range(1 << n)])
    signs = {
        "prime": (-1.0) ** grades,
        "star": (-1.0) ** (grades * (grades - 1) // 2),
        "bar": (-1.0) ** (grades * (grades + 1) // 2),
        "grade": grades.astype(np.float64),
    }
    for arr in signs.values():
        arr.setflags(write=False)
    return signs


def blade_name(mask: int) -> str:
    """Return the blade name of a bitmask, e.g. ``3 -> "e12"`` and ``0 -> "1"``."""
    if mask == 0:
        return "1"
    digits = [str(i + 1) for i in range(MAX_DIMENSION) if mask >> i & 1]
    return "e" + "".join(digits)


def blade_mask(name: str) -> int:
    """Return the bitmask of a blade name such as ``"e12"``.

    Raises:
        AlgebraError: If the digits are not strictly ascending.
    """
    if name == "1":
        return 0
    if not re.fullmatch(_BLADE, name):
        raise AlgebraError(f"Invalid blade name: {name!r}")
    digits = [int(ch) for ch in name[1:]]
    if any(b <= a for a, b in zip(digits, digits[1:])):
        raise AlgebraError(f"Blade indices must be strictly ascending: {name!r}")
    if digits[-1] > MAX_DIMENSION:
        raise AlgebraError(f"Blade {name!r} exceeds dimension {MAX_DIMENSION}")
    mask = 0
    for d in digits:
        mask |= 1 << (d - 1)
    return mask


@dataclass(frozen=True, eq=False)
class Multivector:
    """Element of the Clifford algebra A_n.

    Attributes:
        n: Number of generators (0 <= n <= 5).
        coeffs: Read-only array of 2**n coefficients indexed by blade bitmask.

    Example:
        >>> e1 = Multivector.basis("e1")
        >>> str(e1 * e1)
        '-1.0'
    """

    n: int
    coeffs: NDArray[np.float64]

    # numpy scalars defer to the reflected operators below
    __array_ufunc__ = None

    def __post_init__(self) -> None:
        """Validate the dimension and freeze the coefficient array."""
        if not 0 <= self.n <= MAX_DIMENSION:
            raise AlgebraError(
                f"Dimension must be in [0, {MAX_DIMENSION}], got {self.n}"
            )
        arr = np.array(self.coeffs, dtype=np.float64)
        if arr.shape != (1 << self.n,):
            raise AlgebraError(
                f"A_{self.n} needs {1 << self.n} coefficients, got shape {arr.shape}"
            )
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)

    @classmethod
    def zero(cls, n: int = 2) -> "Multivector":
        """Return 0 in A_n."""
        return cls(n, np.zeros(1 << n))

    @classmethod
    def scalar(cls, value: float, n: int = 2) -> "Multivector":
        """Return the real number ``value`` in A_n."""
        coeffs = np.zeros(1 << n)
        coeffs[0] = value
        return cls(n, coeffs)

    @classmethod
    def basis(cls, blade: str | int, n: int = 2) -> "Multivector":
        """Return a basis blade given by name (``"e12"``) or bitmask."""
        mask = blade_mask(blade) if isinstance(blade, str) else blade
        if mask >= 1 << n:
            raise AlgebraError(f"Blade {blade_name(mask)} is not in A_{n}")
        coeffs = np.zeros(1 << n)
        coeffs[mask] = 1.0
        return cls(n, coeffs)

    @classmethod
    def from_blades(cls, terms: dict[str, float], n: int = 2) -> "Multivector":
        """Build a multivector from ``{"1": a0, "e1": a1, ...}``."""
        coeffs = np.zeros(1 << n)
        for name, value in terms.items():
            mask = blade_mask(name)
            if mask >= 1 << n:
                raise AlgebraError(f"Blade {name} is not in A_{n}")
            coeffs[mask] += value
        return cls(n, coeffs)

    def __getitem__(self, blade: str | int) -> float:
        """Return the coefficient of a blade given by name or mask."""
        mask = blade_mask(blade) if isinstance(blade, str) else blade
        return float(self.coeffs[mask]) if mask < 1 << self.n else 0.0

    def _coerce(self, other: object) -> "Multivector | None":
        if isinstance(other, Multivector):
            if other.n != self.n:
                raise AlgebraError(f"Dimension mismatch: A_{self.n} and A_{other.n}")
            return other
        if isinstance(other, (int, float, np.floating)):
            return Multivector.scalar(float(other), self.n)
        return None

    def __add__(self, other: "Multivector | Scalar") -> "Multivector":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return Multivector(self.n, self.coeffs + rhs.coeffs)

    __radd__ = __add__

    def __sub__(self, other: "Multivector | Scalar") -> "Multivector":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return Multivector(self.n, self.coeffs - rhs.coeffs)

    def __rsub__(self, other: Scalar) -> "Multivector":
        return (-self) + other

    def __neg__(self) -> "Multivector":
        return Multivector(self.n, -self.coeffs)

    def __mul__(self, other: "Multivector | Scalar") -> "Multivector":
        if isinstance(other, Multivector):
            return mul(self, other)
        if isinstance(other, (int, float, np.floating)):
            return Multivector(self.n, self.coeffs * float(other))
        return NotImplemented

    def __rmul__(self, other: Scalar) -> "Multivector":
        if isinstance(other, (int, float, np.floating)):
            return Multivector(self.n, self.coeffs * float(other))
        return NotImplemented

    def __truediv__(self, other: Scalar) -> "Multivector":
        if isinstance(other, (int, float, np.floating)):
            return Multivector(self.n, self.coeffs / float(other))
        return NotImplemented

    def __str__(self) -> str:
        return format_multivector(self)

    def __repr__(self) -> str:
        return f"Multivector({format_multivector(self)!r}, n={self.n})"

    def prime(self) -> "Multivector":
        """Return the main involution a'."""
        return prime(self)

    def star(self) -> "Multivector":
        """Return the reverse a*."""
        return star(self)

    def bar(self) -> "Multivector":
        """Return the Clifford conjugate (bar) of a."""
        return bar(self)

    def norm(self) -> float:
        """Return |a|."""
        return norm(self)

    def inverse(self) -> "Multivector":
        """Return a^-1 (see :func:`inverse`)."""
        return inverse(self)


def mul(a: Multivector, b: Multivector) -> Multivector:
    """Geometric product ab.

    Args:
        a: Left factor.
        b: Right factor, same dimension as ``a``.

    Returns:
        The product in A_n.

    Raises:
        AlgebraError: If the dimensions differ.

    Example:
        >>> e1, e2 = Multivector.basis("e1"), Multivector.basis("e2")
        >>> str(mul(e2, e1))
        '-1.0*e12'
    """
    if a.n != b.n:
        raise AlgebraError(f"Dimension mismatch: A_{a.n} and A_{b.n}")
    index, sign = _product_tables(a.n)
    weights = sign * np.outer(a.coeffs, b.coeffs)
    coeffs = np.bincount(index.ravel(), weights=weights.ravel(), minlength=1 << a.n)
    return Multivector(a.n, coeffs)


def product(factors: Iterable[Multivector]) -> Multivector:
    """Ordered product of a non-empty sequence of multivectors."""
    it = iter(factors)
    try:
        result = next(it)
    except StopIteration as e:
        raise AlgebraError("Product of an empty sequence") from e
    for f in it:
        result = mul(result, f)
    return result


def prime(a: Multivector) -> Multivector:
    """Main involution: negate the odd grades."""
    return Multivector(a.n, a.coeffs * _grade_signs(a.n)["prime"])


def star(a: Multivector) -> Multivector:
    """Reverse involution: grade p gets the sign (-1)^(p(p-1)/2)."""
    return Multivector(a.n, a.coeffs * _grade_signs(a.n)["star"])


def bar(a: Multivector) -> Multivector:
    """Clifford conjugation: grade p gets the sign (-1)^(p(p+1)/2)."""
    return Multivector(a.n, a.coeffs * _grade_signs(a.n)["bar"])


def involutions(a: Multivector) -> tuple[Multivector, Multivector, Multivector]:
    """Return ``(a', a*, bar a)``.

    Example:
        >>> p, s, b = involutions(Multivector.basis("e12"))
        >>> str(s)
        '-1.0*e12'
    """
    return prime(a), star(a), bar(a)


def grade(a: Multivector, p: int) -> Multivector:
    """Return the grade-p part a^(p)."""
    mask = _grade_signs(a.n)["grade"] == p
    return Multivector(a.n, np.where(mask, a.coeffs, 0.0))


def scalar_part(a: Multivector) -> float:
    """Return a_0."""
    return float(a.coeffs[0])


def norm(a: Multivector) -> float:
    """Euclidean norm of the coefficient vector."""
    return float(np.linalg.norm(a.coeffs))


def inner(a: Multivector, b: Multivector) -> float:
    """Euclidean inner product <a, b> of the coefficient vectors."""
    if a.n != b.n:
        raise AlgebraError(f"Dimension mismatch: A_{a.n} and A_{b.n}")
    return float(np.dot(a.coeffs, b.coeffs))


def allclose(a: Multivector, b: Multivector, atol: float = 1e-10) -> bool:
    """Return True if every coefficient of ``a - b`` is below ``atol``."""
    if a.n != b.n:
        return False
    return bool(np.max(np.abs(a.coeffs - b.coeffs)) <= atol)


def embed(a: Multivector, n: int) -> Multivector:
    """Embed a in A_n for n >= a.n (A_m is a subalgebra of A_n)."""
    if n < a.n:
        raise AlgebraError(f"Cannot embed A_{a.n} into A_{n}")
    coeffs = np.zeros(1 << n)
    coeffs[: 1 << a.n] = a.coeffs
    return Multivector(n, coeffs)


def restrict(a: Multivector, n: int, atol: float = 1e-9) -> Multivector:
    """Inverse of :func:`embed`; the dropped coefficients must vanish."""
    dropped = a.coeffs[1 << n :]
    if dropped.size and np.max(np.abs(dropped)) > atol * max(1.0, norm(a)):
        raise AlgebraError(f"{a} does not lie in A_{n}")
    return Multivector(n, a.coeffs[: 1 << n])


def paravector(*coords: float, n: int = 2) -> Multivector:
    """Build x_0 + x_1 e_1 + ... + x_k e_k in A_n.

    Example:
        >>> str(paravector(1.0, 2.0))
        '1.0 + 2.0*e1'
    """
    if len(coords) > n + 1:
        raise AlgebraError(f"A_{n} para-vectors have at most {n + 1} coordinates")
    out = np.zeros(1 << n)
    for i, x in enumerate(coords):
        out[0 if i == 0 else 1 << (i - 1)] = x
    return Multivector(n, out)


def paravector_coords(x: Multivector) -> NDArray[np.float64]:
    """Return ``[x_0, x_1, ..., x_n]`` (grades >= 2 are ignored)."""
    return np.array([x.coeffs[0]] + [x.coeffs[1 << i] for i in range(x.n)])


def paravector_part(x: Multivector) -> Multivector:
    """Project onto grades 0 and 1."""
    low = _grade_signs(x.n)["grade"] <= 1
    return Multivector(x.n, np.where(low, x.coeffs, 0.0))


def is_paravector(x: Multivector, atol: float | None = None) -> bool:
    """Return True if the grade >= 2 parts vanish, relative to |x|."""
    tol = SETTINGS.atol if atol is None else atol
    high = x.coeffs[_grade_signs(x.n)["grade"] >= 2]
    if high.size == 0:
        return True
    return bool(np.max(np.abs(high)) <= tol * max(1.0, norm(x)))


def left_matrix(a: Multivector) -> NDArray[np.float64]:
    """Matrix of x -> a x on the coefficient space."""
    index, sign = _product_tables(a.n)
    size = 1 << a.n
    mat = np.zeros((size, size))
    for i in range(size):
        np.add.at(mat, (index[i], np.arange(size)), sign[i] * a.coeffs[i])
    return mat


def _inverse_residual(a: Multivector, cand: Multivector) -> float:
    one = Multivector.scalar(1.0, a.n)
    return max(norm(mul(a, cand) - one), norm(mul(cand, a) - one))


def inverse(a: Multivector) -> Multivector:
    """Two-sided inverse a^-1.

    The conjugate formula bar(a)/|a|^2 is exact on A_2 and on products of
    para-vectors; other elements of A_3 and higher fall back to a linear solve
    of a x = 1. Outside A_2 the result is checked on both sides.

    Args:
        a: Element to invert.

    Returns:
        The inverse, satisfying a a^-1 = a^-1 a = 1 within tolerance.

    Raises:
        AlgebraError: If a is zero or not invertible.

    Example:
        >>> str(inverse(2.0 * Multivector.basis("e1")))
        '-0.5*e1'
    """
    norm_sq = float(np.dot(a.coeffs, a.coeffs))
    if norm_sq <= SETTINGS.atol**2:
        raise AlgebraError("Cannot invert zero")
    limit = SETTINGS.invert_residual * (1.0 + norm_sq)

    cand = bar(a) / norm_sq
    if a.n <= 2 or _inverse_residual(a, cand) < limit:
        return cand

    one = np.zeros(1 << a.n)
    one[0] = 1.0
    try:
        solution = np.linalg.solve(left_matrix(a), one)
    except np.linalg.LinAlgError as e:
        raise AlgebraError(f"{a} is not invertible in A_{a.n}") from e
    cand = Multivector(a.n, solution)
    residual = _inverse_residual(a, cand)
    if not np.isfinite(residual) or residual >= limit:
        raise AlgebraError(
            f"{a} is not invertible in A_{a.n} (residual {residual:.3e})"
        )
    logger.debug(f"Inverted {a} through linear solve")
    return cand


def is_clifford_group(a: Multivector) -> bool:
    """Return True if a lies in the Clifford group Gamma_n.

    a is accepted when it is invertible and a x (a')^-1 is a para-vector for
    x in {1, e_1, ..., e_n}.
    """
    try:
        twisted = inverse(prime(a))
        inverse(a)
    except AlgebraError:
        return False
    scale = norm(a) * norm(twisted)
    for i in range(a.n + 1):
        x = Multivector.basis(0 if i == 0 else 1 << (i - 1), a.n)
        y = mul(mul(a, x), twisted)
        high = y.coeffs[_grade_signs(a.n)["grade"] >= 2]
        limit = SETTINGS.invert_residual * max(1.0, scale)
        if high.size and np.max(np.abs(high)) > limit:
            return False
    return True


def rho(a: Multivector, x: Multivector) -> Multivector:
    """Rotation action rho_a(x) = a x (a')^-1 on para-vectors.

    Args:
        a: Element of the Clifford group.
        x: Para-vector.

    Returns:
        The rotated para-vector (grades >= 2 projected away).

    Raises:
        AlgebraError: If a is not in the Clifford group.
    """
    if not is_clifford_group(a):
        raise AlgebraError(f"{a} is not in the Clifford group")
    return paravector_part(mul(mul(a, x), inverse(prime(a))))


def format_multivector(a: Multivector) -> str:
    """Render a in the textual form ``0.3 + 0.7*e1 - 0.2*e2``.

    Zero terms are skipped; the zero element prints as ``0.0``.
    """
    parts: list[str] = []
    for mask, value in enumerate(a.coeffs):
        if value == 0.0:
            continue
        negative = bool(np.signbit(value)) and not np.isnan(value)
        body = repr(abs(float(value))) if negative else repr(float(value))
        if mask:
            body = f"{body}*{blade_name(mask)}"
        if not parts:
            parts.append(f"-{body}" if negative else body)
        else:
            parts.append(f" - {body}" if negative else f" + {body}")
    return "".join(parts) if parts else "0.0"


def parse_multivector(text: str, n: int | None = None) -> Multivector:
    """Parse the textual form produced by :func:`format_multivector`.

    Args:
        text: Expression such as ``"1 - 2.5*e12 + e3"``.
        n: Target dimension; defaults to max(2, highest generator used).

    Returns:
        The parsed multivector.

    Raises:
        AlgebraError: If the text is malformed.

    Example:
        >>> parse_multivector("0.5 - e12")["e12"]
        -1.0
    """
    compact = re.sub(r"\s+", "", text)
    if not compact:
        raise AlgebraError("Empty multivector expression")

    terms: list[tuple[int, float]] = []
    pos = 0
    while pos < len(compact):
        m = _TERM_RE.match(compact, pos)
        if not m or m.end() == pos:
            raise AlgebraError(f"Cannot parse {text!r} at offset {pos}")
        if pos > 0 and not m.group("sign"):
            raise AlgebraError(f"Missing operator in {text!r} at offset {pos}")
        sign = -1.0 if m.group("sign") == "-" else 1.0
        if m.group("blade"):
            mask, value = blade_mask(m.group("blade")), float(m.group("coef"))
        elif m.group("scalar"):
            mask, value = 0, float(m.group("scalar"))
        else:
            mask, value = blade_mask(m.group("bare")), 1.0
        terms.append((mask, sign * value))
        pos = m.end()

    highest = max((mask.bit_length() for mask, _ in terms), default=0)
    dim = max(2, highest) if n is None else n
    if highest > dim:
        raise AlgebraError(f"{text!r} uses generators beyond A_{dim}")
    coeffs = np.zeros(1 << dim)
    for mask, value in terms:
        coeffs[mask] += value
    return Multivector(dim, coeffs)
