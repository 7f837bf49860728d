"""Exact arithmetic in Q and in quadratic fields Q(sqrt(d)).

Elements are either Fraction (rational) or QuadraticElement a + b*sqrt(d)
with b != 0; arithmetic demotes to Fraction whenever the sqrt part cancels,
so `x == 0` and dict keys behave as expected.  d must be squarefree and
different from 0 and 1; d < 0 gives an imaginary quadratic field.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .arith import format_rational, is_squarefree, parse_rational, rational_sqrt_parts
from .errors import DomainError, FieldMismatchError
from .interval import CertifiedInterval
from .enclosures import enclose_root, enclose_sqrt


def _validate_d(d: int) -> None:
    if d in (0, 1):
        raise DomainError(f"d = {d} does not define a quadratic field")
    if not is_squarefree(d):
        raise DomainError(f"d = {d} is not squarefree")


@dataclass(frozen=True)
class QuadraticElement:
    """a + b*sqrt(d) with rational a, b and b != 0."""

    a: Fraction
    b: Fraction
    d: int

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if self.b == 0:
            raise DomainError("rational value; use Fraction instead of QuadraticElement")
        _validate_d(self.d)

    # -- field operations -----------------------------------------------------

    def _check(self, other) -> tuple[Fraction, Fraction]:
        if isinstance(other, QuadraticElement):
            if other.d != self.d:
                raise FieldMismatchError(f"cannot mix sqrt({self.d}) and sqrt({other.d})")
            return other.a, other.b
        if isinstance(other, (int, Fraction)):
            return Fraction(other), Fraction(0)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other):
        parts = self._check(other)
        if parts is NotImplemented:
            return NotImplemented
        oa, ob = parts
        return make_element(self.a + oa, self.b + ob, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticElement(-self.a, -self.b, self.d)

    def __sub__(self, other):
        parts = self._check(other)
        if parts is NotImplemented:
            return NotImplemented
        oa, ob = parts
        return make_element(self.a - oa, self.b - ob, self.d)

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        parts = self._check(other)
        if parts is NotImplemented:
            return NotImplemented
        oa, ob = parts
        return make_element(self.a * oa + self.b * ob * self.d,
                            self.a * ob + self.b * oa, self.d)

    __rmul__ = __mul__

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise DomainError("element with zero norm is not invertible")
        return make_element(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        parts = self._check(other)
        if parts is NotImplemented:
            return NotImplemented
        oa, ob = parts
        if ob == 0:
            if oa == 0:
                raise ZeroDivisionError("division by zero")
            return make_element(self.a / oa, self.b / oa, self.d)
        return self * QuadraticElement(oa, ob, self.d).inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result: FieldElement = Fraction(1)
        base: FieldElement = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "QuadraticElement":
        return QuadraticElement(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        """Field norm a^2 - d*b^2 (rational)."""
        return self.a * self.a - self.d * self.b * self.b

    def trace(self) -> Fraction:
        return 2 * self.a

    def __eq__(self, other) -> bool:
        if isinstance(other, QuadraticElement):
            return self.d == other.d and self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return False  # b != 0 invariant
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.d))

    def __repr__(self) -> str:
        return f"({self.a} + {self.b}*sqrt({self.d}))"


FieldElement = Union[Fraction, QuadraticElement]


def make_element(a, b, d: int) -> FieldElement:
    """a + b*sqrt(d), demoted to Fraction when b = 0."""
    b = Fraction(b)
    if b == 0:
        return Fraction(a)
    return QuadraticElement(Fraction(a), b, d)


def as_fraction(x: FieldElement) -> Fraction:
    if isinstance(x, QuadraticElement):
        raise DomainError(f"{x!r} is not rational")
    return Fraction(x)


def conj(x: FieldElement) -> FieldElement:
    return x.conjugate() if isinstance(x, QuadraticElement) else Fraction(x)


def norm_in(x: FieldElement, field: "NumberField") -> Fraction:
    """Field norm of x viewed as an element of `field`."""
    if isinstance(x, QuadraticElement):
        if field.d != x.d:
            raise FieldMismatchError("element does not live in the given field")
        return x.norm()
    q = Fraction(x)
    return q * q if field.is_quadratic else q


def element_d(x: FieldElement) -> int | None:
    return x.d if isinstance(x, QuadraticElement) else None


# ---------------------------------------------------------------------------
# number-field descriptor
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NumberField:
    """Q (d = None) or the quadratic field Q(sqrt(d))."""

    d: int | None = None

    def __post_init__(self):
        if self.d is not None:
            _validate_d(self.d)

    @classmethod
    def rationals(cls) -> "NumberField":
        return cls(None)

    @classmethod
    def quadratic(cls, d: int) -> "NumberField":
        return cls(d)

    @property
    def is_quadratic(self) -> bool:
        return self.d is not None

    @property
    def degree(self) -> int:
        return 2 if self.is_quadratic else 1

    @property
    def is_imaginary(self) -> bool:
        return self.d is not None and self.d < 0

    def contains(self, x: FieldElement) -> bool:
        dx = element_d(x)
        return dx is None or dx == self.d

    def coerce(self, x: FieldElement) -> FieldElement:
        if not self.contains(x):
            raise FieldMismatchError(f"{x!r} does not lie in {self}")
        return Fraction(x) if not isinstance(x, QuadraticElement) else x

    def __repr__(self) -> str:
        return "Q" if self.d is None else f"Q(sqrt({self.d}))"


def field_of(*elements: FieldElement) -> NumberField:
    """Smallest supported field containing all the elements."""
    ds = {element_d(x) for x in elements} - {None}
    if len(ds) > 1:
        raise FieldMismatchError(f"elements span distinct quadratic fields {sorted(ds)}")
    return NumberField(ds.pop()) if ds else NumberField.rationals()


# ---------------------------------------------------------------------------
# real embeddings and magnitudes
# ---------------------------------------------------------------------------

@lru_cache(maxsize=256)
def sqrt_d_interval(d: int, bits: int) -> CertifiedInterval:
    if d <= 0:
        raise DomainError("sqrt enclosure needs d > 0")
    return enclose_sqrt(d, bits)


def embed_interval(x: FieldElement, embedding: int, bits: int = 128) -> CertifiedInterval:
    """Enclosure of the real embedding sigma_i(x), i in {0, 1}; exact for rationals.

    For d > 0 the two embeddings send sqrt(d) to +sqrt(d) and -sqrt(d).
    """
    if embedding not in (0, 1):
        raise DomainError("embedding index must be 0 or 1")
    if not isinstance(x, QuadraticElement):
        return CertifiedInterval.point(Fraction(x))
    if x.d < 0:
        raise DomainError("imaginary quadratic fields have no real embeddings")
    sq = sqrt_d_interval(x.d, bits)
    signed = sq if embedding == 0 else -sq
    return CertifiedInterval.point(x.a) + x.b * signed


def magnitude_sq(x: FieldElement, embedding: int = 0) -> FieldElement:
    """|sigma(x)|^2 as an exact field element (rational when d < 0)."""
    if isinstance(x, QuadraticElement) and x.d < 0:
        return x.norm()
    if isinstance(x, QuadraticElement):
        y = x if embedding == 0 else x.conjugate()
        return y * y
    q = Fraction(x)
    return q * q


def magnitude_interval(x: FieldElement, embedding: int = 0, bits: int = 128) -> CertifiedInterval:
    """Enclosure of |sigma(x)| at a real embedding, or the complex modulus for d < 0."""
    if isinstance(x, QuadraticElement) and x.d < 0:
        return enclose_sqrt(x.norm(), bits)
    if isinstance(x, QuadraticElement):
        return embed_interval(x, embedding, bits).abs()
    return CertifiedInterval.point(abs(Fraction(x)))


def exact_sqrt_in_field(q: Fraction, field: NumberField) -> FieldElement | None:
    """An exact square root of rational q inside `field`, if one exists."""
    if q == 0:
        return Fraction(0)
    s, d = rational_sqrt_parts(q)
    if d == 1:
        return s
    if field.is_quadratic and d == field.d:
        return make_element(0, s, d)
    return None


# ---------------------------------------------------------------------------
# wire format
# ---------------------------------------------------------------------------

def element_to_json(x: FieldElement):
    if isinstance(x, QuadraticElement):
        return {"a": format_rational(x.a), "b": format_rational(x.b), "d": x.d}
    return format_rational(Fraction(x))


def element_from_json(data) -> FieldElement:
    if isinstance(data, str):
        return parse_rational(data)
    if isinstance(data, dict):
        extra = set(data) - {"a", "b", "d"}
        if extra:
            raise DomainError(f"unknown keys {sorted(extra)} in element record")
        if not isinstance(data.get("d"), int):
            raise DomainError("quadratic element record needs an integer 'd'")
        return make_element(parse_rational(data["a"]), parse_rational(data["b"]), data["d"])
    raise DomainError(f"cannot parse field element from {data!r}")
