"""Places of Q and of quadratic fields, with the degree-normalized absolute values.

Normalizations: at a real embedding |x|_v = |sigma(x)|^(1/D), at the complex
place |x|_v = |sigma(x)|^(2/D), at a finite place |x|_v = NP^(-ord_P(x)/D),
where D is the field degree.  With these, prod_v |x|_v = 1 for x != 0.

Finite places of Q(sqrt(d)) are determined by how the rational prime p splits:
SPLIT gives two places with NP = p (selector 0/1 picks the p-adic root of d),
INERT one place with NP = p^2, RAMIFIED one place with NP = p.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .arith import factorint, legendre_symbol, ord_p, sqrt_padic
from .errors import DomainError, FieldMismatchError
from .interval import CertifiedInterval, interval_prod
from .enclosures import enclose_root, enclose_sqrt
from .quadratic import (
    FieldElement,
    NumberField,
    QuadraticElement,
    field_of,
    magnitude_interval,
    norm_in,
)


class PlaceKind(enum.Enum):
    REAL = "real"
    COMPLEX = "complex"
    FINITE = "finite"


class Splitting(enum.Enum):
    SPLIT = "split"
    INERT = "inert"
    RAMIFIED = "ramified"


@dataclass(frozen=True)
class Place:
    field: NumberField
    kind: PlaceKind
    p: int | None = None
    splitting: Splitting | None = None
    selector: int = 0  # real embedding index, or split-place selector

    @property
    def is_infinite(self) -> bool:
        return self.kind is not PlaceKind.FINITE

    @property
    def residue_norm(self) -> int:
        """NP for finite places (p, or p^2 when inert)."""
        if self.kind is not PlaceKind.FINITE:
            raise DomainError("residue norm of an infinite place")
        assert self.p is not None
        if self.field.is_quadratic and self.splitting is Splitting.INERT:
            return self.p * self.p
        return self.p

    def __repr__(self) -> str:
        if self.kind is PlaceKind.REAL:
            tag = f"oo_{self.selector}" if self.field.is_quadratic else "oo"
            return f"Place({self.field!r}, {tag})"
        if self.kind is PlaceKind.COMPLEX:
            return f"Place({self.field!r}, oo)"
        extra = f":{self.selector}" if self.splitting is Splitting.SPLIT else ""
        return f"Place({self.field!r}, {self.p}{extra})"


def splitting_type(field: NumberField, p: int) -> Splitting:
    if not field.is_quadratic:
        raise DomainError("splitting is defined for quadratic fields only")
    d = field.d
    assert d is not None
    if p == 2:
        if d % 8 == 1:
            return Splitting.SPLIT
        if d % 8 == 5:
            return Splitting.INERT
        return Splitting.RAMIFIED
    if d % p == 0:
        return Splitting.RAMIFIED
    return Splitting.SPLIT if legendre_symbol(d, p) == 1 else Splitting.INERT


def infinite_places(field: NumberField) -> tuple[Place, ...]:
    if not field.is_quadratic:
        return (Place(field, PlaceKind.REAL),)
    if field.is_imaginary:
        return (Place(field, PlaceKind.COMPLEX),)
    return (Place(field, PlaceKind.REAL, selector=0), Place(field, PlaceKind.REAL, selector=1))


def places_above(field: NumberField, p: int) -> tuple[Place, ...]:
    """The finite places of the field lying over the rational prime p."""
    if p < 2:
        raise DomainError(f"{p} is not a prime")
    if not field.is_quadratic:
        return (Place(field, PlaceKind.FINITE, p=p),)
    s = splitting_type(field, p)
    if s is Splitting.SPLIT:
        return (Place(field, PlaceKind.FINITE, p=p, splitting=s, selector=0),
                Place(field, PlaceKind.FINITE, p=p, splitting=s, selector=1))
    return (Place(field, PlaceKind.FINITE, p=p, splitting=s),)


# ---------------------------------------------------------------------------
# valuations
# ---------------------------------------------------------------------------

def _integral_parts(x: QuadraticElement) -> tuple[int, int, int]:
    """Write x = (A + B*sqrt(d)) / C with integers A, B and C > 0."""
    c = x.a.denominator * x.b.denominator // _gcd(x.a.denominator, x.b.denominator)
    return int(x.a * c), int(x.b * c), c


def _gcd(a: int, b: int) -> int:
    import math

    return math.gcd(a, b)


def ord_at(x: FieldElement, place: Place) -> int:
    """Exponent of the place's prime ideal in (x); x must be nonzero."""
    if place.kind is not PlaceKind.FINITE:
        raise DomainError("ord is defined at finite places only")
    if x == 0:
        raise DomainError("the order of 0 is infinite")
    p = place.p
    assert p is not None
    if not isinstance(x, QuadraticElement):
        q = Fraction(x)
        v = ord_p(q, p)
        if place.field.is_quadratic and place.splitting is Splitting.RAMIFIED:
            return 2 * v
        return v
    if not place.field.contains(x):
        raise FieldMismatchError("element does not lie in the place's field")

    A, B, C = _integral_parts(x)
    v_c = ord_p(C, p) if C % p == 0 else 0
    z_norm = A * A - x.d * B * B  # integer norm of A + B*sqrt(d)
    v_norm = ord_p(z_norm, p) if z_norm % p == 0 else 0

    if place.splitting is Splitting.RAMIFIED:
        # conjugation fixes the ramified prime, so ord(z) = ord_p(N(z))
        return v_norm - 2 * v_c
    if place.splitting is Splitting.INERT:
        if v_norm % 2:
            raise AssertionError("odd norm valuation at an inert prime")
        return v_norm // 2 - v_c
    # split: evaluate A + B*s in Z_p with s the selector's p-adic sqrt of d
    k = v_norm + 1
    s = sqrt_padic(x.d, p, k)
    if place.selector == 1:
        s = p ** k - s
    val = (A + B * s) % p ** k
    if val == 0:
        raise AssertionError("p-adic precision too low for split valuation")
    v = 0
    while val % p == 0:
        val //= p
        v += 1
    return v - v_c


# ---------------------------------------------------------------------------
# absolute values and the product formula
# ---------------------------------------------------------------------------

def absolute_value(x: FieldElement, place: Place, bits: int = 128) -> CertifiedInterval:
    """|x|_v with the degree normalization; exact (point) whenever rational."""
    if isinstance(x, QuadraticElement) and not place.field.contains(x):
        raise FieldMismatchError("element does not lie in the place's field")
    if x == 0:
        return CertifiedInterval.point(0)
    deg = place.field.degree
    if place.kind is PlaceKind.REAL:
        mag = magnitude_interval(x, place.selector, bits + 4)
        if deg == 1:
            return mag
        if mag.is_point:
            return enclose_sqrt(mag.lo, bits)
        return CertifiedInterval(enclose_sqrt(mag.lo, bits).lo, enclose_sqrt(mag.hi, bits).hi)
    if place.kind is PlaceKind.COMPLEX:
        # |sigma(x)|^(2/2) = sqrt(N(x))
        return enclose_sqrt(norm_in(x, place.field), bits)
    v = ord_at(x, place)
    np_ = place.residue_norm
    if deg == 1:
        return CertifiedInterval.point(Fraction(np_) ** (-v))
    if v % 2 == 0:
        return CertifiedInterval.point(Fraction(np_) ** (-v // 2))
    return enclose_root(Fraction(np_) ** (-v), 2, bits)


def relevant_primes(x: FieldElement, field: NumberField) -> list[int]:
    """Primes p with |x|_v != 1 possible at some place above p (x != 0)."""
    if x == 0:
        raise DomainError("no relevant primes for 0")
    if isinstance(x, QuadraticElement):
        A, B, C = _integral_parts(x)
        carrier = abs(A * A - x.d * B * B) * C
    else:
        q = Fraction(x)
        carrier = abs(q.numerator) * q.denominator
    return sorted(factorint(carrier)) if carrier != 1 else []


@dataclass(frozen=True)
class ProductFormulaReport:
    value: FieldElement
    field: NumberField
    product: CertifiedInterval
    exact: bool
    holds: bool
    factors: tuple[tuple[Place, CertifiedInterval], ...]


def check_product_formula(x: FieldElement, bits: int = 128,
                          field: NumberField | None = None) -> ProductFormulaReport:
    """Multiply |x|_v over all places with a nontrivial factor; must enclose 1."""
    if x == 0:
        raise DomainError("product formula applies to nonzero elements")
    k = field if field is not None else field_of(x)
    k.coerce(x)
    places: list[Place] = list(infinite_places(k))
    for p in relevant_primes(x, k):
        places.extend(places_above(k, p))
    # sharpen per-factor precision so the product keeps ~2^-bits width
    per_bits = bits + 4 * len(places) + 8
    factors = tuple((pl, absolute_value(x, pl, per_bits)) for pl in places)
    product = interval_prod(f for _, f in factors)
    exact = product.is_point
    holds = product.contains(1)
    return ProductFormulaReport(x, k, product, exact, holds, factors)
