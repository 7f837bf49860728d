"""Weil heights of projective points, linear forms, and coefficient sequences.

H(x) = prod_v ||x||_v with the max norm at finite places and the Euclidean
norm of the embedded vector, raised to [K_v:R]/[K:Q], at infinite places.
The height is projectively invariant, independent of the ambient field, and
always >= 1.  Values are returned as certified enclosures, exact whenever
every contribution is rational (e.g. H((3,4)) = [5, 5] over Q).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import factorint, ord_p
from .errors import DomainError
from .interval import CertifiedInterval
from .enclosures import enclose_root
from .places import Splitting, ord_at, places_above
from .quadratic import (
    FieldElement,
    NumberField,
    QuadraticElement,
    conj,
    field_of,
    norm_in,
)


def _coerce_coords(coords, field: NumberField | None) -> tuple[tuple[FieldElement, ...], NumberField]:
    elems = tuple(Fraction(c) if isinstance(c, (int, Fraction)) else c for c in coords)
    k = field if field is not None else field_of(*elems)
    for c in elems:
        k.coerce(c)
    return elems, k


@dataclass(frozen=True)
class ProjectivePoint:
    """Nonzero coordinate vector up to scaling; length >= 2."""

    coords: tuple[FieldElement, ...]
    field: NumberField

    def __init__(self, coords, field: NumberField | None = None):
        elems, k = _coerce_coords(coords, field)
        if len(elems) < 2:
            raise DomainError("projective points need at least 2 coordinates")
        if all(c == 0 for c in elems):
            raise DomainError("the zero vector is not a projective point")
        object.__setattr__(self, "coords", elems)
        object.__setattr__(self, "field", k)

    def canonical(self) -> tuple[FieldElement, ...]:
        """Coordinates scaled so the first nonzero one equals 1."""
        lead = next(c for c in self.coords if c != 0)
        return tuple(c / lead for c in self.coords)

    def proportional_to(self, other: "ProjectivePoint") -> bool:
        return self.canonical() == other.canonical()

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProjectivePoint):
            return NotImplemented
        return len(self.coords) == len(other.coords) and self.proportional_to(other)

    def __hash__(self) -> int:
        return hash(self.canonical())

    def __repr__(self) -> str:
        return f"ProjectivePoint({list(self.coords)!r})"


class FormTriple(enum.Enum):
    """The fixed binary forms x1, x2, and x1 + x2."""

    L1 = "L1"
    L2 = "L2"
    L3 = "L3"

    @property
    def coefficients(self) -> tuple[Fraction, Fraction]:
        return {
            FormTriple.L1: (Fraction(1), Fraction(0)),
            FormTriple.L2: (Fraction(0), Fraction(1)),
            FormTriple.L3: (Fraction(1), Fraction(1)),
        }[self]

    def evaluate(self, x1: FieldElement, x2: FieldElement) -> FieldElement:
        c1, c2 = self.coefficients
        return c1 * x1 + c2 * x2

    def as_form(self, field: NumberField | None = None) -> "BinaryLinearForm":
        c1, c2 = self.coefficients
        return BinaryLinearForm(c1, c2, field or NumberField.rationals())


@dataclass(frozen=True)
class BinaryLinearForm:
    """c1*x1 + c2*x2 with coefficients not both zero."""

    c1: FieldElement
    c2: FieldElement
    field: NumberField

    def __init__(self, c1, c2, field: NumberField | None = None):
        (a, b), k = _coerce_coords((c1, c2), field)
        if a == 0 and b == 0:
            raise DomainError("the zero form is not allowed")
        object.__setattr__(self, "c1", a)
        object.__setattr__(self, "c2", b)
        object.__setattr__(self, "field", k)

    def evaluate(self, x1: FieldElement, x2: FieldElement) -> FieldElement:
        return self.c1 * x1 + self.c2 * x2

    def __repr__(self) -> str:
        return f"BinaryLinearForm({self.c1!r}, {self.c2!r})"


# ---------------------------------------------------------------------------
# the height itself
# ---------------------------------------------------------------------------

def _scale_integral(coords: tuple[FieldElement, ...]) -> tuple[list[FieldElement], int]:
    """Scale coordinates by a common denominator so all components are integral."""
    den = 1
    for c in coords:
        if isinstance(c, QuadraticElement):
            den = math.lcm(den, c.a.denominator, c.b.denominator)
        else:
            den = math.lcm(den, Fraction(c).denominator)
    return [c * den for c in coords], den


def _finite_height_factor(coords: list[FieldElement], field: NumberField) -> tuple[Fraction, Fraction]:
    """prod_P max_i |c_i|_P over finite places, as rational * sqrt(rational).

    Coordinates must be integral, not all zero.  Returns (R, A) with the
    factor equal to R * sqrt(A); A = 1 unless the field degree is 2 and an
    odd prime-ideal exponent occurs.
    """
    norms = [abs(norm_in(c, field).numerator) for c in coords if c != 0]
    g = 0
    for n in norms:
        g = math.gcd(g, n)
    rational, sqrt_arg = Fraction(1), Fraction(1)
    if g <= 1:
        return rational, sqrt_arg
    for p in sorted(factorint(g)):
        if field.is_quadratic:
            # factor is p^(e/2) with e = sum over P | p of -min_ord * f_P
            e = 0
            for place in places_above(field, p):
                m = min(ord_at(c, place) for c in coords if c != 0)
                weight = 2 if place.splitting is Splitting.INERT else 1
                e += -m * weight
            rational *= Fraction(p) ** ((e - (e % 2)) // 2)
            if e % 2:
                sqrt_arg *= p
        else:
            m = min(ord_p(Fraction(c), p) for c in coords if c != 0)
            rational *= Fraction(p) ** (-m)
    return rational, sqrt_arg


def _sum_of_squares(coords: list[FieldElement]) -> FieldElement:
    s: FieldElement = Fraction(0)
    for c in coords:
        s = s + c * c
    return s


def height_sequence(elements, bits: int = 128, field: NumberField | None = None) -> CertifiedInterval:
    """Height of a nonzero coefficient sequence (length >= 1)."""
    elems, k = _coerce_coords(elements, field)
    if not elems or all(c == 0 for c in elems):
        raise DomainError("height of the zero sequence")
    ints, _ = _scale_integral(list(elems))
    rational, sqrt_arg = _finite_height_factor(ints, k)

    if not k.is_quadratic:
        inner = sqrt_arg * Fraction(_sum_of_squares(ints))
        return rational * enclose_root(inner, 2, bits + 4)
    if k.is_imaginary:
        s = sum((norm_in(c, k) for c in ints), Fraction(0))
        return rational * enclose_root(sqrt_arg * s, 2, bits + 4)
    # real quadratic: the two real places contribute (sigma1(S) sigma2(S))^(1/4)
    s = _sum_of_squares(ints)
    ns = Fraction(s * conj(s)) if isinstance(s, QuadraticElement) else Fraction(s) ** 2
    return rational * enclose_root(sqrt_arg ** 2 * ns, 4, bits + 4)


def height_point(x: ProjectivePoint, bits: int = 128) -> CertifiedInterval:
    """Weil height H(x); exact when all contributions are rational."""
    return height_sequence(x.coords, bits, x.field)


def height_linear_form(form: BinaryLinearForm, bits: int = 128) -> CertifiedInterval:
    """H(L) = height of the coefficient vector; also the height of V(L)."""
    return height_sequence((form.c1, form.c2), bits, form.field)
