"""Multihomogeneous polynomials in m blocks of 2 variables and their index.

A polynomial of multidegree r = (r_1, ..., r_m) is stored sparsely as a map
from the tuple (i_1, ..., i_m) to the coefficient of
prod_h x_{h1}^{i_h} x_{h2}^{r_h - i_h}.

The index of P at a tuple of points x = (x_1, ..., x_m) is the vanishing
order of P at x where order in block h counts with weight 1/r_h: rewrite P
exactly in per-block bases (M_h, N_h) with M_h(x_h) = 0 and N_h(x_h) != 0,
then take the minimum of sum_h k_h / r_h over surviving monomials, where k_h
is the M_h-degree.  The result is exact, basis independent, and lies in
[0, m], with value 0 exactly when P(x) != 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iter_product

from .errors import DomainError
from .heights import BinaryLinearForm, ProjectivePoint
from .quadratic import FieldElement, NumberField, field_of, norm_in


@dataclass(frozen=True)
class MultihomogPolynomial:
    blocks: int
    degrees: tuple[int, ...]
    coefficients: dict  # (i_1, ..., i_m) -> FieldElement, zeros dropped
    field: NumberField

    def __init__(self, blocks: int, degrees, coefficients, field: NumberField | None = None):
        degrees = tuple(int(r) for r in degrees)
        if blocks < 1:
            raise DomainError("need at least one block")
        if len(degrees) != blocks or any(r < 1 for r in degrees):
            raise DomainError("multidegree must list a positive degree per block")
        clean: dict[tuple[int, ...], FieldElement] = {}
        for key, value in coefficients.items():
            key = tuple(int(i) for i in key)
            if len(key) != blocks:
                raise DomainError(f"exponent tuple {key} has wrong length")
            for h, i in enumerate(key):
                if not 0 <= i <= degrees[h]:
                    raise DomainError(f"exponent {i} outside [0, {degrees[h]}] in block {h + 1}")
            value = Fraction(value) if isinstance(value, int) else value
            if value != 0:
                clean[key] = clean.get(key, Fraction(0)) + value
                if clean[key] == 0:
                    del clean[key]
        k = field if field is not None else field_of(*clean.values()) if clean else NumberField.rationals()
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "degrees", degrees)
        object.__setattr__(self, "coefficients", clean)
        object.__setattr__(self, "field", k)

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    def coefficient_sequence(self) -> tuple[FieldElement, ...]:
        """Coefficients in a fixed monomial order (for the polynomial height)."""
        return tuple(v for _, v in sorted(self.coefficients.items()))

    def evaluate(self, points) -> FieldElement:
        """P at one coordinate pair per block."""
        if len(points) != self.blocks:
            raise DomainError("one coordinate pair per block is required")
        total: FieldElement = Fraction(0)
        for key, coeff in self.coefficients.items():
            term: FieldElement = coeff
            for h, i in enumerate(key):
                x1, x2 = points[h]
                term = term * x1 ** i * x2 ** (self.degrees[h] - i)
            total = total + term
        return total

    def __repr__(self) -> str:
        return f"MultihomogPolynomial(m={self.blocks}, r={self.degrees}, {len(self.coefficients)} terms)"


def vanishing_point(form: BinaryLinearForm) -> ProjectivePoint:
    """The unique projective zero of a nonzero binary form: (c2, -c1)."""
    return ProjectivePoint((form.c2, -form.c1), form.field)


def _magnitude_key(value: FieldElement, field: NumberField) -> Fraction:
    # deterministic size proxy, exact: |norm| (equals value^2 for rationals)
    return abs(norm_in(value, field))


def _block_basis(point: ProjectivePoint) -> tuple[tuple[FieldElement, FieldElement],
                                                  tuple[FieldElement, FieldElement]]:
    """(M, N) coefficient rows: M vanishes at the point, N does not.

    N is the coordinate form with the larger-magnitude value at the point,
    ties going to x1.
    """
    a, b = point.coords
    m_row = (b, -a)
    if a != 0 and (b == 0 or _magnitude_key(a, point.field) >= _magnitude_key(b, point.field)):
        n_row = (Fraction(1), Fraction(0))
    else:
        n_row = (Fraction(0), Fraction(1))
    return m_row, n_row


def _substitution(m_row, n_row) -> tuple[tuple[FieldElement, FieldElement],
                                         tuple[FieldElement, FieldElement]]:
    """Express (x1, x2) in the basis (M, N): x1 = s11*M + s12*N, x2 = s21*M + s22*N."""
    m1, m2 = m_row
    n1, n2 = n_row
    det = m1 * n2 - m2 * n1
    if det == 0:
        raise DomainError("degenerate basis")
    return ((n2 / det, -m2 / det), (-n1 / det, m1 / det))


def _binomial_rows(sub, i: int, j: int) -> list[FieldElement]:
    """Coefficients over the M-degree k of x1^i * x2^j after substitution."""
    (a1, b1), (a2, b2) = sub  # x1 = a1 M + b1 N, x2 = a2 M + b2 N
    row1: list[FieldElement] = [Fraction(1)]
    for _ in range(i):
        nxt: list[FieldElement] = [Fraction(0)] * (len(row1) + 1)
        for k, c in enumerate(row1):
            nxt[k + 1] = nxt[k + 1] + c * a1
            nxt[k] = nxt[k] + c * b1
        row1 = nxt
    row = row1
    for _ in range(j):
        nxt = [Fraction(0)] * (len(row) + 1)
        for k, c in enumerate(row):
            nxt[k + 1] = nxt[k + 1] + c * a2
            nxt[k] = nxt[k] + c * b2
        row = nxt
    return row


def _index_with_bases(poly: MultihomogPolynomial, bases) -> Fraction:
    subs = [_substitution(m_row, n_row) for m_row, n_row in bases]
    caches: list[dict[int, list[FieldElement]]] = [{} for _ in range(poly.blocks)]
    rewritten: dict[tuple[int, ...], FieldElement] = {}
    for key, coeff in poly.coefficients.items():
        rows = []
        for h, i in enumerate(key):
            if i not in caches[h]:
                caches[h][i] = _binomial_rows(subs[h], i, poly.degrees[h] - i)
            rows.append(caches[h][i])
        for combo in iter_product(*(range(len(r)) for r in rows)):
            value: FieldElement = coeff
            for h, k in enumerate(combo):
                value = value * rows[h][k]
            if value == 0:
                continue
            rewritten[combo] = rewritten.get(combo, Fraction(0)) + value
            if rewritten[combo] == 0:
                del rewritten[combo]
    if not rewritten:
        raise AssertionError("exact basis change annihilated a nonzero polynomial")
    return min(sum((Fraction(k, r) for k, r in zip(combo, poly.degrees)), Fraction(0))
               for combo in rewritten)


def index(poly: MultihomogPolynomial, points) -> Fraction:
    """Weighted vanishing order of P at the point tuple; exact rational in [0, m]."""
    if poly.is_zero:
        raise DomainError("the index of the zero polynomial is undefined")
    points = tuple(points)
    if len(points) != poly.blocks:
        raise DomainError(f"expected {poly.blocks} points, got {len(points)}")
    pts = [p if isinstance(p, ProjectivePoint) else ProjectivePoint(p) for p in points]
    for p in pts:
        if len(p.coords) != 2:
            raise DomainError("index points live in the projective line")
    bases = [_block_basis(p) for p in pts]
    value = _index_with_bases(poly, bases)
    if not 0 <= value <= poly.blocks:
        raise AssertionError(f"index {value} escaped [0, m]")
    return value


def index_wrt_forms(poly: MultihomogPolynomial, forms) -> Fraction:
    """Index at the tuple of vanishing points of the given forms."""
    forms = tuple(forms)
    if len(forms) != poly.blocks:
        raise DomainError(f"expected {poly.blocks} forms, got {len(forms)}")
    return index(poly, tuple(vanishing_point(f) for f in forms))
