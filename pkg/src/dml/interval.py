"""Intervals with exact rational endpoints and certified comparisons.

A CertifiedInterval [lo, hi] asserts that the (possibly irrational) quantity
it stands for lies between lo and hi.  Every operation rounds outward, so
enclosures stay sound under arbitrary composition.  Comparisons return a
three-valued verdict; OVERLAP is a first-class outcome that callers must
resolve by refining precision, never by guessing.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


class Verdict(enum.Enum):
    LESS = "LESS"
    GREATER = "GREATER"
    OVERLAP = "OVERLAP"


@dataclass(frozen=True)
class CertifiedInterval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", _frac(self.lo))
        object.__setattr__(self, "hi", _frac(self.hi))
        if self.lo > self.hi:
            raise DomainError(f"inverted interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, value) -> "CertifiedInterval":
        v = _frac(value)
        return cls(v, v)

    # -- queries ------------------------------------------------------------

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    def contains(self, value) -> bool:
        v = _frac(value)
        return self.lo <= v <= self.hi

    def contains_interval(self, other: "CertifiedInterval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def intersects(self, other: "CertifiedInterval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def hull(self, other: "CertifiedInterval") -> "CertifiedInterval":
        return CertifiedInterval(min(self.lo, other.lo), max(self.hi, other.hi))

    def sign(self) -> int | None:
        """Certain sign of the enclosed value: -1, 0 (exact zero), or None."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        if self.lo == self.hi == 0:
            return 0
        return None

    # -- arithmetic ----------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "CertifiedInterval":
        if isinstance(other, CertifiedInterval):
            return other
        return CertifiedInterval.point(other)

    def __add__(self, other) -> "CertifiedInterval":
        o = self._coerce(other)
        return CertifiedInterval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self) -> "CertifiedInterval":
        return CertifiedInterval(-self.hi, -self.lo)

    def __sub__(self, other) -> "CertifiedInterval":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "CertifiedInterval":
        return self._coerce(other) + (-self)

    def __mul__(self, other) -> "CertifiedInterval":
        o = self._coerce(other)
        products = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return CertifiedInterval(min(products), max(products))

    __rmul__ = __mul__

    def reciprocal(self) -> "CertifiedInterval":
        if self.lo <= 0 <= self.hi:
            raise DomainError("reciprocal of an interval containing 0")
        return CertifiedInterval(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other) -> "CertifiedInterval":
        return self * self._coerce(other).reciprocal()

    def __rtruediv__(self, other) -> "CertifiedInterval":
        return self._coerce(other) * self.reciprocal()

    def __pow__(self, n: int) -> "CertifiedInterval":
        if not isinstance(n, int):
            raise TypeError("interval powers must be integers")
        if n < 0:
            return (self ** (-n)).reciprocal()
        if n == 0:
            return CertifiedInterval.point(1)
        if n % 2 == 0 and self.lo < 0 <= self.hi:
            hi = max((-self.lo) ** n, self.hi ** n)
            return CertifiedInterval(Fraction(0), hi)
        if n % 2 == 0 and self.hi < 0:
            return CertifiedInterval(self.hi ** n, self.lo ** n)
        return CertifiedInterval(self.lo ** n, self.hi ** n)

    def abs(self) -> "CertifiedInterval":
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return CertifiedInterval(Fraction(0), max(-self.lo, self.hi))

    def pad(self, amount) -> "CertifiedInterval":
        a = _frac(amount)
        if a < 0:
            raise DomainError("pad amount must be nonnegative")
        return CertifiedInterval(self.lo - a, self.hi + a)

    def snap_to_grid(self, grid_exp: int) -> "CertifiedInterval":
        """Round outward onto the grid of multiples of 2^grid_exp."""
        if self.is_point:
            return self
        scale = Fraction(2) ** grid_exp
        lo = (self.lo / scale).__floor__() * scale
        hi = -((-self.hi / scale).__floor__()) * scale
        return CertifiedInterval(lo, hi)

    def round_significant(self, bits: int) -> "CertifiedInterval":
        """Outward round endpoints to ~bits significant binary digits."""
        m = max(abs(self.lo), abs(self.hi))
        if m == 0:
            return self
        exp = m.numerator.bit_length() - m.denominator.bit_length() - bits
        return self.snap_to_grid(exp)

    # -- serialization --------------------------------------------------------

    def to_json(self) -> dict:
        return {"lo": str(self.lo), "hi": str(self.hi)}

    @classmethod
    def from_json(cls, data: dict) -> "CertifiedInterval":
        from .arith import parse_rational

        return cls(parse_rational(data["lo"]), parse_rational(data["hi"]))

    def __repr__(self) -> str:
        return f"[{self.lo}, {self.hi}]"


def certified_compare(a: CertifiedInterval | Fraction | int,
                      b: CertifiedInterval | Fraction | int) -> Verdict:
    """LESS iff a.hi < b.lo, GREATER iff a.lo > b.hi, else OVERLAP."""
    ia = CertifiedInterval._coerce(a)
    ib = CertifiedInterval._coerce(b)
    if ia.hi < ib.lo:
        return Verdict.LESS
    if ia.lo > ib.hi:
        return Verdict.GREATER
    return Verdict.OVERLAP


def interval_prod(factors) -> CertifiedInterval:
    out = CertifiedInterval.point(1)
    for f in factors:
        out = out * f
    return out
