"""Certified enclosures of logs, exponentials, roots, pi, and ln(n!).

Every function returns a CertifiedInterval with exact rational endpoints that
provably contains the true real value.  Series are truncated with explicit
remainder bounds; argument reduction uses exact powers of two, so the only
error sources are the stated remainders and outward dyadic rounding.

Width contract for enclose_log(x, bits): width <= 2^-bits, and a fixed
dyadic output grid of 2^-(bits+4) makes the delivered width non-increasing
in bits for a fixed argument (monotone refinement).
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .arith import exact_root, iroot, primes_upto
from .errors import DomainError
from .interval import CertifiedInterval

_EXACT_FACTORIAL_LIMIT = 10_000


def _as_positive_fraction(x) -> Fraction:
    q = Fraction(x)
    if q <= 0:
        raise DomainError(f"argument must be positive, got {q}")
    return q


def _dyadic_down(q: Fraction, prec: int) -> Fraction:
    return Fraction((q * 2 ** prec).__floor__(), 2 ** prec)


def _dyadic_up(q: Fraction, prec: int) -> Fraction:
    return -Fraction(((-q) * 2 ** prec).__floor__(), 2 ** prec)


# ---------------------------------------------------------------------------
# logarithms via 2*artanh((m-1)/(m+1)) with m in [1, 2)
# ---------------------------------------------------------------------------

def _artanh_terms_needed(t_hi: Fraction, target_exp: int) -> int:
    """Smallest N with 2*t^(2N+1)/((2N+1)(1-t^2)) <= 2^target_exp for t <= t_hi."""
    if t_hi == 0:
        return 1
    bound = Fraction(1, 2) ** (-target_exp)
    n = 1
    tsq = t_hi * t_hi
    tail = 2 * t_hi ** 3 / (3 * (1 - tsq))  # N = 1 remainder
    while tail > bound:
        tail = tail * tsq * Fraction(2 * n + 1, 2 * n + 3)
        n += 1
    return n


def _artanh_partial(t: Fraction, n_terms: int) -> Fraction:
    """2 * sum_{k<n} t^(2k+1)/(2k+1), evaluated exactly (Horner in t^2)."""
    tsq = t * t
    s = Fraction(1, 2 * n_terms - 1)
    for k in range(n_terms - 2, -1, -1):
        s = s * tsq + Fraction(1, 2 * k + 1)
    return 2 * t * s


def _artanh_remainder(t: Fraction, n_terms: int) -> Fraction:
    if t == 0:
        return Fraction(0)
    return 2 * t ** (2 * n_terms + 1) / ((2 * n_terms + 1) * (1 - t * t))


@lru_cache(maxsize=256)
def _ln2_raw(bits: int) -> CertifiedInterval:
    """ln 2 enclosure of width <= 2^-bits (t = 1/3 exactly)."""
    t = Fraction(1, 3)
    n = _artanh_terms_needed(t, -(bits + 2))
    s = _artanh_partial(t, n)
    return CertifiedInterval(s, s + _artanh_remainder(t, n))


@lru_cache(maxsize=4096)
def enclose_log(x, bits: int = 128) -> CertifiedInterval:
    """Enclosure of ln(x) for rational x > 0; width <= 2^-bits."""
    if bits < 1:
        raise DomainError("bits must be >= 1")
    q = _as_positive_fraction(x)
    if q == 1:
        return CertifiedInterval.point(0)

    # reduce to q = m * 2^e with m in [1, 2)
    e = q.numerator.bit_length() - q.denominator.bit_length()
    while q < Fraction(2) ** e:
        e -= 1
    while q >= Fraction(2) ** (e + 1):
        e += 1

    raw_bits = bits + 10
    num, den = q.numerator, q.denominator
    if e >= 0:
        lo_den = den << e
    else:
        num <<= -e
        lo_den = den
    t = Fraction(num - lo_den, num + lo_den)  # in [0, 1/3]

    prec = bits + 14
    t_lo, t_hi = _dyadic_down(t, prec), _dyadic_up(t, prec)
    n = _artanh_terms_needed(t_hi, -raw_bits)
    series = CertifiedInterval(_artanh_partial(t_lo, n),
                               _artanh_partial(t_hi, n) + _artanh_remainder(t_hi, n))

    if e != 0:
        series = series + e * _ln2_raw(raw_bits + e.bit_length() + 2)
    return series.snap_to_grid(-(bits + 4))


def log_interval(iv: CertifiedInterval, bits: int = 128) -> CertifiedInterval:
    """Enclosure of ln over an interval with positive endpoints."""
    if iv.lo <= 0:
        raise DomainError("log of an interval reaching 0 or below")
    return CertifiedInterval(enclose_log(iv.lo, bits).lo, enclose_log(iv.hi, bits).hi)


# ---------------------------------------------------------------------------
# pi via Machin's formula
# ---------------------------------------------------------------------------

def _atan_inv(q: int, target_exp: int) -> CertifiedInterval:
    """Enclosure of arctan(1/q), alternating series, remainder <= first omitted term."""
    bound = Fraction(1, 2) ** (-target_exp)
    terms: list[Fraction] = []
    j = 0
    while True:
        term = Fraction(1, (2 * j + 1) * q ** (2 * j + 1))
        if term <= bound:
            rem = term
            break
        terms.append(term if j % 2 == 0 else -term)
        j += 1
    s = sum(terms, Fraction(0))
    return CertifiedInterval(s - rem, s + rem)


@lru_cache(maxsize=64)
def pi_interval(bits: int = 128) -> CertifiedInterval:
    """Enclosure of pi of width <= 2^-bits."""
    i5 = _atan_inv(5, -(bits + 6))
    i239 = _atan_inv(239, -(bits + 4))
    return 16 * i5 - 4 * i239


# ---------------------------------------------------------------------------
# exponentials
# ---------------------------------------------------------------------------

def _exp_terms_needed(target_exp: int) -> int:
    """Smallest N with 2*(1/2)^N/N! <= 2^target_exp."""
    bound = Fraction(1, 2) ** (-target_exp)
    n, term = 1, Fraction(1)  # term = (1/2)^n / n!
    while True:
        term = term / (2 * (n + 1))
        n += 1
        if 2 * term <= bound:
            return n


def _exp_partial(u: Fraction, n_terms: int) -> Fraction:
    s = Fraction(1)
    for j in range(n_terms - 1, 0, -1):
        s = 1 + s * u / j
    return s


@lru_cache(maxsize=1024)
def enclose_exp(x, bits: int = 128) -> CertifiedInterval:
    """Enclosure of exp(x) for rational x; relative width <= 2^-bits."""
    q = Fraction(x)
    if q == 0:
        return CertifiedInterval.point(1)
    a = abs(q)
    k = max(0, a.numerator.bit_length() - a.denominator.bit_length() + 1)
    while a > Fraction(2) ** (k - 1):
        k += 1
    prec = bits + 2 * k + 12
    u = q / 2 ** k
    u_lo, u_hi = _dyadic_down(u, prec), _dyadic_up(u, prec)
    n = _exp_terms_needed(-(prec + 2))
    rem = 2 * Fraction(1, 2) ** n / math.factorial(n)
    iv = CertifiedInterval(_exp_partial(u_lo, n) - rem, _exp_partial(u_hi, n) + rem)
    if iv.lo <= 0:
        raise AssertionError("exp enclosure lost positivity")
    for _ in range(k):
        iv = (iv * iv).round_significant(prec)
    return iv


def exp_interval(iv: CertifiedInterval, bits: int = 128) -> CertifiedInterval:
    return CertifiedInterval(enclose_exp(iv.lo, bits).lo, enclose_exp(iv.hi, bits).hi)


# ---------------------------------------------------------------------------
# roots and rational powers
# ---------------------------------------------------------------------------

def enclose_root(x, n: int, bits: int = 128) -> CertifiedInterval:
    """Enclosure of x^(1/n) for rational x >= 0; exact point when x is a perfect power."""
    q = Fraction(x)
    if n < 1:
        raise DomainError("root order must be >= 1")
    if q < 0:
        raise DomainError("root of a negative rational")
    if q == 0:
        return CertifiedInterval.point(0)
    rn, rd = exact_root(q.numerator, n), exact_root(q.denominator, n)
    if rn is not None and rd is not None:
        return CertifiedInterval.point(Fraction(rn, rd))
    prec = bits + 4
    m = q.numerator * q.denominator ** (n - 1)
    base = iroot(m << (n * prec), n)
    den = q.denominator << prec
    return CertifiedInterval(Fraction(base, den), Fraction(base + 1, den))


def enclose_sqrt(x, bits: int = 128) -> CertifiedInterval:
    return enclose_root(x, 2, bits)


def root_interval(iv: CertifiedInterval, n: int, bits: int = 128) -> CertifiedInterval:
    if iv.lo < 0:
        raise DomainError("root of an interval with negative lower endpoint")
    return CertifiedInterval(enclose_root(iv.lo, n, bits).lo, enclose_root(iv.hi, n, bits).hi)


def pow_rational(base, expo: Fraction, bits: int = 128) -> CertifiedInterval:
    """Enclosure of base^expo for rational base > 0 and rational exponent."""
    b = _as_positive_fraction(base)
    e = Fraction(expo)
    if e == 0:
        return CertifiedInterval.point(1)
    t = b ** e.numerator
    return enclose_root(t, e.denominator, bits)


# ---------------------------------------------------------------------------
# Bernoulli numbers and ln(n!)
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """Exact Bernoulli number B_n (B_1 = -1/2 convention)."""
    if n < 0:
        raise DomainError("Bernoulli index must be >= 0")
    if n == 0:
        return Fraction(1)
    if n > 1 and n % 2 == 1:
        return Fraction(0)
    acc = Fraction(0)
    for k in range(n):
        acc += math.comb(n + 1, k) * bernoulli(k)
    return -acc / (n + 1)


@lru_cache(maxsize=1)
def _factorial_primes() -> tuple[int, ...]:
    return tuple(primes_upto(_EXACT_FACTORIAL_LIMIT))


def _legendre_exponent(n: int, p: int) -> int:
    e, pk = 0, p
    while pk <= n:
        e += n // pk
        pk *= p
    return e


def _logfact_exact(n: int, target_exp: int) -> CertifiedInterval:
    """ln(n!) = sum_p e_p ln p over primes p <= n, each log certified."""
    exps = [(p, _legendre_exponent(n, p)) for p in _factorial_primes() if p <= n]
    total_weight = sum(e for _, e in exps)
    per_bits = -target_exp + total_weight.bit_length() + 1
    acc = CertifiedInterval.point(0)
    for p, e in exps:
        acc = acc + e * enclose_log(p, per_bits)
    return acc


def _logfact_stirling(n: int, target_exp: int) -> CertifiedInterval:
    """Stirling series for ln Gamma(x) at x = n+1 with the first-omitted-term bound."""
    x = n + 1
    part = -(target_exp - 3)

    ln_x = enclose_log(x, part + x.bit_length() + 2)
    main = (Fraction(x) - Fraction(1, 2)) * ln_x - x

    half_ln_2pi = (log_interval(pi_interval(part + 2), part + 2) + _ln2_raw(part + 2)) * Fraction(1, 2)

    bound = Fraction(1, 2) ** part
    series = Fraction(0)
    n_terms = 0
    while True:
        rem = abs(bernoulli(2 * n_terms + 2)) / Fraction((2 * n_terms + 1) * (2 * n_terms + 2) * x ** (2 * n_terms + 1))
        if rem <= bound:
            break
        series += bernoulli(2 * n_terms + 2) / Fraction((2 * n_terms + 2) * (2 * n_terms + 1) * x ** (2 * n_terms + 1))
        n_terms += 1
    return (main + half_ln_2pi + series).pad(rem)


def log_factorial_bounds(n: int, bits: int = 128) -> CertifiedInterval:
    """Enclosure of ln(n!) with relative width <= 2^-bits of the midpoint.

    Exact prime-power summation for n <= 10^4, Stirling series with an
    explicit remainder above.  n = 0 and n = 1 give [0, 0].
    """
    if n < 0:
        raise DomainError("factorial of a negative integer")
    if bits < 1:
        raise DomainError("bits must be >= 1")
    if n <= 1:
        return CertifiedInterval.point(0)
    anchor = n * max(2, n.bit_length())  # stable overestimate of ln(n!)
    grid_exp = anchor.bit_length() - bits - 7
    raw_exp = grid_exp - 3
    if n <= _EXACT_FACTORIAL_LIMIT:
        iv = _logfact_exact(n, raw_exp)
    else:
        iv = _logfact_stirling(n, raw_exp)
    iv = iv.snap_to_grid(grid_exp)
    if iv.width > iv.midpoint * Fraction(1, 2) ** bits:
        raise AssertionError("log-factorial width budget violated")
    return iv
