"""Integer and rational utilities: factoring, modular square roots, exact roots.

Everything here is exact big-integer arithmetic; no floats touch any result.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)  # deterministic below 3.3e24


def primes_upto(n: int) -> list[int]:
    """All primes <= n by sieve."""
    if n < 2:
        return []
    sieve = bytearray(b"\x01") * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            start = p * p
            sieve[start:: p] = b"\x00" * ((n - start) // p + 1)
    return [i for i, flag in enumerate(sieve) if flag]


@lru_cache(maxsize=1)
def _small_primes() -> tuple[int, ...]:
    return tuple(primes_upto(10_000))


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int) -> int:
    """A nontrivial factor of composite odd n (Brent's cycle variant)."""
    if n % 2 == 0:
        return 2
    rng = random.Random(0xD1_0F * (n & 0xFFFFFFFF) + 1)
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def factorint(n: int) -> dict[int, int]:
    """Prime factorization of n >= 1 as {prime: exponent}."""
    if n < 1:
        raise DomainError(f"factorint expects n >= 1, got {n}")
    out: dict[int, int] = {}
    for p in _small_primes():
        if p * p > n:
            break
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    if n == 1:
        return out
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_brent(m)
        stack.append(d)
        stack.append(m // d)
    return out


def ord_p(x: Fraction | int, p: int) -> int:
    """Exponent of the prime p in x != 0."""
    x = Fraction(x)
    if x == 0:
        raise DomainError("ord_p of 0 is infinite")
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def iroot(n: int, k: int) -> int:
    """Floor of the k-th root of n >= 0."""
    if n < 0:
        raise DomainError("iroot of a negative number")
    if k < 1:
        raise DomainError("iroot order must be >= 1")
    if n in (0, 1) or k == 1:
        return n
    if k == 2:
        return math.isqrt(n)
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x ** k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def exact_root(n: int, k: int) -> int | None:
    """The exact k-th root of n >= 0, or None if n is not a perfect k-th power."""
    r = iroot(n, k)
    return r if r ** k == n else None


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Write n != 0 as s^2 * d with d squarefree (sign carried by d)."""
    if n == 0:
        raise DomainError("squarefree decomposition of 0")
    sign = -1 if n < 0 else 1
    s, d = 1, 1
    for p, e in factorint(abs(n)).items():
        s *= p ** (e // 2)
        if e % 2:
            d *= p
    return s, sign * d


def rational_sqrt_parts(q: Fraction) -> tuple[Fraction, int]:
    """Write q != 0 as s^2 * d with s rational and d a squarefree integer."""
    sn, dn = squarefree_decompose(q.numerator)
    sd, dd = squarefree_decompose(q.denominator)
    # q = (sn/sd)^2 * dn/dd and dn/dd = dn*dd / dd^2
    return Fraction(sn, sd * dd), dn * dd


def is_squarefree(n: int) -> bool:
    if n == 0:
        return False
    return squarefree_decompose(n)[0] == 1


def legendre_symbol(a: int, p: int) -> int:
    """(a|p) for an odd prime p."""
    a %= p
    if a == 0:
        return 0
    t = pow(a, (p - 1) // 2, p)
    return 1 if t == 1 else -1


def tonelli_shanks(a: int, p: int) -> int:
    """A square root of a mod the odd prime p; a must be a QR."""
    a %= p
    if a == 0:
        return 0
    if legendre_symbol(a, p) != 1:
        raise DomainError(f"{a} is not a quadratic residue mod {p}")
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while legendre_symbol(z, p) != -1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def sqrt_padic(d: int, p: int, k: int) -> int:
    """Canonical s with s^2 = d mod p^k, for d a square in Z_p, k >= 1.

    Canonical branch: for odd p the Hensel lift of min(r, p-r) mod p;
    for p = 2 (needs d = 1 mod 8) the root with s = 1 mod 4.
    """
    if k < 1:
        raise DomainError("precision k must be >= 1")
    if p == 2:
        if d % 8 != 1:
            raise DomainError(f"{d} is not a 2-adic square unit")
        s = 1
        for e in range(3, k):
            if ((s * s - d) >> e) & 1:
                s += 1 << (e - 1)
        return s % (1 << k)
    if d % p == 0:
        raise DomainError(f"{d} is not a unit mod {p}")
    r = tonelli_shanks(d % p, p)
    r = min(r, p - r)
    mod = p
    while mod < p ** k:
        # lift r from mod to mod*p: r' = r + t*mod with 2*r*t = (d - r^2)/mod (mod p)
        t = ((d - r * r) // mod) * pow(2 * r, -1, p) % p
        r += t * mod
        mod *= p
    return r % p ** k


def parse_rational(text: str) -> Fraction:
    """Parse the "p/q" (or "p") wire format for rationals, strictly."""
    s = text.strip()
    if not s:
        raise DomainError("empty rational literal")
    num_s, sep, den_s = s.partition("/")
    try:
        num = int(num_s)
    except ValueError:
        raise DomainError(f"bad rational literal {text!r}") from None
    if not sep:
        return Fraction(num)
    try:
        den = int(den_s)
    except ValueError:
        raise DomainError(f"bad rational literal {text!r}") from None
    if den == 0:
        raise DomainError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(q: Fraction) -> str:
    """Render a rational in the "p/q" (or "p") wire format."""
    return str(q)
