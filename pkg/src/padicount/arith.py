"""Exact integer helpers shared by every counting formula.

Everything is plain arbitrary-precision integer arithmetic; divisibility
questions about p^F - 1 are answered through multiplicative orders or
modular reduction so that huge powers are never materialized.
"""

from __future__ import annotations

import math
from typing import NamedTuple

from .errors import DomainError


class PValuation(NamedTuple):
    """The split n = p^s * h with gcd(h, p) = 1."""

    s: int
    h: int


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test (desk-scale inputs)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n, ascending."""
    if n < 1:
        raise DomainError("prime_factors: n must be >= 1")
    out = []
    rest = n
    p = 2
    while p * p <= rest:
        if rest % p == 0:
            out.append(p)
            while rest % p == 0:
                rest //= p
        p += 1 if p == 2 else 2
    if rest > 1:
        out.append(rest)
    return out


def euler_phi(n: int) -> int:
    """Euler's totient of n."""
    if n < 1:
        raise DomainError("euler_phi: n must be >= 1")
    result = n
    for p in prime_factors(n):
        result -= result // p
    return result


def p_valuation(n: int, p: int) -> PValuation:
    """Largest s with p^s | n, together with the cofactor h = n / p^s."""
    if n < 1:
        raise DomainError("p_valuation: n must be >= 1")
    if not is_prime(p):
        raise DomainError(f"p_valuation: p = {p} is not prime")
    s = 0
    h = n
    while h % p == 0:
        h //= p
        s += 1
    return PValuation(s, h)


def divisors(n: int) -> list[int]:
    """All positive divisors of n, ascending."""
    if n < 1:
        raise DomainError("divisors: n must be >= 1")
    small = []
    large = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def divisor_pairs(n: int) -> list[tuple[int, int]]:
    """Every ordered factorization n = d1 * d2, ascending in d1."""
    return [(d, n // d) for d in divisors(n)]


def mult_order(p: int, modulus: int) -> int:
    """Smallest t >= 1 with p^t = 1 mod modulus; 1 when modulus = 1."""
    if modulus < 1:
        raise DomainError("mult_order: modulus must be >= 1")
    if math.gcd(p, modulus) != 1:
        raise DomainError(f"mult_order: gcd({p}, {modulus}) != 1")
    if modulus == 1:
        return 1
    t = 1
    x = p % modulus
    while x != 1:
        x = (x * p) % modulus
        t += 1
    return t


def divides_p_power_minus_one(h: int, p: int, exponent: int) -> bool:
    """Whether h divides p^exponent - 1, decided via the order of p mod h.

    Never forms p^exponent, so arbitrarily large exponents stay cheap.
    """
    if h < 1 or exponent < 1:
        raise DomainError("divides_p_power_minus_one: h and exponent must be >= 1")
    if math.gcd(h, p) != 1:
        raise DomainError(f"divides_p_power_minus_one: gcd({h}, {p}) != 1")
    return exponent % mult_order(p, h) == 0


def gcd_p_power_minus_one(a: int, p: int, exponent: int) -> int:
    """gcd(a, p^exponent - 1), with p^exponent reduced modulo a first."""
    if a < 1 or exponent < 1:
        raise DomainError("gcd_p_power_minus_one: a and exponent must be >= 1")
    if a == 1:
        return 1
    return math.gcd(a, (pow(p, exponent, a) - 1) % a)
