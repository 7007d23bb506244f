"""Closed-form counts: Krasner extension counts and cyclic-extension counts.

All arithmetic is exact; no floating point is used anywhere.  Powers pass
through a configurable magnitude guard that turns runaway inputs into a
clean MagnitudeError instead of exhausting memory.  Every division these
formulas perform is checked for exactness; a remainder means the
implementation itself is wrong, so it raises ConsistencyError.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

from . import arith
from .errors import ConsistencyError, DomainError, MagnitudeError
from .profiles import CyclicBaseProfile

DEFAULT_MAX_BITS = 1 << 20
MAX_BITS_ENV = "PADICOUNT_MAX_BITS"


def magnitude_bits() -> int:
    """Current bit-length ceiling for any computed power."""
    raw = os.environ.get(MAX_BITS_ENV)
    if raw is None:
        return DEFAULT_MAX_BITS
    try:
        value = int(raw)
    except ValueError:
        raise DomainError(f"{MAX_BITS_ENV} must be a positive integer, got {raw!r}") from None
    if value < 1:
        raise DomainError(f"{MAX_BITS_ENV} must be a positive integer, got {raw!r}")
    return value


def guarded_power(base: int, exponent: int) -> int:
    """base ** exponent, refused once the result would pass the bit guard."""
    if exponent < 0:
        raise DomainError(f"guarded_power: exponent {exponent} must be >= 0")
    if base >= 2 and exponent * math.log2(base) > magnitude_bits():
        raise MagnitudeError(
            f"{base}^{exponent} exceeds the magnitude limit of {magnitude_bits()} bits"
        )
    return base**exponent


def sigma_krasner(p: int, N: int, s: int) -> int:
    """The ramified part of the Krasner count.

    sum_{i=0}^{s} p^i * (p^{eps(i)*N} - p^{eps(i-1)*N}), where eps(0) = 0,
    eps(i) = 1/p + ... + 1/p^i, and the i = -1 power contributes 0.  Each
    exponent is evaluated exactly as (N / p^i) * (1 + p + ... + p^{i-1}),
    which is integral because p^s must divide N.
    """
    if N < 1:
        raise DomainError("sigma_krasner: N must be >= 1")
    if s < 0:
        raise DomainError("sigma_krasner: s must be >= 0")
    if not arith.is_prime(p):
        raise DomainError(f"sigma_krasner: p = {p} is not prime")
    if N % p**s:
        raise DomainError(f"sigma_krasner: p^s = {p**s} must divide N = {N}")
    total = 0
    prev = 0
    for i in range(s + 1):
        exponent = (N // p**i) * ((p**i - 1) // (p - 1))
        cur = guarded_power(p, exponent)
        total += p**i * (cur - prev)
        prev = cur
    return total


@dataclass(frozen=True)
class KrasnerQuery:
    """Inputs for a Krasner count: ambient prime, base degree n0, target (e, f)."""

    p: int
    n0: int
    e: int
    f: int

    def __post_init__(self):
        if not arith.is_prime(self.p):
            raise DomainError(f"p = {self.p} is not prime")
        if min(self.n0, self.e, self.f) < 1:
            raise DomainError("n0, e and f must all be >= 1")


def krasner_count(q: KrasnerQuery) -> int:
    """Number of extensions with ramification e and inertia f in a fixed
    algebraic closure, fields counted individually rather than up to
    isomorphism: e * sigma_krasner(p, n0*e*f, v_p(e))."""
    s, _ = arith.p_valuation(q.e, q.p)
    return q.e * sigma_krasner(q.p, q.n0 * q.e * q.f, s)


def pi_count(p: int, m: int, s: int, xi: int) -> int:
    """Number of elements of order p^s in C_{p^r}^m x C_{p^{min(xi,r)}}.

    Independent of r as long as r >= s: 1 for s = 0, otherwise
    p^{m*s + min(xi,s)} - p^{m*(s-1) + min(xi,s-1)}.
    """
    if s == 0:
        return 1
    return guarded_power(p, m * s + min(xi, s)) - guarded_power(p, m * (s - 1) + min(xi, s - 1))


def delta_count(p: int, m: int, s: int, i: int) -> int:
    """Layered difference of pi_count in its last argument.

    Equals pi_count(p, m, s, 0) for i = 0 and
    pi_count(p, m, s, i) - pi_count(p, m, s, i-1) for i > 0, as a closed
    form: the main term plus one correction layer per cyclotomic level.
    """
    if i > s:
        return 0
    if s == 0:
        return 1
    if i == 0:
        return (guarded_power(p, m) - 1) * guarded_power(p, m * (s - 1))
    if i < s:
        return (p - 1) * (guarded_power(p, m) - 1) * guarded_power(p, m * (s - 1) + i - 1)
    return (p - 1) * guarded_power(p, m * s + s - 1)


def psi_count(u: int, v: int) -> int:
    """Number of elements of order u in C_u x C_v.

    u*(u,v) * prod over primes l | u of (1 - 1/l) when l | u/(u,v), else
    (1 - 1/l^2), evaluated as an exact integer quotient.
    """
    if u < 1 or v < 0:
        raise DomainError("psi_count: u must be >= 1 and v >= 0")
    g = math.gcd(u, v)
    w = u // g
    num = u * g
    den = 1
    for ell in arith.prime_factors(u):
        if w % ell == 0:
            num *= ell - 1
            den *= ell
        else:
            num *= ell * ell - 1
            den *= ell * ell
    q, r = divmod(num, den)
    if r:
        raise ConsistencyError(f"psi_count({u}, {v}) is not an integer")
    return q


def psi_p_power_minus_one(k: int, p: int, exponent: int) -> int:
    """psi_count(k, p^exponent - 1) without forming the second argument.

    psi only depends on its second argument through gcd with the first,
    so p^exponent - 1 is reduced modulo k up front.
    """
    if k == 1:
        return 1
    reduced = (pow(p, exponent, k) - 1) % k
    return psi_count(k, reduced)


def cyclic_count_ef(F: CyclicBaseProfile, e: int, f: int) -> int:
    """Number of cyclic extensions of F with ramification e and inertia f.

    Zero when the prime-to-p part h of e does not divide p^f_abs - 1,
    else e*phi(h)*phi(f)/phi(e*f) * pi_count(p, m, v_p(e), xi).
    """
    if e < 1 or f < 1:
        raise DomainError("cyclic_count_ef: e and f must be >= 1")
    s, h = arith.p_valuation(e, F.p)
    if not arith.divides_p_power_minus_one(h, F.p, F.f_abs):
        return 0
    num = e * arith.euler_phi(h) * arith.euler_phi(f) * pi_count(F.p, F.m, s, F.xi)
    q, r = divmod(num, arith.euler_phi(e * f))
    if r:
        raise ConsistencyError(f"cyclic_count_ef({e}, {f}): division by phi({e * f}) inexact")
    return q


def cyclic_count_total(F: CyclicBaseProfile, d: int) -> int:
    """Number of cyclic extensions of F of degree d, all (e, f) combined.

    With d = p^r * k, gcd(k, p) = 1:
    psi(k, p^f_abs - 1) / phi(d) * pi_count(p, m+1, r, xi).
    """
    if d < 1:
        raise DomainError("cyclic_count_total: d must be >= 1")
    r, k = arith.p_valuation(d, F.p)
    num = psi_p_power_minus_one(k, F.p, F.f_abs) * pi_count(F.p, F.m + 1, r, F.xi)
    q, rem = divmod(num, arith.euler_phi(d))
    if rem:
        raise ConsistencyError(f"cyclic_count_total({d}): division by phi({d}) inexact")
    return q
