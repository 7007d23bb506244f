"""Isomorphism-class counts of extensions over a base-field profile.

Three evaluators:

* iso_count_ef: classes with prescribed ramification e and inertia f,
  as a sum over towers split at each cyclotomic level;
* iso_count_total: classes with prescribed degree n;
* tame_iso_count: the much simpler closed form available when p does
  not divide e.

Each evaluator sums exact terms and divides once at the end (by f,
respectively n); a non-integral result is impossible for correct code
and raises ConsistencyError rather than being rounded.  The *_terms
variants also return the individual summands in a fixed iteration
order (ascending level, then ascending divisors) for breakdown output.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import NamedTuple

from . import arith, counting
from .errors import ConsistencyError, DomainError
from .profiles import BaseFieldProfile


class TermEF(NamedTuple):
    """One summand of the (e, f) class count, before the leading 1/f."""

    i: int
    e1: int
    f1: int
    e2: int
    f2: int
    term: Fraction


class TermTotal(NamedTuple):
    """One summand of the degree-n class count, before the leading 1/n."""

    i: int
    d: int
    e1: int
    f1: int
    term: int


class TermTame(NamedTuple):
    """One summand of the tame class count, before the leading 1/f."""

    i: int
    term: int


def iso_count_ef_terms(K: BaseFieldProfile, e: int, f: int) -> tuple[int, list[TermEF]]:
    """Class count for ramification e and inertia f, with its summands.

    Sums over levels 0 <= i <= v_p(e) and splittings e = e1*e2*e_i,
    f = f1*f2*f_i subject to the prime-to-p part of e2 dividing
    p^{f0*f_i*f1} - 1.  Each term is
    phi(h2)*phi(f2)/e_i * sigma_krasner(p, N1, v_p(e1)) * delta_count(p, N1, v_p(e2), i)
    with N1 = n0*e_i*f_i*e1*f1.  The profile must cover levels 0..v_p(e).
    """
    if e < 1 or f < 1:
        raise DomainError("iso_count_ef: e and f must be >= 1")
    p = K.p
    s, _ = arith.p_valuation(e, p)
    K.level(s)  # hard requirement up front, never silently padded
    total = Fraction(0)
    terms: list[TermEF] = []
    for i in range(s + 1):
        e_i, f_i = K.level(i)
        if e % e_i or f % f_i:
            continue
        n_i = e_i * f_i
        for e1, e2 in arith.divisor_pairs(e // e_i):
            s1, _ = arith.p_valuation(e1, p)
            s2, h2 = arith.p_valuation(e2, p)
            weight = arith.euler_phi(h2)
            for f1, f2 in arith.divisor_pairs(f // f_i):
                if not arith.divides_p_power_minus_one(h2, p, K.f0 * f_i * f1):
                    continue
                n1 = K.n0 * n_i * e1 * f1
                term = (
                    Fraction(weight * arith.euler_phi(f2), e_i)
                    * counting.sigma_krasner(p, n1, s1)
                    * counting.delta_count(p, n1, s2, i)
                )
                total += term
                terms.append(TermEF(i, e1, f1, e2, f2, term))
    value = total / f
    if value.denominator != 1:
        raise ConsistencyError(f"iso_count_ef(e={e}, f={f}): non-integral result {value}")
    return int(value), terms


def iso_count_ef(K: BaseFieldProfile, e: int, f: int) -> int:
    """Number of isomorphism classes of extensions of K with ramification e
    and inertia f."""
    return iso_count_ef_terms(K, e, f)[0]


def iso_count_total_terms(K: BaseFieldProfile, n: int) -> tuple[int, list[TermTotal]]:
    """Class count for degree n, with its summands.

    Sums over levels 0 <= i <= v_p(n) and splittings n = d*e1*f1*n_i,
    where d is the degree of the cyclic top step.  Each term is
    e1 * psi(k, p^{f0*f_i*f1} - 1) * sigma_krasner(p, N1, v_p(e1))
    * delta_count(p, N1 + 1, v_p(d), i) with d = p^r*k, gcd(k, p) = 1
    and N1 = n0*n_i*e1*f1.  The profile must cover levels 0..v_p(n).
    """
    if n < 1:
        raise DomainError("iso_count_total: n must be >= 1")
    p = K.p
    t, _ = arith.p_valuation(n, p)
    K.level(t)
    total = 0
    terms: list[TermTotal] = []
    for i in range(t + 1):
        e_i, f_i = K.level(i)
        n_i = e_i * f_i
        if n % n_i:
            continue
        rest = n // n_i
        for d in arith.divisors(rest):
            r, k = arith.p_valuation(d, p)
            for e1, f1 in arith.divisor_pairs(rest // d):
                s1, _ = arith.p_valuation(e1, p)
                n1 = K.n0 * n_i * e1 * f1
                term = (
                    e1
                    * counting.psi_p_power_minus_one(k, p, K.f0 * f_i * f1)
                    * counting.sigma_krasner(p, n1, s1)
                    * counting.delta_count(p, n1 + 1, r, i)
                )
                total += term
                terms.append(TermTotal(i, d, e1, f1, term))
    q, rem = divmod(total, n)
    if rem:
        raise ConsistencyError(f"iso_count_total(n={n}): sum {total} not divisible by {n}")
    return q, terms


def iso_count_total(K: BaseFieldProfile, n: int) -> int:
    """Number of isomorphism classes of extensions of K of degree n."""
    return iso_count_total_terms(K, n)[0]


def tame_iso_count_terms(
    K: BaseFieldProfile, e: int, f: int, cross_check: bool = False
) -> tuple[int, list[TermTame]]:
    """Tame class count (p not dividing e), with its summands.

    (1/f) * sum_{i=0}^{f-1} gcd(e, p^{f0*gcd(f,i)} - 1), where gcd(f, 0)
    is f.  With cross_check=True the equivalent divisor-sum form
    (1/f) * sum_{f1*f2=f} phi(f2) * gcd(e, p^{f0*f1} - 1) is evaluated
    as well and any disagreement raises ConsistencyError; release-style
    calls compute the gcd-sum form only.
    """
    if e < 1 or f < 1:
        raise DomainError("tame_iso_count: e and f must be >= 1")
    p = K.p
    s, _ = arith.p_valuation(e, p)
    if s:
        raise DomainError(f"tame_iso_count requires p not dividing e; {p} | {e}")
    total = 0
    terms: list[TermTame] = []
    for i in range(f):
        g = arith.gcd_p_power_minus_one(e, p, K.f0 * math.gcd(f, i))
        total += g
        terms.append(TermTame(i, g))
    if cross_check:
        alt = sum(
            arith.euler_phi(f2) * arith.gcd_p_power_minus_one(e, p, K.f0 * f1)
            for f1, f2 in arith.divisor_pairs(f)
        )
        if alt != total:
            raise ConsistencyError(
                f"tame_iso_count(e={e}, f={f}): gcd-sum {total} != divisor-sum {alt}"
            )
    q, rem = divmod(total, f)
    if rem:
        raise ConsistencyError(f"tame_iso_count(e={e}, f={f}): sum {total} not divisible by {f}")
    return q, terms


def tame_iso_count(K: BaseFieldProfile, e: int, f: int, cross_check: bool = False) -> int:
    """Number of isomorphism classes with ramification e and inertia f when
    p does not divide e."""
    return tame_iso_count_terms(K, e, f, cross_check=cross_check)[0]
