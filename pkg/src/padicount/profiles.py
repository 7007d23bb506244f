"""Base-field input model: absolute invariants plus cyclotomic tower data.

A base field K is described by its prime p, absolute ramification e0 and
absolute inertia f0, together with one datum per level i >= 1 giving the
ramification and inertia of the extension K(zeta_{p^i})/K.  The tower
data is genuine extra input: it is not determined by (p, e0, f0) alone,
so for any field other than Q_p itself it must be supplied explicitly,
typically from a JSON profile file.  Only Q_p gets an auto-built profile,
which hard-codes the classical fact that adjoining the p^i-th roots of
unity to Q_p is totally ramified of degree phi(p^i).
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass

from . import arith
from .errors import DomainError, ProfileTooShortError


@dataclass(frozen=True)
class CyclotomicDatum:
    """Ramification and inertia of the level-i cyclotomic extension of the base."""

    i: int
    e: int
    f: int


@dataclass(frozen=True)
class BaseFieldProfile:
    """A base field: (p, e0, f0) and its cyclotomic tower, levels 1..depth.

    Level 0 is implicitly the trivial datum (1, 1).  Instances are dumb
    containers; semantic invariants are inspected by validate(), which
    reports violations as data instead of raising.
    """

    p: int
    e0: int
    f0: int
    cyclotomic: tuple[CyclotomicDatum, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "cyclotomic", tuple(self.cyclotomic))

    @property
    def n0(self) -> int:
        return self.e0 * self.f0

    @property
    def depth(self) -> int:
        return len(self.cyclotomic)

    def level(self, i: int) -> tuple[int, int]:
        """(e_i, f_i) for the level-i cyclotomic extension; level 0 is (1, 1)."""
        if i < 0:
            raise DomainError("level index must be >= 0")
        if i == 0:
            return (1, 1)
        if i > len(self.cyclotomic):
            raise ProfileTooShortError(
                f"profile too short: level {i} required, profile has depth {len(self.cyclotomic)}"
            )
        datum = self.cyclotomic[i - 1]
        return (datum.e, datum.f)


@dataclass(frozen=True)
class CyclicBaseProfile:
    """Base-field data consumed by the cyclic-extension counts.

    m is the absolute degree, f_abs the absolute inertia, and p^xi the
    order of the group of p-power roots of unity in the field.
    """

    p: int
    m: int
    f_abs: int
    xi: int

    def __post_init__(self):
        if not arith.is_prime(self.p):
            raise DomainError(f"p = {self.p} is not prime")
        if self.m < 1 or self.f_abs < 1:
            raise DomainError("m and f_abs must be >= 1")
        if self.m % self.f_abs:
            raise DomainError(f"f_abs = {self.f_abs} must divide m = {self.m}")
        if self.xi < 0:
            raise DomainError("xi must be >= 0")
        if self.p == 2 and self.xi < 1:
            raise DomainError("xi >= 1 required for p = 2 (-1 is a 2-power root of unity)")


def qp_profile(p: int, max_level: int) -> BaseFieldProfile:
    """Profile of Q_p itself, with cyclotomic data through max_level.

    Level i carries e_i = phi(p^i), f_i = 1: the p-power cyclotomic
    extensions of Q_p are totally ramified, for every p and every level
    (phi(2) = 1 makes level 1 trivial when p = 2).
    """
    if not arith.is_prime(p):
        raise DomainError(f"p = {p} is not prime")
    if max_level < 0:
        raise DomainError("max_level must be >= 0")
    data = tuple(
        CyclotomicDatum(i, p ** (i - 1) * (p - 1), 1) for i in range(1, max_level + 1)
    )
    return BaseFieldProfile(p, 1, 1, data)


def xi_of(profile: BaseFieldProfile) -> int:
    """Largest i whose level-i cyclotomic extension is trivial.

    Equivalently, p^xi is the order of the group of p-power roots of
    unity in the field: zeta_{p^i} lies in the field exactly when the
    level-i extension has degree 1.  The profile must extend at least
    one level past the answer; otherwise xi cannot be bounded above.
    """
    xi = 0
    for datum in profile.cyclotomic:
        if datum.e * datum.f == 1:
            xi = datum.i
        else:
            return xi
    raise ProfileTooShortError("profile too short to determine xi")


def cyclic_profile_of(profile: BaseFieldProfile) -> CyclicBaseProfile:
    """View a base field as input for the cyclic-extension counts."""
    return CyclicBaseProfile(profile.p, profile.n0, profile.f0, xi_of(profile))


def validate(profile: BaseFieldProfile) -> list[str]:
    """All invariant violations found in the profile; empty list means ok.

    Violations are data, not faults: invalid profiles can be built and
    inspected, they just describe no actual field.
    """
    problems = []
    if not arith.is_prime(profile.p):
        problems.append(f"p = {profile.p} is not prime")
    if profile.e0 < 1:
        problems.append(f"e0 = {profile.e0} must be >= 1")
    if profile.f0 < 1:
        problems.append(f"f0 = {profile.f0} must be >= 1")

    prev_e, prev_f = 1, 1
    for pos, datum in enumerate(profile.cyclotomic, start=1):
        if datum.i != pos:
            problems.append(f"levels must be consecutive from 1: found level {datum.i} at position {pos}")
            continue
        if datum.e < 1 or datum.f < 1:
            problems.append(f"level {datum.i}: e and f must be >= 1")
            continue
        if datum.e % prev_e:
            problems.append(
                f"level {datum.i}: e_{datum.i - 1} = {prev_e} does not divide e_{datum.i} = {datum.e}"
            )
        if datum.f % prev_f:
            problems.append(
                f"level {datum.i}: f_{datum.i - 1} = {prev_f} does not divide f_{datum.i} = {datum.f}"
            )
        if profile.p >= 2:
            units = profile.p ** (datum.i - 1) * (profile.p - 1)
            if units % (datum.e * datum.f):
                problems.append(
                    f"level {datum.i}: n^({datum.i}) = {datum.e * datum.f} "
                    f"does not divide |(Z/p^{datum.i})^*| = {units}"
                )
        prev_e, prev_f = datum.e, datum.f
    return problems


def load_profile(source) -> BaseFieldProfile:
    """Build a profile from a JSON file path or an already-parsed dict.

    The file holds a single object {"p", "e0", "f0", "cyclotomic":
    [{"i", "e", "f"}, ...]} with levels consecutive from 1.  The profile
    is validated; any violation raises DomainError.
    """
    if isinstance(source, (str, os.PathLike)):
        with open(source, encoding="utf-8") as fh:
            raw = json.load(fh)
    else:
        raw = source
    if not isinstance(raw, dict):
        raise DomainError("profile must be a JSON object")
    try:
        levels = tuple(
            CyclotomicDatum(int(item["i"]), int(item["e"]), int(item["f"]))
            for item in raw.get("cyclotomic", [])
        )
        profile = BaseFieldProfile(int(raw["p"]), int(raw["e0"]), int(raw["f0"]), levels)
    except (KeyError, TypeError, ValueError) as exc:
        raise DomainError(f"malformed profile: {exc}") from exc
    problems = validate(profile)
    if problems:
        raise DomainError("invalid profile: " + "; ".join(problems))
    return profile
