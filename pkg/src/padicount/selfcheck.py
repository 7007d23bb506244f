"""Self-verification suites.

Every closed form in the package is replayed here against an independent
brute-force oracle or a cross-formula identity:

* lemma: the chain-count identity on a zoo of Cayley tables;
* pi-oracle / psi-oracle: element-order counts by full enumeration;
* delta-telescoping: the layered differences re-sum to the element count;
* dual-oracle: cyclic-extension counts against cyclic-subgroup
  enumeration in the dual-side product group;
* cyclic-decomposition: per-(e, f) cyclic counts sum to the total;
* remark-equivalence: the tame closed form against the general evaluator;
* theorem-consistency: degree totals against sums over (e, f);
* sandwich: class counts versus extension counts in a fixed closure;
* golden: frozen hand-derived values.

The suites run on a "full" grid (the acceptance grid) or a reduced
"small" grid.  Failures carry a printable counterexample; an internal
exactness violation (ConsistencyError) raised while evaluating a check
is itself recorded as a failure, so a corrupted build still produces an
orderly failing report instead of a crash.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import arith, counting, oracles, theorems
from .errors import ConsistencyError, DomainError
from .profiles import CyclicBaseProfile, qp_profile

DEFAULT_MAX_ABELIAN_ORDER = 1_000_000
DEFAULT_MAX_TABLE_ORDER = 48


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    fail_count: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.fail_count == 0

    def record(self, passed: bool, message: str) -> None:
        self.checks += 1
        if not passed:
            self.fail_count += 1
            if len(self.failures) < 5:
                self.failures.append(message)

    def run(self, fn) -> None:
        """Run one check.  fn returns (passed, message); message may be ""
        on success.  A ConsistencyError inside fn is a failed check."""
        try:
            passed, message = fn()
        except ConsistencyError as exc:
            passed, message = False, f"internal exactness violation: {exc}"
        self.record(passed, message)


def _partitions(k: int):
    if k == 0:
        yield ()
        return
    for first in range(k, 0, -1):
        for rest in _partitions(k - first):
            if not rest or first >= rest[0]:
                yield (first,) + rest


def abelian_factor_lists(bound: int) -> list[tuple[int, ...]]:
    """Elementary-divisor factor lists of every non-cyclic abelian group
    of order <= bound, one per isomorphism class."""
    out = []
    for n in range(4, bound + 1):
        primes = arith.prime_factors(n)
        exps = []
        rest = n
        for p in primes:
            a = 0
            while rest % p == 0:
                rest //= p
                a += 1
            exps.append(a)
        shapes = [()]
        for p, a in zip(primes, exps):
            shapes = [
                shape + tuple(p**part for part in partition)
                for shape in shapes
                for partition in _partitions(a)
            ]
        for shape in shapes:
            if len(shape) > len(primes):  # some prime split in >= 2 parts: non-cyclic
                out.append(tuple(sorted(shape, reverse=True)))
    return sorted(set(out), key=lambda t: (len(t), t))


def lemma_group_zoo(max_table_order: int, small: bool = False) -> list[oracles.GroupTable]:
    """Cayley tables for the chain-count suite, filtered by the order cap."""
    cyclic_max = 10 if small else 24
    abelian_max = 16 if small else 48
    dihedral_max = 6 if small else 12
    groups = []
    for n in range(1, cyclic_max + 1):
        if n <= max_table_order:
            groups.append(oracles.builtin_group("cyclic", n))
    for factors in abelian_factor_lists(min(abelian_max, max_table_order)):
        groups.append(oracles.builtin_group("abelian", *factors))
    for n in range(3, dihedral_max + 1):
        if 2 * n <= max_table_order:
            groups.append(oracles.builtin_group("dihedral", n))
    named = [oracles.builtin_group("quaternion8"), oracles.builtin_group("symmetric", 3)]
    if not small:
        named.append(oracles.builtin_group("symmetric", 4))
    named.append(oracles.builtin_group("alternating", 4))
    groups.extend(g for g in named if g.order <= max_table_order)
    return groups


def lemma_suite(max_table_order: int = DEFAULT_MAX_TABLE_ORDER, small: bool = False) -> SuiteResult:
    result = SuiteResult("lemma")
    for G in lemma_group_zoo(max_table_order, small=small):
        for n in arith.divisors(G.order):

            def check(G=G, n=n):
                report = oracles.lemma_check(G, n, cap=max_table_order)
                return report.equal, (
                    f"chain-count identity fails for {G.name}, n={n}: "
                    f"classes={report.lhs}, weighted chains/n={report.rhs}"
                )

            result.run(check)
    return result


def pi_oracle_suite(
    max_abelian_order: int = DEFAULT_MAX_ABELIAN_ORDER, small: bool = False
) -> SuiteResult:
    result = SuiteResult("pi-oracle")
    top = 2 if small else 3
    for p in (2, 3):
        for m in range(1, top + 1):
            for r in range(1, top + 1):
                for xi in range(0, top + 1):
                    if p ** (m * r + min(xi, r)) > max_abelian_order:
                        continue
                    G = oracles.AbelianGroup(
                        (p**r,) * m + (p ** min(xi, r),), cap=max_abelian_order
                    )
                    hist = G.order_histogram()
                    for s in range(0, r + 1):

                        def check(p=p, m=m, s=s, xi=xi, r=r, hist=hist):
                            got = counting.pi_count(p, m, s, xi)
                            want = hist.get(p**s, 0)
                            return got == want, (
                                f"pi_count({p},{m},{s},{xi}) = {got} but enumeration "
                                f"with r={r} finds {want}"
                            )

                        result.run(check)
    return result


def psi_oracle_suite(small: bool = False) -> SuiteResult:
    result = SuiteResult("psi-oracle")
    bound = 12 if small else 30
    for u in range(1, bound + 1):
        for v in range(1, bound + 1):

            def check(u=u, v=v):
                got = counting.psi_count(u, v)
                want = oracles.element_order_count(oracles.AbelianGroup((u, v)), u)
                return got == want, (
                    f"psi_count({u},{v}) = {got} but enumeration of C_{u} x C_{v} finds {want}"
                )

            result.run(check)
    return result


def delta_telescoping_suite() -> SuiteResult:
    result = SuiteResult("delta-telescoping")
    for p in (2, 3, 5):
        for m in range(1, 4):
            for s in range(0, 4):
                for j in range(0, s + 1):

                    def check(p=p, m=m, s=s, j=j):
                        partial = sum(counting.delta_count(p, m, s, i) for i in range(j + 1))
                        want = counting.pi_count(p, m, s, j)
                        return partial == want, (
                            f"delta rows (p={p},m={m},s={s}) sum to {partial} "
                            f"through i={j}, pi gives {want}"
                        )

                    result.run(check)
                for xi in range(s, s + 3):

                    def check(p=p, m=m, s=s, xi=xi):
                        full = sum(counting.delta_count(p, m, s, i) for i in range(s + 1))
                        want = counting.pi_count(p, m, s, xi)
                        return full == want, (
                            f"delta rows (p={p},m={m},s={s}) sum to {full}, "
                            f"pi with xi={xi} gives {want}"
                        )

                    result.run(check)
    return result


def _cyclic_profiles() -> list[CyclicBaseProfile]:
    profiles = []
    for p in (2, 3):
        for m, f_abs in ((1, 1), (2, 1), (2, 2)):
            for xi in ((1,) if p == 2 else (0, 1)):
                profiles.append(CyclicBaseProfile(p, m, f_abs, xi))
    return profiles


def dual_oracle_suite(
    max_abelian_order: int = DEFAULT_MAX_ABELIAN_ORDER, small: bool = False
) -> SuiteResult:
    result = SuiteResult("dual-oracle")
    d_max = 8 if small else 12
    for F in _cyclic_profiles():
        for d in range(1, d_max + 1):
            Ghat = oracles.dual_group(F, d, cap=max_abelian_order)
            if Ghat.order > max_abelian_order:
                continue
            for e, f in arith.divisor_pairs(d):

                def check(F=F, Ghat=Ghat, d=d, e=e, f=f):
                    got = counting.cyclic_count_ef(F, e, f)
                    want = oracles.dual_cyclic_subgroup_count(Ghat, d, f)
                    return got == want, (
                        f"cyclic_count_ef(p={F.p},m={F.m},f_abs={F.f_abs},xi={F.xi}; "
                        f"e={e},f={f}) = {got} but subgroup enumeration finds {want}"
                    )

                result.run(check)
    return result


def cyclic_decomposition_suite(small: bool = False) -> SuiteResult:
    result = SuiteResult("cyclic-decomposition")
    d_max = 12 if small else 24
    for F in _cyclic_profiles():
        for d in range(1, d_max + 1):

            def check(F=F, d=d):
                parts = sum(counting.cyclic_count_ef(F, e, f) for e, f in arith.divisor_pairs(d))
                total = counting.cyclic_count_total(F, d)
                return parts == total, (
                    f"sum of cyclic_count_ef over ef={d} is {parts}, "
                    f"cyclic_count_total gives {total} "
                    f"(p={F.p},m={F.m},f_abs={F.f_abs},xi={F.xi})"
                )

            result.run(check)
    return result


def remark_equivalence_suite(small: bool = False) -> SuiteResult:
    result = SuiteResult("remark-equivalence")
    primes = (3, 5) if small else (3, 5, 7)
    e_max = 6 if small else 10
    f_max = 4 if small else 6
    for p in primes:
        K = qp_profile(p, 0)
        for e in range(1, e_max + 1):
            if e % p == 0:
                continue
            for f in range(1, f_max + 1):

                def check(p=p, K=K, e=e, f=f):
                    tame = theorems.tame_iso_count(K, e, f, cross_check=True)
                    general = theorems.iso_count_ef(K, e, f)
                    return tame == general, (
                        f"tame_iso_count(Q_{p},e={e},f={f}) = {tame} "
                        f"but iso_count_ef gives {general}"
                    )

                result.run(check)
    return result


def theorem_consistency_suite(small: bool = False) -> SuiteResult:
    result = SuiteResult("theorem-consistency")
    n_max = 8 if small else 12
    for p in (2, 3):
        for n in range(1, n_max + 1):

            def check(p=p, n=n):
                K = qp_profile(p, arith.p_valuation(n, p).s)
                total = theorems.iso_count_total(K, n)
                parts = sum(theorems.iso_count_ef(K, e, f) for e, f in arith.divisor_pairs(n))
                return total == parts, (
                    f"iso_count_total(Q_{p},n={n}) = {total} but the (e,f) cells sum to {parts}"
                )

            result.run(check)
    return result


def sandwich_suite(small: bool = False) -> SuiteResult:
    result = SuiteResult("sandwich")
    n_max = 8 if small else 12

    def cell_check(p, K, e, f):
        def check():
            classes = theorems.iso_count_ef(K, e, f)
            fields = counting.krasner_count(counting.KrasnerQuery(p, K.n0, e, f))
            return classes <= fields <= e * f * classes, (
                f"sandwich fails over Q_{p} at (e={e},f={f}): "
                f"classes={classes}, fields={fields}"
            )

        return check

    for p in (2, 3):
        for n in range(1, n_max + 1):
            K = qp_profile(p, arith.p_valuation(n, p).s)
            for e, f in arith.divisor_pairs(n):
                result.run(cell_check(p, K, e, f))
    primes = (3, 5) if small else (3, 5, 7)
    e_max = 6 if small else 10
    f_max = 4 if small else 6
    for p in primes:
        K = qp_profile(p, 0)
        for e in range(1, e_max + 1):
            if e % p == 0:
                continue
            for f in range(1, f_max + 1):
                result.run(cell_check(p, K, e, f))
    return result


def golden_suite() -> SuiteResult:
    result = SuiteResult("golden")
    cases = [
        ("N(Q_2,e=2,f=1)", lambda: counting.krasner_count(counting.KrasnerQuery(2, 1, 2, 1)), 6),
        ("N(Q_3,e=3,f=1)", lambda: counting.krasner_count(counting.KrasnerQuery(3, 1, 3, 1)), 21),
        ("I(Q_2,e=2,f=1)", lambda: theorems.iso_count_ef(qp_profile(2, 1), 2, 1), 6),
        ("I(Q_3,e=3,f=1)", lambda: theorems.iso_count_ef(qp_profile(3, 1), 3, 1), 9),
        ("I(Q_2,n=2)", lambda: theorems.iso_count_total(qp_profile(2, 1), 2), 7),
        ("I(Q_3,n=3)", lambda: theorems.iso_count_total(qp_profile(3, 1), 3), 10),
        ("I(Q_5,e=2,f=1)", lambda: theorems.tame_iso_count(qp_profile(5, 0), 2, 1), 2),
        ("C(Q_2,e=2,f=1)", lambda: counting.cyclic_count_ef(CyclicBaseProfile(2, 1, 1, 1), 2, 1), 6),
        ("C(Q_2,d=2)", lambda: counting.cyclic_count_total(CyclicBaseProfile(2, 1, 1, 1), 2), 7),
        ("C(Q_3,d=3)", lambda: counting.cyclic_count_total(CyclicBaseProfile(3, 1, 1, 0), 3), 4),
    ]
    for label, compute, want in cases:

        def check(label=label, compute=compute, want=want):
            got = compute()
            return got == want, f"{label} = {got}, expected {want}"

        result.run(check)
    return result


def run_selfcheck(
    grid: str = "full",
    max_abelian_order: int = DEFAULT_MAX_ABELIAN_ORDER,
    max_table_order: int = DEFAULT_MAX_TABLE_ORDER,
) -> list[SuiteResult]:
    """Run every suite and return the per-suite results."""
    if grid not in ("small", "full"):
        raise DomainError(f"unknown grid {grid!r}, expected 'small' or 'full'")
    small = grid == "small"
    return [
        lemma_suite(max_table_order=max_table_order, small=small),
        pi_oracle_suite(max_abelian_order=max_abelian_order, small=small),
        psi_oracle_suite(small=small),
        delta_telescoping_suite(),
        dual_oracle_suite(max_abelian_order=max_abelian_order, small=small),
        cyclic_decomposition_suite(small=small),
        remark_equivalence_suite(small=small),
        theorem_consistency_suite(small=small),
        sandwich_suite(small=small),
        golden_suite(),
    ]
