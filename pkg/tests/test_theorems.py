from fractions import Fraction

import pytest

from padicount import arith, counting, theorems
from padicount.counting import KrasnerQuery, cyclic_count_ef, krasner_count
from padicount.errors import ConsistencyError, DomainError, ProfileTooShortError
from padicount.profiles import CyclicBaseProfile, qp_profile
from padicount.theorems import (
    iso_count_ef,
    iso_count_ef_terms,
    iso_count_total,
    iso_count_total_terms,
    tame_iso_count,
    tame_iso_count_terms,
)


def test_unramified_classes_are_unique():
    for p in (2, 3, 5):
        K = qp_profile(p, 0)
        for f in range(1, 6):
            assert iso_count_ef(K, 1, f) == 1


def test_q2_ramified_quadratics():
    value, terms = iso_count_ef_terms(qp_profile(2, 1), 2, 1)
    assert value == 6
    # fixed iteration order: (i, e1, e2) = (0,1,2), (0,2,1), (1,1,2), (1,2,1)
    assert [(t.i, t.e1, t.e2) for t in terms] == [(0, 1, 2), (0, 2, 1), (1, 1, 2), (1, 2, 1)]
    assert [t.term for t in terms] == [1, 3, 2, 0]


def test_q3_ramified_cubics():
    # chain identity at prime degree: (21 + 2*3) / 3
    assert iso_count_ef(qp_profile(3, 1), 3, 1) == 9


def test_iso_count_ef_quartics_over_q2():
    K = qp_profile(2, 2)
    assert iso_count_ef(K, 4, 1) == 48
    assert iso_count_ef(K, 2, 2) == 10


def test_iso_count_total_examples():
    for p in (2, 3, 5):
        assert iso_count_total(qp_profile(p, 0), 1) == 1
    assert iso_count_total(qp_profile(2, 1), 2) == 7
    assert iso_count_total(qp_profile(3, 1), 3) == 10


def test_iso_count_total_classical_values():
    # classical class counts: 59 quartic 2-adic fields, 26 quintic 5-adic fields
    assert iso_count_total(qp_profile(2, 2), 4) == 59
    assert iso_count_total(qp_profile(5, 1), 5) == 26


def test_breakdown_terms_resum():
    K = qp_profile(2, 3)
    value, terms = iso_count_ef_terms(K, 8, 2)
    assert sum(t.term for t in terms) == Fraction(value * 2)
    value, terms = iso_count_total_terms(K, 8)
    assert sum(t.term for t in terms) == value * 8


def test_profile_too_short_is_a_hard_error():
    with pytest.raises(ProfileTooShortError):
        iso_count_ef(qp_profile(2, 0), 2, 1)
    with pytest.raises(ProfileTooShortError):
        iso_count_total(qp_profile(3, 0), 3)


def test_tame_iso_count_examples():
    assert tame_iso_count(qp_profile(5, 0), 2, 1) == 2
    assert tame_iso_count(qp_profile(2, 0), 3, 2) == 2  # (gcd(3,3) + gcd(3,1)) / 2
    for p in (2, 3, 7):
        assert tame_iso_count(qp_profile(p, 0), 1, 1) == 1


def test_tame_rejects_wild_e():
    with pytest.raises(DomainError):
        tame_iso_count(qp_profile(3, 0), 6, 1)


def test_tame_terms_and_cross_check():
    K = qp_profile(2, 0)
    value, terms = tame_iso_count_terms(K, 3, 2, cross_check=True)
    assert value == 2
    assert [t.term for t in terms] == [3, 1]  # gcd(3, 2^gcd(2,0)-1), gcd(3, 2^gcd(2,1)-1)


def test_tame_matches_general_evaluator():
    for p in (3, 5, 7):
        K = qp_profile(p, 0)
        for e in range(1, 11):
            if e % p == 0:
                continue
            for f in range(1, 7):
                assert tame_iso_count(K, e, f, cross_check=True) == iso_count_ef(K, e, f)


def test_total_equals_sum_over_ef_cells():
    for p in (2, 3):
        for n in range(1, 9):
            K = qp_profile(p, arith.p_valuation(n, p).s)
            cells = sum(iso_count_ef(K, e, f) for e, f in arith.divisor_pairs(n))
            assert iso_count_total(K, n) == cells


def test_prime_degree_chain_identity():
    # at prime degree q, every tower is trivial or cyclic of degree q, so
    # classes = (krasner + phi(q) * cyclic) / q
    for p, xi in ((2, 1), (3, 0), (5, 0)):
        F = CyclicBaseProfile(p, 1, 1, xi)
        for q in (2, 3, 5):
            K = qp_profile(p, arith.p_valuation(q, p).s)
            for e, f in arith.divisor_pairs(q):
                fields = krasner_count(KrasnerQuery(p, 1, e, f))
                cyclic = cyclic_count_ef(F, e, f)
                expected, rem = divmod(fields + (q - 1) * cyclic, q)
                assert rem == 0
                assert iso_count_ef(K, e, f) == expected, (p, e, f)


def test_sandwich_bound_small():
    for p in (2, 3):
        for n in range(1, 9):
            K = qp_profile(p, arith.p_valuation(n, p).s)
            for e, f in arith.divisor_pairs(n):
                classes = iso_count_ef(K, e, f)
                fields = krasner_count(KrasnerQuery(p, 1, e, f))
                assert classes <= fields <= e * f * classes


def _ramified_quadratic_over_q3():
    # base with a nontrivial cyclotomic tower: adjoining the cube roots of
    # unity is unramified quadratic, level 2 has both e and f nontrivial
    from padicount.profiles import BaseFieldProfile, CyclotomicDatum

    return BaseFieldProfile(3, 2, 1, (CyclotomicDatum(1, 1, 2), CyclotomicDatum(2, 3, 2)))


def _unramified_quadratic_over_q2():
    from padicount.profiles import BaseFieldProfile, CyclotomicDatum

    return BaseFieldProfile(
        2, 1, 2,
        (CyclotomicDatum(1, 1, 1), CyclotomicDatum(2, 2, 1), CyclotomicDatum(3, 4, 1)),
    )


def test_nontrivial_base_fields_frozen_values():
    from padicount.profiles import cyclic_profile_of, validate

    K1 = _ramified_quadratic_over_q3()
    K2 = _unramified_quadratic_over_q2()
    assert validate(K1) == [] and validate(K2) == []
    assert cyclic_profile_of(K1) == CyclicBaseProfile(3, 2, 1, 0)
    assert cyclic_profile_of(K2) == CyclicBaseProfile(2, 2, 2, 1)
    # Kummer oracle: |K^x / squares| - 1 quadratic extensions, all Galois
    assert iso_count_total(K1, 2) == 3
    assert iso_count_total(K2, 2) == 15
    assert iso_count_ef(K2, 2, 1) == 14  # 15 minus the unramified one
    # chain identity at degree 3 over K1: (75 + 2*12) / 3
    assert iso_count_ef(K1, 3, 1) == 33
    # regression anchors, each confirmed by two independent evaluation routes
    assert iso_count_total(K1, 6) == 615
    assert iso_count_total(K2, 4) == 503


def test_nontrivial_base_fields_cross_checks():
    from padicount.profiles import cyclic_profile_of

    for K in (_ramified_quadratic_over_q3(), _unramified_quadratic_over_q2()):
        F = cyclic_profile_of(K)
        for q in (2, 3, 5):
            for e, f in arith.divisor_pairs(q):
                fields = krasner_count(KrasnerQuery(K.p, K.n0, e, f))
                cyclic = cyclic_count_ef(F, e, f)
                expected, rem = divmod(fields + (q - 1) * cyclic, q)
                assert rem == 0
                assert iso_count_ef(K, e, f) == expected, (K.p, e, f)
        for n in range(1, 9):
            cells = sum(iso_count_ef(K, e, f) for e, f in arith.divisor_pairs(n))
            assert iso_count_total(K, n) == cells, (K.p, n)
        for e in range(1, 8):
            if e % K.p == 0:
                continue
            for f in range(1, 5):
                assert tame_iso_count(K, e, f, cross_check=True) == iso_count_ef(K, e, f)


def test_division_guards_fire_on_corrupted_inputs(monkeypatch):
    # breaking an ingredient must surface as ConsistencyError, never a rounded result
    real_phi = arith.euler_phi
    monkeypatch.setattr(arith, "euler_phi", lambda n: 2 if n == 2 else real_phi(n))
    with pytest.raises(ConsistencyError):
        theorems.iso_count_ef(qp_profile(5, 0), 1, 2)


def test_cyclic_division_guard_fires(monkeypatch):
    monkeypatch.setattr(counting, "pi_count", lambda p, m, s, xi: 3)
    with pytest.raises(ConsistencyError):
        counting.cyclic_count_ef(CyclicBaseProfile(3, 1, 1, 0), 3, 1)
