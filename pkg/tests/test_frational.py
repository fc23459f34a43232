import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from pdring.divisor import deg_floor_neg, is_rational_singularity, iter_normalized, nd, period
from pdring.errors import DomainError, PreconditionError
from pdring.frational import (candidate_primes, criterion_value, f_rational_full_scan,
                              failing_primes, is_f_rational, is_prime, prime_factors,
                              primes_up_to, sweep)

PRIMES = primes_up_to(50)


def oracle_value(d, p, n):
    """deg [-pnD] + deg (B_n)_red straight from the divisor coefficients."""
    coeff = {"P0": F(d.s)}
    coeff.update({f"P{i}": -a for i, a in enumerate(d.fractions, 1)})
    def rd(m):
        return {k: math.floor(m * v) for k, v in coeff.items()}
    small, big = rd(-n), rd(-p * n)
    b = {k: -p * small[k] + big[k] for k in coeff}
    assert all(v >= 0 for v in b.values())
    return sum(big.values()) + sum(1 for v in b.values() if v), b


def rational_box(max_s=3, max_points=4, max_den=7):
    for d in iter_normalized(max_s, max_points, max_den):
        if is_rational_singularity(d).is_rational:
            yield d


def test_primes():
    assert primes_up_to(20) == [2, 3, 5, 7, 11, 13, 17, 19]
    assert not is_prime(1) and not is_prime(9) and is_prime(2)
    assert prime_factors(360) == [2, 3, 5]
    assert prime_factors(1) == []


def test_criterion_examples():
    rec = criterion_value(nd(2, "3/5", "4/5", "1/2"), 5, 1)
    assert (rec.deg_neg, rec.support_size, rec.value) == (-1, 3, 2)
    rec = criterion_value(nd(2, "1/3", "1/3", "1/3"), 5, 1)
    assert (rec.deg_neg, rec.support_size, rec.value) == (-7, 3, -4)
    d = nd(2, "3/5", "4/5", "1/2")
    rec = criterion_value(d, 3, 20)
    assert rec.support_size == 0 and rec.value == -3 * 20 * d.degree
    with pytest.raises(DomainError):
        criterion_value(d, 4, 1)
    with pytest.raises(DomainError):
        criterion_value(d, 2, 0)


def test_support_strict_case():
    # the point with coefficient +2/3 normalizes to the fraction 1/3
    rec = criterion_value(nd(1, "1/3"), 2, 1)
    assert rec.support_size == 0
    assert rec.support_size < 1  # one point with n a_i not integral
    assert criterion_value(nd(2, "2/3"), 2, 1).support_size == 1


@settings(max_examples=150)
@given(st.integers(1, 4),
       st.lists(st.fractions(min_value=F(1, 12), max_value=F(11, 12), max_denominator=12)
                .filter(lambda a: 0 < a < 1), max_size=5),
       st.sampled_from([2, 3, 5, 7, 11]), st.integers(1, 30))
def test_criterion_matches_oracle(s, fr, p, n):
    d = nd(s, *fr)
    rec = criterion_value(d, p, n)
    value, b = oracle_value(d, p, n)
    assert rec.value == value
    assert rec.coefficients == tuple(b[f"P{i}"] for i in range(1, d.r + 1))
    assert b["P0"] == 0
    assert rec.support_size <= sum(1 for a in d.fractions if (n * a).denominator != 1)
    assert rec.deg_neg == deg_floor_neg(d, p * n)


def test_periodicity_on_box():
    for d in list(rational_box(3, 3, 6))[::7]:
        N = period(d)
        for p in (2, 3, 5):
            for n in range(1, 2 * N + 1):
                a, b = criterion_value(d, p, n), criterion_value(d, p, n + N)
                assert a.coefficients == b.coefficients
                assert b.value == a.value - p * N * d.degree


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
def test_ex1_not_f_rational(p):
    d = nd(2, F(p + 1, 2 * p), F(p - 1, p), "1/2")
    v = is_f_rational(d, p)
    assert not v.is_f_rational
    assert v.witness.n == 1 and v.witness.value == 2


def test_examples():
    v = is_f_rational(nd(2, "3/5", "4/5", "1/2"), 5)
    assert not v.is_f_rational and v.witness.n == 1
    for p in (2, 3, 5, 7, 11):
        assert is_f_rational(nd(2, "1/3", "1/3", "1/3"), p).is_f_rational
    with pytest.raises(PreconditionError):
        is_f_rational(nd(2, "1/2", "1/2", "1/2", "1/3"), 5)
    with pytest.raises(DomainError):
        is_f_rational(nd(3), 6)


def test_failing_primes():
    # candidates are 2 and 5; both fail with the criterion as stated
    d = nd(2, "3/5", "4/5", "1/2")
    assert candidate_primes(d) == [2, 5]
    assert failing_primes(d) == {2, 5}
    rec = is_f_rational(d, 2).witness
    assert (rec.n, rec.deg_neg, rec.support_size, rec.value) == (1, -1, 3, 2)
    assert failing_primes(nd(2, "1/3", "1/3", "1/3")) == frozenset()
    assert failing_primes(nd(4, "1/2", "1/2", "1/2", "1/2")) == frozenset()


def test_failing_primes_are_exact():
    for d in list(rational_box(3, 4, 6))[::5]:
        fails = failing_primes(d)
        assert fails == {p for p in PRIMES if not is_f_rational(d, p).is_f_rational}


def test_fast_and_full_scan_agree():
    for d in list(rational_box(3, 4, 7))[::3]:
        for p in (2, 3, 5, 7):
            a, b = is_f_rational(d, p), f_rational_full_scan(d, p)
            assert a.outcome == b.outcome
            assert a.witness == b.witness


def test_theorems_on_box():
    for d in rational_box(3, 4, 7):
        cands = set(candidate_primes(d))
        for p, v in sweep(d, PRIMES[:8]).items():
            if p not in cands or d.s >= d.r:
                assert v.is_f_rational
            if d.degree >= 1 and p >= d.r - 1:
                assert v.is_f_rational
            if not v.is_f_rational:
                assert d.s + 1 == d.r


@pytest.mark.parametrize("n", range(1, 9))
def test_neg_degree_half_half(n):
    d = nd(2, "1/2", "1/2", F(n, n + 1))
    for l in range(1, 8 * (n + 1)):
        assert deg_floor_neg(d, l) <= (-1 if l % 2 == 0 else -2)


@pytest.mark.parametrize("fr,exceptions", [
    (("1/2", "2/3", "3/4"), {2, 3, 4, 6, 8, 12}),
    (("1/2", "2/3", "4/5"), {2, 3, 4, 5, 6, 8, 9, 10, 12, 14, 15, 18, 20, 24, 30}),
])
def test_neg_degree_exceptional(fr, exceptions):
    d = nd(2, *fr)
    above = {l for l in range(1, 3 * period(d) + 1) if deg_floor_neg(d, l) > -2}
    assert above == exceptions


@pytest.mark.parametrize("n", range(1, 9))
@pytest.mark.parametrize("base,k", [(("1/3", "2/3"), 3), (("1/4", "3/4"), 4)])
def test_neg_degree_families(base, k, n):
    d = nd(2, *base, F(n, n + 1))
    for l in range(1, 8 * k * (n + 1)):
        assert deg_floor_neg(d, l) <= (-1 if l % k == 0 else -2)
