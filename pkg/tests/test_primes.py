from fractions import Fraction

import mpmath as mp
import numpy as np
import pytest
import sympy
from hypothesis import given, strategies as st

from bakerabc.errors import DomainError, TableRangeError
from bakerabc.primes import PrimeTable, shared_table, nth_prime_upper_bound, sieve, table_for_index, verify_lemma1
from bakerabc.report import Status
from oracles import theta_prefix

LIMIT = 200_000


@pytest.fixture(scope="module")
def table():
    return shared_table(LIMIT)


def test_sieve_matches_sympy():
    assert sieve(10 ** 5).tolist() == list(sympy.primerange(2, 10 ** 5 + 1))


@given(st.integers(1, 17_000))
def test_nth_prime(i):
    t = shared_table(LIMIT)
    assert t.nth_prime(i) == sympy.prime(i)


@given(st.fractions(min_value=0, max_value=LIMIT))
def test_prime_count(x):
    t = shared_table(LIMIT)
    assert t.prime_count(x) == sympy.primepi(int(x // 1))


@given(st.integers(1, 3000))
def test_theta_enclosure_contains_mpmath(i):
    t = shared_table(LIMIT)
    enc = t.log_primorial(i)
    with mp.workdps(60):
        want = theta_prefix(3000)[i - 1]
        lo = mp.mpf(int(enc.lower.as_integer_ratio()[0])) / enc.lower.as_integer_ratio()[1]
        hi = mp.mpf(int(enc.upper.as_integer_ratio()[0])) / enc.upper.as_integer_ratio()[1]
        assert lo - mp.mpf(10) ** -45 <= want <= hi + mp.mpf(10) ** -45


def test_primorial_exact(table):
    assert table.primorial(5) == 2 * 3 * 5 * 7 * 11
    assert table.primorial(250) == sympy.primorial(250)


def test_theta_is_monotone(table):
    lows = [table.log_primorial(i).lower for i in range(1, 2000)]
    assert all(a < b for a, b in zip(lows, lows[1:]))


@given(st.integers(1, 10 ** 6))
def test_nth_prime_upper_bound(n):
    assert nth_prime_upper_bound(n) >= sympy.prime(n)


def test_table_for_index_contains_pn():
    assert len(table_for_index(6458)) >= 6458


def test_range_errors(table):
    with pytest.raises(TableRangeError):
        table.nth_prime(len(table) + 1)
    with pytest.raises(TableRangeError):
        table.prime_count(LIMIT + 1)
    with pytest.raises(DomainError):
        PrimeTable(1)


def test_at_precision_nests(table):
    hi = table.at_precision(240)
    for i in (10, 1000, 15000):
        a, b = table.log_primorial(i), hi.log_primorial(i)
        assert a.lower <= b.lower and b.upper <= a.upper


def test_prime_estimates_small_domain(table):
    rep = verify_lemma1(table, 20_000, k_sample_cap=2000)
    assert rep.status is Status.PASS, [a.label for a in rep.failures()]
    assert len(rep.assertions) >= 7
    for a in rep.assertions:
        if a.margin is not None:
            assert Fraction(a.margin.mid) > 0 or a.margin.mid in ("inf",)


def test_exact_primorial_logs_inside_enclosures(table):
    from bakerabc.verified import enclose, log
    for i in range(1, 21):
        exact = log(enclose(sympy.primorial(i), 300))
        enc = table.log_primorial(i)
        assert enc.lower <= exact.upper and exact.lower <= enc.upper
