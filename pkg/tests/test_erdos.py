import math
from fractions import Fraction

import mpmath as mp
import pytest
import sympy
from hypothesis import given, strategies as st

from bakerabc import erdos
from bakerabc.errors import DomainError
from bakerabc.report import Status


@pytest.fixture(scope="module")
def table():
    return erdos.default_table()


def kbe_rhs_mp(alpha, beta, k):
    with mp.workdps(50):
        a, b, k = mp.mpf(alpha), mp.mpf(beta), mp.mpf(k)
        num = mp.log(mp.e * a / mp.sqrt(b)) + k * mp.log(a * k) / mp.log(k) * (1 + mp.mpf("1.2762") / mp.log(k)) \
            - mp.log(a * k)
        den = mp.log(mp.e * a) + b * mp.log(b / (mp.e * a))
        return num / den


@pytest.mark.parametrize("k", [100, 700, 12345])
def test_kbe_rhs_against_mpmath(k):
    got = erdos.kbe_rhs(4, Fraction(1, 4), k)
    assert abs(float(got.midpoint) - float(kbe_rhs_mp(4, 0.25, k))) < 1e-9


def test_kbe_rhs_reference_points():
    assert abs(float(erdos.kbe_rhs(4, Fraction(1, 4), 700).midpoint) - 698.815) < 1e-3
    assert abs(float(erdos.kbe_rhs(4, Fraction(1, 4), 100).midpoint) - 113.118) < 1e-3


@given(st.integers(700, 10 ** 7), st.integers(1, 10 ** 6))
def test_kbe_ratio_decreasing(k, dk):
    a, b = erdos.kbe_ratio(4, Fraction(1, 4), k), erdos.kbe_ratio(4, Fraction(1, 4), k + dk)
    assert b.lower <= a.upper


def test_kbe_domain():
    with pytest.raises(DomainError):
        erdos.kbe_rhs(1, Fraction(1, 2), 100)  # e * beta >= alpha


@given(st.integers(20, 700), st.integers(1, 12), st.integers(1, 12))
def test_T_against_sympy(k, m, q):
    m += 1
    if m * q >= k:
        with pytest.raises(DomainError):
            erdos.T(k, m, q)
        return
    want = sympy.primepi(k) + sum(sympy.primepi((m * q - 1) // j) for j in range(1, q)) \
        - q * sympy.primepi(m - 1)
    assert erdos.T(k, m, q) == want


def test_T_reference_value():
    assert erdos.T(53, 17, 3) == 22


def r_k_mp(k, D=15):
    with mp.workdps(50):
        return int(mp.floor(k + 1 - sympy.primepi(k) - mp.loggamma(k + 1) / (D * mp.log(10))))


@given(st.integers(2, 5000))
def test_r_k_against_mpmath(k):
    assert erdos.r_k(k) == r_k_mp(k)


def test_r_k_table(table):
    rep = erdos.verify_r_k_table(table)
    assert rep.status is Status.PASS
    assert {k: erdos.r_k(k) for k in erdos.R_K_REFERENCE} == erdos.R_K_REFERENCE


@given(st.integers(2, 3000), st.integers(1, 40), st.integers(1, 40))
def test_r_k_grows_with_the_d_floor(k, d1, d2):
    lo, hi = sorted((d1, d2))
    assert erdos.r_k(k, lo) <= erdos.r_k(k, hi)


@given(st.integers(5, 120), st.integers(0, 60))
def test_check_k9_against_bruteforce(k, s1):
    pik = int(sympy.primepi(k))
    if s1 > k - pik:
        with pytest.raises(DomainError):
            erdos.check_k9_contradiction(k, 4, s1)
        return
    lhs = math.factorial(s1) * math.prod(4 * k + i for i in range(1, k - pik - s1 + 1))
    assert erdos.check_k9_contradiction(k, 4, s1) == (lhs > math.factorial(k - 1))


def test_s1_threshold(table):
    rep = erdos.verify_corollary6(table)
    assert rep.status is Status.PASS, [a.label for a in rep.failures()]


def test_even_d_bound(table):
    rep = erdos.verify_corollary8(table=table)
    assert rep.status is Status.PASS
    assert rep.data["minimal_k"] == 14
    assert 14 in rep.data["product_comparison_fails_at"]


def test_k_below_400():
    assert erdos.verify_k_below_400().status is Status.PASS


def test_schedule_rows():
    assert [r.well_formed for r in erdos.DEFAULT_SCHEDULE] == [True, True, False, True, True]
    with pytest.raises(DomainError):
        erdos.ScheduleRow(10, 5, 3, 1)


def test_default_schedule_only_breaks_at_row_36_5(table):
    rep = erdos.verify_schedule(table)
    fails = rep.failures()
    assert rep.status is Status.FAIL
    assert len(fails) == 2
    assert all("179" in a.label or "36" in a.label for a in fails)


def test_schedule_with_row_36_4_passes(tmp_path, table):
    p = tmp_path / "sched.txt"
    p.write_text("# k_lo k_hi m q\n53 89 17 3\n89 179 28 3\n179 239 36 4\n239 367 36 6\n367 433 36 10\n")
    sched = erdos.load_schedule(p)
    rep = erdos.verify_schedule(table, sched)
    assert rep.status is Status.PASS, [a.label for a in rep.failures()][:5]


def test_schedule_threads_agree(table):
    a = erdos.verify_schedule(table, threads=1)
    b = erdos.verify_schedule(table, threads=3)
    assert [(x.label, x.status) for x in a.assertions] == [(x.label, x.status) for x in b.assertions]


def test_load_schedule_errors(tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("53 89 17\n")
    with pytest.raises(DomainError, match=":1:"):
        erdos.load_schedule(p)


def test_l7_constant_chain(table):
    rep = erdos.ell7_chain(table)
    assert rep.status is Status.PASS
    assert rep.data["b_log_lhs"].certainly_lt(35)
    assert any("63727" in n for n in rep.notes)


def test_max_uvw_radical():
    best, arg, raw, raw_arg = erdos.max_uvw_radical(8)
    assert (best, arg) == (70, (2, 5, 7))
    assert (raw, raw_arg) == (120, (3, 5, 8))
