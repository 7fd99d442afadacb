import math
from fractions import Fraction

import mpmath as mp
import pytest
from hypothesis import given, strategies as st

from bakerabc import baker
from bakerabc.errors import DomainError
from bakerabc.primes import table_for_index
from bakerabc.report import Status
from oracles import baker_bound_mp, omega_eps_oracle


@pytest.fixture(scope="module")
def table():
    return table_for_index(700)


@pytest.mark.parametrize("eps", [(3, 4), (7, 12), (6, 11), (1, 2), (34, 71), (5, 12)])
def test_omega_eps_matches_mpmath_oracle(eps, table):
    e = baker.compute_epsilon_entry(Fraction(*eps), table)
    w1, w_eps, log_n = omega_eps_oracle(*eps)
    assert (e.omega1, e.omega_eps) == (w1, w_eps)
    assert e.log_N_eps.contains(Fraction(log_n)) or abs(float(e.log_N_eps.midpoint) - log_n) < 1e-9
    assert e.status is Status.PASS and e.omega1_certificate.certified


def test_replay_and_minimality(table):
    e = baker.compute_epsilon_entry(Fraction(1, 2), table)
    rep = baker.replay_entry(e, table)
    assert rep.status is Status.PASS
    assert any(a.label.startswith("minimality") for a in rep.assertions)


def test_omega1_certificate_brackets():
    cert = baker.compute_omega1(Fraction(3, 4))
    assert cert.omega1 == 15
    assert cert.margin_at.certainly_ge(0) and cert.margin_below.certainly_lt(0)


@given(st.integers(2, 10 ** 30))
def test_baker_bound_encloses_mpmath(N):
    from bakerabc.arith import radical
    N = radical(N)
    b = baker.baker_bound(N)
    with mp.workdps(60):
        want = baker_bound_mp(N)
        lo = mp.mpf(b.lower.as_integer_ratio()[0]) / b.lower.as_integer_ratio()[1]
        hi = mp.mpf(b.upper.as_integer_ratio()[0]) / b.upper.as_integer_ratio()[1]
        assert lo * (1 - mp.mpf(10) ** -30) <= want <= hi * (1 + mp.mpf(10) ** -30)


def test_explicit_check_known_triples():
    ok = baker.explicit_abc_check(1, 8, 9)
    assert ok.N == 6 and ok.omega == 2 and ok.below_baker is Status.PASS and ok.below_n_7_4
    bad = baker.explicit_abc_check(1, 1, 2)
    assert bad.N == 2 and bad.below_baker is Status.FAIL
    # 2 > (6/5) 2 log 2 = 1.6636
    assert math.isclose(float(bad.baker.midpoint), 2.4 * math.log(2), rel_tol=1e-12)
    top = baker.explicit_abc_check(1, 4374, 4375)
    assert math.isclose(float(top.quality.midpoint), math.log(4375) / math.log(210), rel_tol=1e-12)


def test_explicit_check_rejects_bad_input():
    for abc in [(2, 4, 6), (1, 2, 4), (0, 1, 1)]:
        with pytest.raises(DomainError):
            baker.explicit_abc_check(*abc)


@given(st.decimals(min_value=0, max_value=1, places=3, allow_nan=False))
def test_parse_rational_rejects_decimals(d):
    s = format(d, "f")
    if "." in s:
        with pytest.raises(DomainError):
            baker.parse_rational(s)


@given(st.integers(1, 100), st.integers(1, 100))
def test_parse_rational_accepts_fractions(p, q):
    assert baker.parse_rational(f"{p}/{q}") == Fraction(p, q)


def test_epsilon_domain():
    with pytest.raises(DomainError):
        baker.compute_omega1(Fraction(4, 5))
    with pytest.raises(DomainError):
        baker.compute_omega1(Fraction(0))


def test_factorial_power_bound():
    rep = baker.verify_omep65()
    assert rep.status is Status.PASS, [a.label for a in rep.failures()]
    labels = " ".join(a.label for a in rep.assertions)
    assert "{2, 3}" in labels or "[2, 3]" in labels


def test_kappa_and_fallback(table):
    e = baker.compute_epsilon_entry(Fraction(3, 4), table)
    k = baker.kappa(e, 3)
    assert math.isclose(float(k.midpoint), 1.2 / math.sqrt(2 * math.pi * 14), rel_tol=1e-12)
    assert float(baker.kappa(baker.fallback_entry(), 50).midpoint) == 1.0


@given(st.integers(1, 40), st.lists(st.integers(2, 10 ** 6), min_size=2, max_size=6))
def test_monotonicity_surrogate(w, exps):
    # past log N >= 4w/3 the surrogate is nondecreasing in N
    start = math.ceil(4 * w / 3) + 1
    Ns = sorted({2 ** (start * 2) + x for x in exps})
    vals = baker.monotonicity_surrogate(w, Ns)
    for a, b in zip(vals, vals[1:]):
        assert b.upper >= a.lower


def test_published_comparison_flags_mismatch(table):
    e = baker.compute_epsilon_entry(Fraction(1, 2), table)
    rep = baker.compare_with_published(e)
    assert rep.status is Status.FAIL
    assert e.omega_eps == 128
