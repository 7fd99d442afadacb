import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from bakerabc import diophantine as d
from bakerabc.errors import DomainError
from bakerabc.report import Status
from oracles import fc_brute, goor_brute, nl_brute, repunit_brute


def test_nl_box_matches_bruteforce():
    assert d.nagell_ljunggren_search(60, 12, 12) == nl_brute(60, 12, 12)


def test_nl_default_box_is_the_three_exceptions():
    assert d.nagell_ljunggren_search(200, 20, 20) == sorted(d.EXCEPTIONAL_NL)


@given(st.integers(3, 30), st.integers(3, 8), st.integers(3, 8), st.integers(0, 10), st.integers(0, 3))
def test_nl_superset_on_larger_box(x, n, q, dx, dn):
    small = set(d.nagell_ljunggren_search(x, n, q))
    big = set(d.nagell_ljunggren_search(x + dx, n + dn, q + dn))
    assert small <= big


def test_goor_matches_bruteforce():
    got = [(w.value, w.x, w.y, w.m, w.n) for w in d.goormaghtigh_search(12, 16)]
    assert got == goor_brute(12, 16)


def test_goor_known_box():
    ws = d.goormaghtigh_search(30, 40)
    assert [(w.value, w.x, w.y, w.m, w.n) for w in ws] == [(31, 5, 2, 3, 5), (8191, 90, 2, 3, 13)]
    assert all(w.n_above_3 for w in ws)


def test_goor_threads_agree():
    assert d.goormaghtigh_search(30, 30, threads=3) == d.goormaghtigh_search(30, 30)


def test_goor_witness_validation():
    with pytest.raises(DomainError):
        d.GoormaghtighWitness(32, 5, 2, 3, 5)


def test_fc_matches_bruteforce():
    got = {(w.x, w.p or 0, w.y, w.q, w.z, w.r) for w in d.fermat_catalan_search(10 ** 4, min_exponent=2)}
    assert got == fc_brute(10 ** 4, 2)


def test_fc_empty_at_min_exponent_3():
    assert d.fermat_catalan_search(10 ** 6) == []
    assert fc_brute(10 ** 5, 3) == set()


def test_fc_sanity_fixture():
    ws = d.fermat_catalan_search(100, min_exponent=2)
    assert any((w.x, w.y, w.q, w.z, w.r) == (1, 2, 3, 3, 2) for w in ws)


def test_fc_signature_filter():
    ws = d.fermat_catalan_search(10 ** 4, signatures=[(2, 2, 3)], min_exponent=2)
    for w in ws:
        assert sorted((w.p or 2, w.q, w.r)) == [2, 2, 3] or w.x == 1


def test_signature_canonical():
    assert d.Signature.of(7, 3, 5) == d.Signature(3, 5, 7)
    with pytest.raises(DomainError):
        d.Signature(3, 6, 7)
    assert d.Signature(3, 5, 7).reciprocal_sum == Fraction(71, 105)


def test_fc_cutoffs_exact():
    cut = d.fc_cutoffs()
    assert sorted(cut["q_bound"]) == [3, 4, 5]
    assert cut["r_bound"][(3, 5)] == Fraction(105, 4)
    assert cut["r_bound"][(4, 5)] == Fraction(140, 17)
    assert cut["r_bound"][(3, 3)] is None and cut["r_bound"][(3, 4)] is None


@pytest.fixture(scope="module")
def residual():
    return d.fermat_catalan_residual()


def test_residual_finite_part(residual):
    three_five = [s.r for s in residual.finite if (s.p, s.q) == (3, 5)]
    assert three_five == [7, 11, 13, 17, 19, 23]
    assert d.Signature(4, 5, 7) in residual.finite


def test_residual_diff(residual):
    assert residual.diff_vs_Q["in_residual_not_in_Q"] == ["(4,5,7)"]
    assert {x["signature"] for x in residual.diff_vs_Q["in_Q_not_in_residual"]} == {"(3,4,5)", "(3,4,7)"}


def test_residual_filter_classes(residual):
    assert d.Signature(3, 5, 7) in residual.bounded
    assert d.Signature(4, 5, 7) in residual.bounded
    assert [str(s) for s in residual.unbounded] == ["(3,3,4)"]
    assert all(s.reciprocal_sum <= Fraction(71, 105) for s in residual.bounded)


def test_residual_bound_values(residual):
    rep = residual.report
    b = rep.data["log_bound"]
    assert b.certainly_le(d.REFERENCE_FC_BOUND)
    assert abs(float(b.midpoint) - 1758.334) < 1e-3


def test_repunit_power_exponents():
    assert d.nalu_exponent_check().status is Status.PASS


@given(st.fractions(min_value=Fraction(1, 100), max_value=Fraction(3, 4)))
def test_exponent_table_pure(eps):
    assert d.goormaghtigh_exponent_table(eps) == d.goormaghtigh_exponent_table(eps)
    tab = d.goormaghtigh_exponent_table(eps)
    assert tab["m_max"] < 4 + 5 * eps <= tab["m_max"] + 1


@given(st.fractions(min_value=Fraction(1, 100), max_value=Fraction(3, 4)), st.integers(4, 7))
def test_exponent_table_bound_is_sharp(eps, m):
    tab = d.goormaghtigh_exponent_table(eps)
    if m > tab["m_max"]:
        return
    r = tab["n_ranges"][m]
    if r["n_max"] is None:
        return
    c = (2 + 3 * eps) / (m - 1)
    holds = lambda n: n < 2 + 2 * eps + (n - 1) * c
    assert holds(r["n_max"]) and not holds(r["n_max"] + 1)


def test_exponent_table_three_quarters():
    tab = d.goormaghtigh_exponent_table(Fraction(3, 4))
    assert tab["m_max"] == 7
    assert (tab["n_ranges"][6]["n_min"], tab["n_ranges"][6]["n_max"]) == (7, 17)
    assert d.goormaghtigh_arith_report().status is Status.PASS


def test_finite_elimination():
    assert d.goormaghtigh_finite_elimination().status is Status.PASS
    # a planted solution in the box is caught: (x, m) = (5, 3) at (y, n) = (2, 5)
    rep = d.goormaghtigh_finite_elimination(m=3, ns=(5,), y_caps={5: 2})
    assert rep.status is Status.FAIL


def test_m3_checks_seeded():
    a = d.goormaghtigh_m3_checks(seed=1)
    b = d.goormaghtigh_m3_checks(seed=1)
    assert a.status is Status.PASS
    assert [x.label for x in a.assertions] == [x.label for x in b.assertions]


def test_poly_gcd():
    # (y-1)(y-2) and (y-1)(y+3) share y - 1
    assert d.poly_gcd([2, -3, 1], [-3, 2, 1]) == [-1, 1]


@given(st.integers(2, 10 ** 6), st.integers(2, 10 ** 4), st.integers(3, 30))
def test_m3_quadratic_identity(x, y, n):
    lhs, rhs = d.gom3_sides(x, y, n)
    assert (lhs == rhs) == (repunit_brute(y, n) == x * x + x + 1)


@given(st.integers(1, 10 ** 6), st.integers(2, 10 ** 6), st.integers(1, 20))
def test_g_formula(x, y, n):
    G = math.gcd(math.gcd(4 * y ** n, (y - 1) * (2 * x + 1) ** 2), 3 * y + 1)
    assert G == {1: 4, 3: 2}.get(y % 4, 1)
