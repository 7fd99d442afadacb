"""Precision audit: doubled precision nests, perturbed precision changes no verdict or witness."""

import ast
import inspect
import textwrap
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from bakerabc import abcscan, arith, baker, diophantine, erdos, primes
from bakerabc.primes import table_for_index
from bakerabc.verified import VerifiedReal, enclose, log, sqrt

TABLE = table_for_index(2000)


def nested(inner: VerifiedReal, outer: VerifiedReal) -> bool:
    return outer.lower <= inner.lower and inner.upper <= outer.upper


MARGINS = {
    "omega1": lambda p, w: baker.omega1_margin(Fraction(1, 2), w, p),
    "theta condition": lambda p, w: baker.theta_condition_margin(Fraction(1, 2), w, TABLE, p),
    "factorial condition": lambda p, w: baker.factorial_condition_margin(Fraction(5, 12), w, TABLE, p),
    "baker bound": lambda p, w: baker.baker_bound(arith.radical(w * (w + 1) * (2 * w + 1)), p) - (2 * w + 1),
    "quality": lambda p, w: baker.quality(w + 2, arith.radical(w + 2) * 2 + 1, p),
    "kbe ratio": lambda p, w: 1 - erdos.kbe_ratio(4, Fraction(1, 4), w + 3, prec=p),
    "r_k": lambda p, w: erdos.r_k_enclosure(w + 2, Fraction(15), TABLE, p),
    "pi bound": lambda p, w: primes._pi_bound_margin(TABLE.nth_prime(w + 2), w + 2, p),
    "p_i bound": lambda p, w: primes._pn_margin(w + 1, TABLE.nth_prime(w + 1), Fraction(1), p),
    "theta(p_i) bound": lambda p, w: primes._pn_margin(w + 1, TABLE.at_precision(p).log_primorial(w + 1),
                                                       primes.ROBIN_CONSTANT, p),
    "sqrt pi": lambda p, w: sqrt(VerifiedReal.pi(p) * (2 * w)) - log(enclose(w + 1, p)),
}


@pytest.mark.parametrize("name", sorted(MARGINS))
@given(w=st.integers(5, 1500), prec=st.sampled_from([64, 120, 200]))
def test_doubled_precision_is_nested(name, w, prec):
    fn = MARGINS[name]
    assert nested(fn(2 * prec, w), fn(prec, w))


@pytest.mark.parametrize("prec", [80, 240])
def test_epsilon_entries_stable_under_precision(prec):
    for eps in (Fraction(3, 4), Fraction(1, 2), Fraction(34, 71)):
        a = baker.compute_epsilon_entry(eps, TABLE, 120)
        b = baker.compute_epsilon_entry(eps, TABLE, prec)
        assert (a.omega1, a.omega_eps) == (b.omega1, b.omega_eps)
        assert a.log_N_eps.intersect(b.log_N_eps) is not None


def _witnesses(rep):
    return [(a.label, a.status, a.witness) for a in rep.assertions]


def test_abc_scan_witnesses_stable_under_precision():
    runs = [abcscan.enumerate_and_check(5000, top=10, prec=p) for p in (60, 120, 240)]
    keys = [([(t.a, t.b, t.c) for t in r.triples], [(t.a, t.b, t.c) for t in r.top],
             [a.witness for a in r.report.failures()]) for r in runs]
    assert keys[0] == keys[1] == keys[2]


def test_schedule_verdicts_stable_under_precision():
    t = erdos.default_table()
    a = erdos.verify_schedule(t, prec=120)
    b = erdos.verify_schedule(t.at_precision(240), prec=240)
    assert [(x.label, x.status, x.witness) for x in a.assertions] == \
        [(x.label, x.status, x.witness) for x in b.assertions]


def test_residual_stable_under_precision():
    a = diophantine.fermat_catalan_residual(prec=120)
    b = diophantine.fermat_catalan_residual(prec=240)
    assert a.finite == b.finite and a.diff_vs_Q == b.diff_vs_Q
    assert [x.status for x in a.report.assertions] == [x.status for x in b.report.assertions]


# static audit: search code may not touch floating point ---------------------------

SEARCH_FUNCTIONS = [
    diophantine.nagell_ljunggren_search, diophantine.goormaghtigh_search,
    diophantine.fermat_catalan_search, diophantine._power_table, diophantine.goormaghtigh_finite_elimination,
    abcscan._hits_for_range, abcscan.radical_sieve, abcscan.iter_triples,
    erdos.check_k9_contradiction, erdos._T_unchecked,
    arith.iroot, arith.perfect_power_root, arith.repunit, arith.factorize,
]

FLOAT_CALLS = {"float", "sqrt", "log", "exp", "pow", "log2", "log10", "isclose", "round"}


def float_uses(fn):
    tree = ast.parse(textwrap.dedent(inspect.getsource(fn)))
    bad = []
    for node in ast.walk(tree):
        if isinstance(node, ast.Constant) and isinstance(node.value, float):
            bad.append(f"float literal {node.value}")
        elif isinstance(node, ast.BinOp) and isinstance(node.op, ast.Div):
            bad.append("true division")
        elif isinstance(node, ast.Call):
            f = node.func
            name = f.id if isinstance(f, ast.Name) else f.attr if isinstance(f, ast.Attribute) else None
            if name in FLOAT_CALLS:
                bad.append(f"call to {name}")
    return bad


@pytest.mark.parametrize("fn", SEARCH_FUNCTIONS, ids=lambda f: f.__name__)
def test_search_code_is_float_free(fn):
    assert float_uses(fn) == []
