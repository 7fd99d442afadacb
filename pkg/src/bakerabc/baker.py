"""Explicit abc apparatus: X0, omega_1, omega_eps, N_eps, kappa_eps and the Baker bound."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .arith import Factorization, coprime3, factorize
from .errors import DomainError, ResourceLimitError
from .primes import PrimeTable, table_for_index
from .report import Status, VerificationReport, combine
from .verified import (DEFAULT_PRECISION, VerifiedReal, decide, enclose, exp, log,
                       log_factorial, rpow, sqrt)

ROBIN_CONSTANT = Fraction("1.076869")
BAKER_FACTOR = Fraction(6, 5)
OMEGA1_SEARCH_CAP = 10 ** 6
THREE_QUARTERS = Fraction(3, 4)

# Reference values of omega_eps and log N_eps as decimal strings.
PUBLISHED_TABLE = {
    Fraction(3, 4): (14, "37.1101"),
    Fraction(7, 12): (49, "204.75"),
    Fraction(6, 11): (72, "335.71"),
    Fraction(1, 2): (127, "679.585"),
    Fraction(34, 71): (175, "1004.763"),
    Fraction(5, 12): (548, "3894.57"),
    Fraction(1, 3): (6460, "63727"),
}
# A second reference list gives a different omega_eps at eps = 1/3.
PUBLISHED_OMEGA_ALT = {Fraction(1, 3): 6458}


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"`` or an integer; decimals are rejected to keep epsilon exact."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    s = str(text).strip()
    if "." in s or "e" in s.lower():
        raise DomainError(f"{s!r}: write rationals as p/q, not decimals")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"{s!r} is not a rational number") from exc


def _check_epsilon(eps: Fraction) -> Fraction:
    eps = parse_rational(eps)
    if not 0 < eps <= THREE_QUARTERS:
        raise DomainError(f"epsilon must lie in (0, 3/4], got {eps}")
    return eps


def tolerance_of(reference: str) -> Fraction:
    """Five units in the last digit of a reference decimal."""
    decimals = len(reference.split(".")[1]) if "." in reference else 0
    return Fraction(5, 10 ** decimals)


# X0 and omega_1 -------------------------------------------------------------

def X0(i: int, prec: int = DEFAULT_PRECISION) -> VerifiedReal:
    """Enclosure of log i + log log i - 1.076869; -inf at i = 1 (log log 1 = -inf)."""
    if i < 1:
        raise DomainError("X0 is defined for i >= 1")
    if i == 1:
        return VerifiedReal.neg_infinity(prec)
    li = log(enclose(i, prec))
    return li + log(li) - ROBIN_CONSTANT


def omega1_margin(eps: Fraction, w: int, prec: int = DEFAULT_PRECISION) -> VerifiedReal:
    """eps*X0(w) - log X0(w) - 1; the omega_1 condition is margin >= 0."""
    x = X0(w, prec)
    return eps * x - log(x) - 1


@dataclass
class Omega1Certificate:
    epsilon: Fraction
    omega1: int
    margin_at: VerifiedReal
    margin_below: VerifiedReal | None
    status_at: Status
    status_below: Status | None
    # eps*X0(omega1) >= 1 makes eps*X - log X increasing from omega1 on
    monotone_status: Status = Status.PASS
    probes: int = 0

    @property
    def certified(self) -> bool:
        ok = self.status_at is Status.PASS and self.monotone_status is Status.PASS
        return ok and self.status_below in (None, Status.FAIL)


def compute_omega1(epsilon, prec: int = DEFAULT_PRECISION,
                   cap: int = OMEGA1_SEARCH_CAP) -> Omega1Certificate:
    """Smallest omega_1 >= 5 with eps*X0(w) - log X0(w) >= 1 for every w >= omega_1.

    For w >= 5, X0(w) > 1 and X0 is increasing.  h(X) = eps*X - log X falls
    until X = 1/eps and rises afterwards; h(X) >= 1 forces X > 1/eps, so the
    condition is false on an initial stretch and true from its first success
    on.  That monotone shape licenses the galloping + bisection search.
    """
    eps = _check_epsilon(epsilon)
    probes = 0
    cache: dict[int, tuple[Status, VerifiedReal]] = {}

    def holds(w: int) -> bool:
        nonlocal probes
        if w not in cache:
            probes += 1
            cache[w] = decide(lambda p: omega1_margin(eps, w, p), strict=False, prec=prec)
        return cache[w][0] is Status.PASS

    lo, hi = 4, 5
    while not holds(hi):
        lo, hi = hi, hi * 2
        if hi > cap:
            if holds(cap):
                hi = cap
                break
            raise ResourceLimitError(f"omega_1 for eps={eps} exceeds the search cap {cap}")
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if holds(mid):
            hi = mid
        else:
            lo = mid
    w1 = hi
    st_at, m_at = cache[w1]
    below = None
    if w1 > 5:
        holds(w1 - 1)
        below = cache[w1 - 1]
    mono, _ = decide(lambda p: eps * X0(w1, p) - 1, strict=False, prec=prec)
    return Omega1Certificate(eps, w1, m_at, below[1] if below else None, st_at,
                             below[0] if below else None, mono, probes)


# omega_eps ------------------------------------------------------------------

def theta_condition_margin(eps: Fraction, w: int, table: PrimeTable, prec: int) -> VerifiedReal:
    """theta(p_w) - w/eps  (condition: >= 0)."""
    return table.at_precision(prec).log_primorial(w) - Fraction(w) / eps


def factorial_condition_margin(eps: Fraction, w: int, table: PrimeTable, prec: int,
                               rhs_log: VerifiedReal | None = None) -> VerifiedReal:
    """log(w! Theta(p_w)^eps / theta(p_w)^w) - log sqrt(2 pi w)  (condition: > 0).

    ``rhs_log`` replaces log sqrt(2 pi w) when another threshold is wanted.
    """
    th = table.at_precision(prec).log_primorial(w)
    lhs = log_factorial(w, prec) + eps * th - w * log(th)
    if rhs_log is None:
        rhs_log = log(VerifiedReal.pi(prec) * (2 * w)) * Fraction(1, 2)
    return lhs - rhs_log


@dataclass
class EpsilonEntry:
    """One row of the explicit-threshold table for a fixed epsilon."""

    epsilon: Fraction
    omega1: int
    omega_eps: int
    log_N_eps: VerifiedReal
    status: Status = Status.PASS
    omega1_certificate: Omega1Certificate | None = None
    failing_below: dict | None = None
    p_omega_eps: int | None = None
    fallback: bool = False
    elapsed: float = 0.0

    def kappa_eps_at(self, w: int, prec: int = DEFAULT_PRECISION) -> VerifiedReal:
        return kappa(self, w, prec)

    def to_dict(self) -> dict:
        d = {
            "epsilon": str(self.epsilon),
            "omega1": self.omega1,
            "omega_eps": self.omega_eps,
            "log_N_eps": self.log_N_eps,
            "p_omega_eps": self.p_omega_eps,
            "status": self.status.value,
            "fallback": self.fallback,
        }
        if self.failing_below:
            d["fails_at_omega_eps_minus_1"] = self.failing_below
        return d


def fallback_entry(prec: int = DEFAULT_PRECISION) -> EpsilonEntry:
    """N_eps = kappa_eps = 1: the unconditional c < N^(7/4) form."""
    return EpsilonEntry(THREE_QUARTERS, 0, 0, VerifiedReal.exact(0, prec), fallback=True)


def compute_epsilon_entry(epsilon, table: PrimeTable | None = None,
                          prec: int = DEFAULT_PRECISION) -> EpsilonEntry:
    """omega_eps = least w <= omega_1 with both conditions true on all of [w, omega_1].

    Conditions, decided on enclosures:  theta(p_w) >= w/eps  and
    w! Theta(p_w)^eps / theta(p_w)^w > sqrt(2 pi w).  The sweep walks down from
    omega_1 and stops at the first w that is not certified.
    """
    t0 = time.perf_counter()
    eps = _check_epsilon(epsilon)
    cert = compute_omega1(eps, prec)
    w1 = cert.omega1
    if table is None or len(table) < w1:
        table = table_for_index(w1, prec)
    status = Status.PASS if cert.certified else Status.UNDECIDED
    w = w1
    failing = None
    while w >= 1:
        st_a, m_a = decide(lambda p: theta_condition_margin(eps, w, table, p),
                           strict=False, prec=prec)
        st_b, m_b = decide(lambda p: factorial_condition_margin(eps, w, table, p), prec=prec)
        if st_a is Status.PASS and st_b is Status.PASS:
            w -= 1
            continue
        if Status.UNDECIDED in (st_a, st_b):
            status = Status.UNDECIDED
        failing = {"omega": w, "theta_condition": st_a.value, "theta_margin": m_a,
                   "factorial_condition": st_b.value, "factorial_margin": m_b}
        break
    w_eps = w + 1
    if w_eps > w1:
        raise ArithmeticError(f"conditions fail at omega_1 = {w1} itself")
    return EpsilonEntry(eps, w1, w_eps, table.log_primorial(w_eps), status, cert, failing,
                        table.nth_prime(w_eps), elapsed=time.perf_counter() - t0)


def replay_entry(entry: EpsilonEntry, table: PrimeTable,
                 prec: int = DEFAULT_PRECISION) -> VerificationReport:
    """Re-decide both conditions at every w in [omega_eps, omega_1], plus minimality."""
    rep = VerificationReport(f"replay eps={entry.epsilon}",
                             "w! Theta(p_w)^eps / theta(p_w)^w > sqrt(2 pi w) on [omega_eps, omega_1]")
    eps = entry.epsilon
    for w in range(entry.omega_eps, entry.omega1 + 1):
        st, m = decide(lambda p: theta_condition_margin(eps, w, table, p), strict=False, prec=prec)
        rep.add(f"theta(p_{w}) >= {w}/eps", st, m)
        st, m = decide(lambda p: factorial_condition_margin(eps, w, table, p), prec=prec)
        rep.add(f"factorial condition at w={w}", st, m)
    if entry.omega_eps > 1:
        w = entry.omega_eps - 1
        st_a, _ = decide(lambda p: theta_condition_margin(eps, w, table, p), strict=False, prec=prec)
        st_b, _ = decide(lambda p: factorial_condition_margin(eps, w, table, p), prec=prec)
        rep.add(f"minimality: some condition fails at w={w}",
                Status.FAIL in (st_a, st_b) and Status.UNDECIDED not in (st_a, st_b))
    return rep


def kappa(entry: EpsilonEntry, omega_of_N: int, prec: int = DEFAULT_PRECISION) -> VerifiedReal:
    """6 / (5 sqrt(2 pi max(omega, omega_eps))); 1 for the fallback entry."""
    if omega_of_N < 0:
        raise DomainError("omega(N) is non-negative")
    if entry.fallback:
        return VerifiedReal.exact(1, prec)
    m = max(omega_of_N, entry.omega_eps)
    return BAKER_FACTOR / sqrt(VerifiedReal.pi(prec) * (2 * m))


def compare_with_published(entry: EpsilonEntry) -> VerificationReport:
    """Assertions comparing a computed entry against the reference tables."""
    eps = entry.epsilon
    rep = VerificationReport(f"epsilon {eps}", "omega_eps and N_eps = Theta(p_omega_eps) against the reference table")
    rep.add(f"omega_1 = {entry.omega1} certified (true at omega_1, false below, monotone beyond)",
            Status.PASS if entry.omega1_certificate and entry.omega1_certificate.certified
            else Status.UNDECIDED)
    rep.add(f"omega_eps sweep decided", entry.status)
    rep.data.update(entry.to_dict())
    if eps not in PUBLISHED_TABLE:
        return rep
    w_pub, log_pub = PUBLISHED_TABLE[eps]
    reference = {"table": w_pub}
    if eps in PUBLISHED_OMEGA_ALT:
        reference["omega_list"] = PUBLISHED_OMEGA_ALT[eps]
    diffs = {k: entry.omega_eps - v for k, v in reference.items()}
    rep.data["reference_omega_eps"] = reference
    rep.data["omega_eps_minus_reference"] = diffs
    if len(reference) == 1:
        rep.add(f"omega_eps = {w_pub}", entry.omega_eps == w_pub, witness=(entry.omega_eps,))
    else:
        for k, v in reference.items():
            rep.notes.append(f"reference omega_eps ({k}) = {v}; computed {entry.omega_eps}; "
                             f"diff {entry.omega_eps - v:+d}")
    tol = Fraction(1) if eps == Fraction(1, 3) else tolerance_of(log_pub)
    target = Fraction(log_pub)
    lo_ok = entry.log_N_eps.lower >= target - tol
    hi_ok = entry.log_N_eps.upper <= target + tol
    rep.add(f"log N_eps within {tol} of reference {log_pub}", lo_ok and hi_ok,
            margin=entry.log_N_eps - target)
    rep.data["reference_log_N_eps"] = log_pub
    rep.data["tolerance"] = str(tol)
    return rep


# Baker's bound --------------------------------------------------------------

def _as_factorization(N) -> Factorization:
    return N if isinstance(N, Factorization) else factorize(int(N))


def baker_bound(N, prec: int = DEFAULT_PRECISION) -> VerifiedReal:
    """(6/5) N (log N)^w / w!  with w = omega(N)."""
    f = _as_factorization(N)
    if f.value < 2:
        raise DomainError("the Baker bound needs N >= 2")
    w = f.omega
    lnN = log(enclose(f.value, prec))
    return BAKER_FACTOR * f.value * lnN ** w / math.factorial(w)


def log_baker_bound(N, prec: int = DEFAULT_PRECISION) -> VerifiedReal:
    f = _as_factorization(N)
    if f.value < 2:
        raise DomainError("the Baker bound needs N >= 2")
    w = f.omega
    lnN = log(enclose(f.value, prec))
    return log(enclose(BAKER_FACTOR, prec)) + lnN + w * log(lnN) - log_factorial(w, prec)


@dataclass
class AbcCheck:
    a: int
    b: int
    c: int
    N: int
    omega: int
    baker: VerifiedReal
    n_7_4: VerifiedReal
    quality: VerifiedReal
    below_baker: Status
    below_n_7_4: bool
    flags: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"a": self.a, "b": self.b, "c": self.c, "N": self.N, "omega": self.omega,
                "baker": self.baker, "n_7_4": self.n_7_4, "quality": self.quality,
                "c_below_baker": self.below_baker.value, "c_below_N_7_4": self.below_n_7_4}


def validate_triple(a: int, b: int, c: int) -> None:
    if min(a, b, c) < 1:
        raise DomainError("a, b, c must be positive integers")
    if a + b != c:
        raise DomainError(f"a + b != c ({a} + {b} != {c})")
    if not coprime3(a, b, c):
        raise DomainError(f"({a}, {b}, {c}) not pairwise coprime")


def quality(c: int, N: int, prec: int = DEFAULT_PRECISION) -> VerifiedReal:
    return log(enclose(c, prec)) / log(enclose(N, prec))


def explicit_abc_check(a: int, b: int, c: int, prec: int = DEFAULT_PRECISION,
                       radical_value: Factorization | None = None) -> AbcCheck:
    validate_triple(a, b, c)
    f = radical_value or factorize(factorize(a * b * c).radical)
    N = f.value
    bound = baker_bound(f, prec)
    st, _ = decide(lambda p: baker_bound(f, p) - c, prec=prec)
    # c < N^(7/4)  <=>  c^4 < N^7, decided exactly
    below74 = c ** 4 < N ** 7
    return AbcCheck(a, b, c, N, f.omega, bound, rpow(N, Fraction(7, 4), prec),
                    quality(c, N, prec), st, below74)


# the (log N)^w / w! < (5/6) N^(3/4) certificate ----------------------------

def verify_omep65(table: PrimeTable | None = None, prec: int = DEFAULT_PRECISION) -> VerificationReport:
    """Certify (log N)^w / w! < (5/6) N^(3/4) for every N >= 1, case by case."""
    t0 = time.perf_counter()
    rep = VerificationReport("factorial power bound", "(log N)^omega / omega! < (5/6) N^(3/4) for all N >= 1")
    if table is None or len(table) < 15:
        table = table_for_index(15, prec)
    eps = THREE_QUARTERS
    log65 = lambda p: log(enclose(Fraction(6, 5), p))

    entry = compute_epsilon_entry(eps, table, prec)
    rep.add("omega_{3/4} = 14 (covers omega >= 14 via kappa <= 6/(5 sqrt(28 pi)))",
            entry.omega_eps == 14 and entry.status is Status.PASS, witness=(entry.omega_eps,))
    st, m = decide(lambda p: Fraction(5, 6) - 1 / sqrt(VerifiedReal.pi(p) * 28), prec=prec)
    rep.add("1/sqrt(2 pi * 14) < 5/6", st, m)

    for w in range(4, 14):
        st, m = decide(lambda p: table.at_precision(p).log_primorial(w) - Fraction(4 * w, 3),
                       strict=False, prec=prec)
        rep.add(f"omega={w}: theta(p_w) >= 4w/3", st, m)
        st, m = decide(lambda p: factorial_condition_margin(eps, w, table, p, rhs_log=log65(p)),
                       prec=prec)
        rep.add(f"omega={w}: w! Theta(p_w)^(3/4) / theta(p_w)^w > 6/5", st, m)

    expected = {1: [2, 3], 2: [6, 10, 12, 14], 3: [30, 42]}
    for w in (1, 2, 3):
        st, m = decide(lambda p: log_factorial(w, p) + w - w * log(enclose(Fraction(4 * w, 3), p))
                       - log65(p), prec=prec)
        rep.add(f"omega={w}: (log N)^w / w! vs (5/6) N^(3/4) at N = e^(4w/3)", st, m)
        cutoff = exp(enclose(Fraction(4 * w, 3), prec))
        found = []
        for N in range(2, int(cutoff.upper) + 1):
            f = factorize(N)
            if f.omega != w:
                continue
            below, _ = decide(lambda p: exp(enclose(Fraction(4 * w, 3), p)) - N, prec=prec)
            if below is Status.UNDECIDED:
                rep.add(f"omega={w}: N={N} vs e^(4w/3)", Status.UNDECIDED)
            if below is Status.PASS:
                found.append(N)
        same = found == expected[w]
        rep.add(f"omega={w}: enumeration of N < e^(4w/3) equals {expected[w]}", same,
                witness=tuple(found))
        if not same:
            rep.notes.append(f"omega={w}: enumeration {found} differs from reference {expected[w]}: "
                             f"extra {sorted(set(found) - set(expected[w]))}, "
                             f"missing {sorted(set(expected[w]) - set(found))}")
        for N in found:
            st, m = decide(lambda p: log_factorial(w, p) + Fraction(3, 4) * log(enclose(N, p))
                           - w * log(log(enclose(N, p))) - log65(p), prec=prec)
            rep.add(f"omega={w}: (log N)^w / w! vs (5/6) N^(3/4) at N={N}", st, m, witness=(N,))
    rep.add("N = 1: 0 < 5/6", True)
    rep.data["enumerations"] = expected
    rep.elapsed = time.perf_counter() - t0
    return rep


def monotonicity_surrogate(w: int, samples, prec: int = DEFAULT_PRECISION) -> list[VerifiedReal]:
    """log of N^(3/4) w! / (log N)^w at sampled N (for checking it is nondecreasing)."""
    out = []
    for N in samples:
        lnN = log(enclose(N, prec))
        out.append(Fraction(3, 4) * lnN + log_factorial(w, prec) - w * log(lnN))
    return out


def epsilon_table(epsilons=None, prec: int = DEFAULT_PRECISION) -> list[EpsilonEntry]:
    """Entries for several epsilons sharing one prime table."""
    eps_list = [parse_rational(e) for e in (epsilons or PUBLISHED_TABLE)]
    w1_max = max(compute_omega1(e, prec).omega1 for e in eps_list)
    table = table_for_index(w1_max, prec)
    return [compute_epsilon_entry(e, table, prec) for e in eps_list]
