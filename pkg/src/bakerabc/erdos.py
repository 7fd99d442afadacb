"""Numeric checks behind the bounds for n(n+d)...(n+(k-1)d) = b y^l.

Covers the |S_1| threshold and its exact factorial form, the odd-d product
comparison, the r_k lower bound, the Case I / Case II schedule for l >= 11,
and the constant chain for l = 7.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .arith import coprime3, legendre, radical
from .config import d_floor_log10 as cited_d_floor
from .errors import DomainError, UndecidedError
from .primes import PrimeTable, shared_table
from .report import Status, VerificationReport
from .verified import (DEFAULT_PRECISION, MAX_RETRIES, VerifiedReal, decide, enclose, exp,
                       log, log_factorial, rpow, sqrt)

PI_UPPER_COEFF = Fraction("1.2762")
CASE_I_EXPONENT = Fraction(37, 7)   # l/(1 + 3/4) - 1 at l = 11
CASE_II_EXPONENT = Fraction(23, 7)  # l/(1 + 3/4) - 3 at l = 11
SCHEDULE_TABLE_LIMIT = 10 ** 4
SCHEDULE_K_END = 433


@dataclass(frozen=True)
class CaseConfig:
    """Parameters of one Case I / Case II attempt at a given k."""

    k: int
    a0: int
    b0: int
    z0: int
    a1: int | None = None
    b1: int | None = None
    z1: int | None = None
    m: int | None = None
    q: int | None = None
    ell: int = 11
    halved: bool = False

    def violations(self) -> list[str]:
        out = []
        if self.z0 < 3:
            out.append(f"z0 = {self.z0} < 3")
        if self.z1 is not None:
            if self.z1 < 3:
                out.append(f"z1 = {self.z1} < 3")
            if self.z1 > self.z0:
                out.append(f"z1 = {self.z1} > z0 = {self.z0}")
            # the halved construction discards primes in [m/2, m) and can drop below z0/2
            if not self.halved and 2 * self.z1 < self.z0:
                out.append(f"z1 = {self.z1} < z0/2")
        return out


@dataclass(frozen=True)
class ScheduleRow:
    k_lo: int
    k_hi: int  # exclusive
    m: int
    q: int

    def __post_init__(self):
        if not (0 < self.k_lo < self.k_hi) or self.m < 2 or self.q < 1:
            raise DomainError(f"malformed schedule row {self}")

    @property
    def well_formed(self) -> bool:
        """m*q < k for every k in the row, i.e. m*q < k_lo."""
        return self.m * self.q < self.k_lo

    def covers(self, k: int) -> bool:
        return self.k_lo <= k < self.k_hi


DEFAULT_SCHEDULE = (
    ScheduleRow(53, 89, 17, 3),
    ScheduleRow(89, 179, 28, 3),
    ScheduleRow(179, 239, 36, 5),
    ScheduleRow(239, 367, 36, 6),
    ScheduleRow(367, 433, 36, 10),
)


def load_schedule(path) -> tuple[ScheduleRow, ...]:
    """Rows ``k_lo k_hi m q`` (k_hi exclusive); '#' comments and blank lines skipped."""
    rows = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 4:
            raise DomainError(f"{path}:{lineno}: expected 'k_lo k_hi m q', got {line!r}")
        try:
            rows.append(ScheduleRow(*map(int, parts)))
        except ValueError as exc:
            raise DomainError(f"{path}:{lineno}: {exc}") from exc
    if not rows:
        raise DomainError(f"{path}: no schedule rows")
    return tuple(rows)


def default_table(prec: int = DEFAULT_PRECISION) -> PrimeTable:
    return shared_table(SCHEDULE_TABLE_LIMIT, prec)


# |S_1| threshold -----------------------------------------------------------

def _kbe_parts(alpha: Fraction, beta: Fraction, k: VerifiedReal, prec: int):
    alpha, beta = Fraction(alpha), Fraction(beta)
    if alpha < 1:
        raise DomainError("alpha must be >= 1")
    if beta <= 0:
        raise DomainError("beta must be positive")
    e = exp(enclose(1, prec))
    if not (e * beta).certainly_lt(alpha):
        raise DomainError("need e*beta < alpha")
    lk = log(k)
    lak = log(k * alpha)
    la = log(enclose(alpha, prec))
    lb = log(enclose(beta, prec))
    num_const = 1 + la - lb / 2                      # log(e alpha / sqrt(beta))
    growth = lak / lk * (1 + PI_UPPER_COEFF / lk)    # log(alpha k)/log k (1 + 1.2762/log k)
    denom = 1 + la + beta * (lb - 1 - la)            # log(e alpha) + beta log(beta/(e alpha))
    if denom.lower <= 0 <= denom.upper:
        raise DomainError("denominator enclosure contains 0")
    return num_const, growth, lak, denom


def kbe_rhs(alpha, beta, k=None, *, log_k=None, prec: int = DEFAULT_PRECISION) -> VerifiedReal:
    """Right side of the |S_1| > beta k threshold; k may be given through ``log_k``."""
    kk = _k_enclosure(k, log_k, prec)
    num_const, growth, lak, denom = _kbe_parts(alpha, beta, kk, prec)
    return (num_const + kk * growth - lak) / denom


def kbe_ratio(alpha, beta, k=None, *, log_k=None, prec: int = DEFAULT_PRECISION) -> VerifiedReal:
    """kbe_rhs / k, the form that decreases in k; the threshold holds iff it is <= 1."""
    kk = _k_enclosure(k, log_k, prec)
    num_const, growth, lak, denom = _kbe_parts(alpha, beta, kk, prec)
    return (num_const / kk + growth - lak / kk) / denom


def _k_enclosure(k, log_k, prec) -> VerifiedReal:
    if (k is None) == (log_k is None):
        raise DomainError("give exactly one of k and log_k")
    if k is not None:
        if k < 3:
            raise DomainError("k must be >= 3")
        return enclose(k, prec)
    return exp(enclose(Fraction(log_k), prec))


def check_k9_contradiction(k: int, alpha, s1: int, table: PrimeTable | None = None) -> bool:
    """True iff s1! * prod_{i=1}^{k-pi(k)-s1} (floor(alpha k) + i) > (k-1)!, exactly."""
    table = table or default_table()
    pik = table.prime_count(k)
    if not 0 <= s1 <= k - pik:
        raise DomainError(f"s1 must lie in [0, k - pi(k)] = [0, {k - pik}]")
    base = math.floor(Fraction(alpha) * k)
    lhs = math.factorial(s1)
    for i in range(1, k - pik - s1 + 1):
        lhs *= base + i
    return lhs > math.factorial(k - 1)


def s1_upper_bound(k: int) -> int:
    return 2 * (k // 9 + 1)


def verify_corollary6(table: PrimeTable | None = None, prec: int = DEFAULT_PRECISION,
                      k_lo: int = 113, k_hi: int = 700) -> VerificationReport:
    """Three consecutive-within-9 indices with A_i <= 4k for every prime k > 113."""
    t0 = time.perf_counter()
    table = table or default_table(prec)
    rep = VerificationReport("S_1 threshold k > 113", "|S_1(4)| > 2([k/9]+1) for k > 113: threshold at k >= 700, "
                                           "exact factorial contradiction for primes 113 < k < 700")
    a, b = Fraction(4), Fraction(1, 4)
    st, m = decide(lambda p: 1 - kbe_ratio(a, b, k_hi, prec=p), strict=False, prec=prec)
    rep.add(f"threshold holds at k = {k_hi} (alpha=4, beta=1/4)", st, m)
    # past the threshold the ratio keeps decreasing; sample far out as a sanity check
    for kk in (10 ** 4, 10 ** 8):
        st, m = decide(lambda p: kbe_ratio(a, b, k_hi, prec=p) - kbe_ratio(a, b, kk, prec=p), prec=prec)
        rep.add(f"rhs/k at {k_hi} exceeds rhs/k at {kk}", st, m)
    rep.add(f"k/4 > 2([k/9]+1) for k >= {k_hi}", Fraction(k_hi, 36) > 2, witness=(k_hi,))
    fails = []
    for k in table.primes_upto(k_hi - 1):
        if k <= k_lo:
            continue
        s1 = s1_upper_bound(k)
        base = math.floor(a * k)
        pik = table.prime_count(k)
        # the product side shrinks as s1 grows while s1 + 1 < floor(alpha k) + k - pi(k) - s1,
        # so the contradiction at the cap covers every smaller s1
        mono = s1 < base + k - pik - s1
        ok = check_k9_contradiction(k, a, s1, table)
        if not (ok and mono):
            fails.append(k)
        rep.add(f"k={k}: exact contradiction at s1={s1}", ok and mono, witness=(k, s1))
    rep.data["failing_k"] = fails
    rep.elapsed = time.perf_counter() - t0
    return rep


# odd d ----------------------------------------------------------------------

def verify_corollary8(k_max: int = 10 ** 4, table: PrimeTable | None = None,
                      product_k_max: int = 1000) -> VerificationReport:
    """2(k-1-pi(k)) > k-1 for 14 <= k <= k_max, and the odd-product comparison."""
    t0 = time.perf_counter()
    if k_max < 14:
        raise DomainError("k_max must be at least 14")
    table = table if table and table.limit >= k_max else shared_table(max(k_max, SCHEDULE_TABLE_LIMIT))
    rep = VerificationReport("even d forces k <= 13", "d even and l >= 11 force k <= 13: 2(k-1-pi(k)) > k-1 for k >= 14")
    holds = [2 * (k - 1 - table.prime_count(k)) > k - 1 for k in range(2, k_max + 1)]
    bad = [k for k, h in zip(range(2, k_max + 1), holds) if not h and k >= 14]
    rep.add(f"2(k-1-pi(k)) > k-1 for all 14 <= k <= {k_max}", not bad,
            witness=tuple(bad[:10]) if bad else None)
    # minimal k0 such that the inequality holds on all of [k0, k_max]
    k0 = k_max + 1
    for k in range(k_max, 1, -1):
        if not holds[k - 2]:
            break
        k0 = k
    rep.data["minimal_k"] = k0
    rep.add("smallest k from which the inequality holds throughout is 14", k0 == 14, witness=(k0,))

    lim = min(k_max, product_k_max)
    bad_prod, true_odd_holds = [], []
    for k in range(14, lim + 1):
        s = k - 1 - table.prime_count(k)
        lhs = math.prod(range(1, 2 * s, 2))
        rhs = math.prod(range(3, k, 2))  # prod of 2i+1 <= k-1
        if lhs <= rhs:
            bad_prod.append(k)
        fact = math.factorial(k - 1)
        true_odd = fact >> legendre(k - 1, 2)
        true_odd_holds.append(lhs > true_odd)
    # only k = 4 and primes k >= 5 occur; at even k the two products can tie
    bad_prime = [k for k in bad_prod if table.is_prime(k)]
    rep.add(f"prod_(i<=k-1-pi(k)) (2i-1) > prod_(2i+1<=k-1) (2i+1) for primes 14 <= k <= {lim}",
            not bad_prime, witness=tuple(bad_prime[:10]) if bad_prime else None)
    rep.data["product_comparison_fails_at"] = bad_prod
    if bad_prod:
        rep.notes.append(f"the strict product comparison fails at the non-prime k {bad_prod[:10]}"
                         f"{' ...' if len(bad_prod) > 10 else ''} (equal products when 2(k-1-pi(k)) = k)")
    # (k-1)!/2^ord_2((k-1)!) is the odd part of (k-1)!, which exceeds the product of odd numbers
    first_true = next((14 + i for i in range(len(true_odd_holds))
                       if all(true_odd_holds[i:])), None)
    rep.data["odd_part_comparison_holds_from"] = first_true
    rep.notes.append(
        "(k-1)! 2^(-ord_2((k-1)!)) is the odd part of (k-1)!, not the product of odd numbers "
        f"below k; the comparison against the true odd part holds on [k0, {lim}] "
        f"from k0 = {first_true}")
    rep.elapsed = time.perf_counter() - t0
    return rep


# r_k and T -------------------------------------------------------------------

def r_k_enclosure(k: int, d_floor: Fraction, table: PrimeTable, prec: int) -> VerifiedReal:
    lf = log_factorial(k, prec)
    return (k + 1 - table.prime_count(k)) - lf / (log(enclose(10, prec)) * Fraction(d_floor))


def r_k(k: int, d_floor_log10=None, table: PrimeTable | None = None,
        prec: int = DEFAULT_PRECISION) -> int:
    """floor(k + 1 - pi(k) - log(k!)/(D log 10)) where d > 10^D (D = 15 by default)."""
    if k < 2:
        raise DomainError("r_k needs k >= 2")
    d = cited_d_floor() if d_floor_log10 is None else Fraction(d_floor_log10)
    if d <= 0:
        raise DomainError("the d floor exponent must be positive")
    table = table or default_table(prec)
    p = prec
    for _ in range(MAX_RETRIES + 1):
        f = r_k_enclosure(k, d, table, p).floor()
        if f is not None:
            return f
        p *= 2
    raise UndecidedError(f"r_{k}: enclosure straddles an integer")


def T(k: int, m: int, q: int, table: PrimeTable | None = None) -> int:
    """pi(k) + sum_{j<q} pi((mq-1)/j) - q pi(m-1)."""
    table = table or default_table()
    if m < 1 or q < 1:
        raise DomainError("m and q must be positive")
    if m * q >= k:
        raise DomainError(f"T needs m*q < k (m*q = {m * q}, k = {k})")
    return _T_unchecked(k, m, q, table)


def _T_unchecked(k, m, q, table):
    mq1 = m * q - 1
    return (table.prime_count(k) + sum(table.prime_count(Fraction(mq1, j)) for j in range(1, q))
            - q * table.prime_count(m - 1))


# Case I / Case II -------------------------------------------------------------

def case_I_margin(k, a0, b0, table, prec) -> VerifiedReal:
    t = table.at_precision(prec)
    p = t.nth_prime(t.prime_count(k) + 1)
    return CASE_I_EXPONENT * log(enclose(p, prec)) - t.theta(max(a0, b0 - 1))


def case_II_margin(k, z1, a1, b1, table, prec) -> VerifiedReal:
    t = table.at_precision(prec)
    idx = t.prime_count(k) + z1 - 1
    if idx < 1:
        raise DomainError("Case II prime index must be positive")
    p = t.nth_prime(idx)
    return CASE_II_EXPONENT * log(enclose(p, prec)) - t.theta(max(a1, b1 - 1))


def case_I_contradicted(k, a0, b0, table=None, prec: int = DEFAULT_PRECISION) -> Status:
    """p_{pi(k)+1}^(37/7) >= Theta(max(a0, b0-1))."""
    table = table or default_table(prec)
    return decide(lambda p: case_I_margin(k, a0, b0, table, p), strict=False, prec=prec)[0]


def case_II_contradicted(k, z1, a1, b1, table=None, prec: int = DEFAULT_PRECISION) -> Status:
    """p_{pi(k)+z1-1}^(23/7) >= Theta(max(a1, b1-1))."""
    table = table or default_table(prec)
    return decide(lambda p: case_II_margin(k, z1, a1, b1, table, p), strict=False, prec=prec)[0]


# the schedule -------------------------------------------------------------------

def schedule_ks(table: PrimeTable, k_end: int = SCHEDULE_K_END) -> list[int]:
    return [4] + table.primes_upto(k_end - 1)[2:]  # 4 and primes >= 5


def _add_cases(rep, cfg: CaseConfig, table, prec, label):
    for v in cfg.violations():
        rep.add(f"{label}: {v}", False, witness=(cfg.k,))
    if not cfg.violations():
        rep.add(f"{label}: z0 >= 3" + (" and z1 >= 3" if cfg.z1 is not None else ""), True,
                witness=(cfg.k,))
    st, m = decide(lambda p: case_I_margin(cfg.k, cfg.a0, cfg.b0, table, p), strict=False, prec=prec)
    rep.add(f"{label}: Case I contradicted (a0={cfg.a0}, b0={cfg.b0})", st, m, (cfg.k,))
    a1 = cfg.a0 if cfg.a1 is None else cfg.a1
    b1 = cfg.b0 if cfg.b1 is None else cfg.b1
    z1 = cfg.z0 if cfg.z1 is None else cfg.z1
    st, m = decide(lambda p: case_II_margin(cfg.k, z1, a1, b1, table, p), strict=False, prec=prec)
    rep.add(f"{label}: Case II contradicted (a1={a1}, b1={b1}, z1={z1})", st, m, (cfg.k,))


def case_config_for(k: int, schedule, table, prec) -> tuple[CaseConfig, list[tuple[str, bool, tuple]]]:
    """The branch parameters at k plus the side conditions that justify them."""
    pik = table.prime_count(k)
    side = []
    if k in (4, 5, 7, 11):
        return CaseConfig(k, k, k, k), side
    if k in (13, 17, 19, 23):
        z0 = 11 - (table.prime_count(23) - table.prime_count(11))
        r11 = r_k(11, table=table, prec=prec)
        side.append((f"z0 = 11 - 4 = {z0} > 11 - r_11 = {11 - r11}", z0 == 7 and z0 > 11 - r11, (k, z0, r11)))
        return CaseConfig(k, 11, 11, z0), side
    if 29 <= k <= 47:
        z0 = 23 - pik
        r17 = r_k(17, table=table, prec=prec)
        side.append((f"z0 = 17 - (pi(k) - pi(13)) = 23 - pi(k) = {z0}",
                     z0 == 17 - (pik - table.prime_count(13)), (k, z0)))
        side.append((f"z0 = {z0} >= 8 > 17 - r_17 = {17 - r17}", z0 >= 8 and z0 > 17 - r17, (k, z0, r17)))
        return CaseConfig(k, 13, 17, z0), side
    rows = [r for r in schedule if r.covers(k)]
    if not rows:
        raise DomainError(f"no schedule row covers k = {k}")
    row = rows[0]
    m, q = row.m, row.q
    side.append((f"m*q = {m * q} < k", m * q < k, (k, m, q)))
    t = _T_unchecked(k, m, q, table)
    rm = r_k(m, table=table, prec=prec)
    side.append((f"floor(T/q) = {t // q} < r_{m} = {rm}  (T = {t})", t // q < rm, (k, t, rm)))
    z0 = m - t // q
    if k < 89:
        return CaseConfig(k, m - 1, m, z0, m - 1, m, z0, m, q), side
    if m % 2:
        raise DomainError(f"the halved construction needs even m (got {m})")
    drop = table.prime_count(m - 1) - table.prime_count(Fraction(m, 2))
    z1 = -(-z0 // 2) - drop
    # same count via the general recipe with b' = max(a0, b0 - 1) = m - 1
    z1_general = -(-z0 // 2) - table.prime_count(m - 2) + table.prime_count(Fraction(m, 2) - 1)
    side.append((f"z1 = ceil(z0/2) - (pi(m-1) - pi(m/2)) = {z1} agrees with the general recipe",
                 z1 == z1_general, (k, z1, z1_general)))
    return CaseConfig(k, m - 1, m, z0, m // 2 - 1, m // 2, z1, m, q, halved=True), side


def _check_k(k, schedule, table, prec) -> VerificationReport:
    sub = VerificationReport(f"k={k}", "")
    try:
        cfg, side = case_config_for(k, schedule, table, prec)
    except DomainError as exc:
        sub.add(f"k={k}: {exc}", False, witness=(k,))
        return sub
    for label, ok, w in side:
        sub.add(f"k={k}: {label}", ok, witness=w)
    _add_cases(sub, cfg, table, prec, f"k={k}")
    sub.data["config"] = cfg.__dict__
    return sub


def verify_schedule(table: PrimeTable | None = None, schedule=DEFAULT_SCHEDULE,
                    prec: int = DEFAULT_PRECISION, threads: int = 1,
                    k_end: int = SCHEDULE_K_END) -> VerificationReport:
    """Replay Cases I and II for k in {4} and the primes 5 <= k < k_end."""
    t0 = time.perf_counter()
    table = table or default_table(prec)
    rep = VerificationReport("schedule", "Case I and Case II contradictions for 4 <= k < 433, l >= 11")
    for row in schedule:
        rep.add(f"row (m,q)=({row.m},{row.q}) on [{row.k_lo},{row.k_hi}): m*q < k_lo",
                row.well_formed, witness=(row.k_lo, row.k_hi, row.m, row.q))
    ks = schedule_ks(table, k_end)
    uncovered = [k for k in ks if k >= 53 and not any(r.covers(k) for r in schedule)]
    rep.add("every k >= 53 is covered by a schedule row", not uncovered,
            witness=tuple(uncovered[:10]) if uncovered else None)
    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            subs = list(ex.map(lambda k: _check_k(k, schedule, table, prec), ks))
    else:
        subs = [_check_k(k, schedule, table, prec) for k in ks]
    configs = {}
    for k, sub in zip(ks, subs):  # merge in k order regardless of scheduling
        rep.extend(sub)
        configs[k] = sub.data.get("config")
    rep.data["configs"] = configs
    rep.data["schedule"] = [r.__dict__ for r in schedule]
    rep.elapsed = time.perf_counter() - t0
    return rep


R_K_REFERENCE = {7: 3, 11: 6, 13: 7, 17: 10, 18: 10, 28: 18, 30: 18, 36: 23}


def verify_r_k_table(table: PrimeTable | None = None, prec: int = DEFAULT_PRECISION) -> VerificationReport:
    table = table or default_table(prec)
    rep = VerificationReport("r_k", "r_k = [k + 1 - pi(k) - log(k!)/(15 log 10)] at the tabulated k")
    for k, want in R_K_REFERENCE.items():
        got = r_k(k, table=table, prec=prec)
        rep.add(f"r_{k} = {want}", got == want, witness=(k, got))
    return rep


def verify_k_below_400(prec: int = DEFAULT_PRECISION) -> VerificationReport:
    """The two contradictions that push k below 400 for l >= 11."""
    rep = VerificationReport("k<400", "l >= 11 forces k < 400")
    st, m = decide(lambda p: 11 * log(enclose(400, p)) - Fraction(7, 4) * Fraction("37.12"), prec=prec)
    rep.add("400^11 > e^(37.12 * 7/4)", st, m)
    # k^(11 - 21/4) < 6/(5 sqrt(28 pi)) 35^(17/12) (4k)^(17/4) fails at k = 400, and the
    # gap k^(3/2) grows, so it fails for all k >= 400
    def margin(p):
        k = enclose(400, p)
        lhs = Fraction(23, 4) * log(k)
        rhs = (log(enclose(6, p) / (5 * sqrt(VerifiedReal.pi(p) * 28))) + Fraction(17, 12) * log(enclose(35, p))
               + Fraction(17, 4) * log(k * 4))
        return lhs - rhs
    st, m = decide(margin, prec=prec)
    rep.add("k^(23/4) exceeds 6/(5 sqrt(28 pi)) 35^(17/12) (4k)^(17/4) at k = 400", st, m)
    rep.add("exponent gap 23/4 - 17/4 > 0 keeps the contradiction for k > 400",
            Fraction(23, 4) > Fraction(17, 4))
    rep.add("equal A_i force l < 5 + 6(3/4) < 11", 5 + 6 * Fraction(3, 4) < 11)
    return rep


# l = 7 ------------------------------------------------------------------------

ELL7_LOG_K = Fraction("13006.2")
ELL7_CONSTANTS = (64266, 63727)


def max_uvw_radical(w_max: int = 8) -> tuple[int, tuple[int, int, int], int, tuple[int, int, int]]:
    """Max of radical(uvw) and of uvw over coprime u + v = w <= w_max with u <= v."""
    best_rad, arg_rad, best_raw, arg_raw = 0, None, 0, None
    for w in range(2, w_max + 1):
        for u in range(1, w // 2 + 1):
            v = w - u
            if not coprime3(u, v, w):
                continue
            r = radical(u * v * w)
            if r > best_rad:
                best_rad, arg_rad = r, (u, v, w)
            if u * v * w > best_raw:
                best_raw, arg_raw = u * v * w, (u, v, w)
    return best_rad, arg_rad, best_raw, arg_raw


def ell7_chain(table: PrimeTable | None = None, prec: int = DEFAULT_PRECISION,
               computed_log_N: dict | None = None) -> VerificationReport:
    """The constant chain bounding k for l = 7.

    ``computed_log_N`` may map epsilon -> (omega_eps, log N_eps enclosure) so the
    reference thresholds can be compared with computed ones.
    """
    t0 = time.perf_counter()
    rep = VerificationReport("l = 7 constant chain", "l = 7: k < exp(13006.2) via epsilon = 1/3, 3/4 and 5/12")
    alpha, beta = Fraction(3), Fraction(1, 15) + Fraction(2, 9)

    st, m = decide(lambda p: 1 - kbe_ratio(alpha, beta, log_k=ELL7_LOG_K, prec=p),
                   strict=False, prec=prec)
    rep.add("(a) |S_1(3)| threshold holds at k = e^13006.2, beta = 1/15 + 2/9", st, m)

    def log_b(p, omega_eps=6460):
        inner = rpow(enclose(350, p) / (6 * sqrt(VerifiedReal.pi(p) * (2 * omega_eps))), Fraction(1, 3))
        return log(enclose(15, p)) + 45 * inner

    st, m = decide(lambda p: 35 - log_b(p), prec=prec)
    rep.add("(b) log(15 exp(45 (350/(6 sqrt(12920 pi)))^(1/3))) < 35", st, m)
    rep.data["b_log_lhs"] = log_b(prec)
    st, m = decide(lambda p: ELL7_LOG_K - log_b(p), prec=prec)
    rep.add("(b) 15 exp(45 (350/(6 sqrt(12920 pi)))^(1/3)) < e^13006.2", st, m)
    rep.notes.append("12920 = 2 * 6460; the kappa written next to it uses 6458 (2 * 6458 = 12916)")
    if computed_log_N and Fraction(1, 3) in computed_log_N:
        w13 = computed_log_N[Fraction(1, 3)][0]
        st, m = decide(lambda p: ELL7_LOG_K - log_b(p, w13), prec=prec)
        rep.add(f"(b) the same bound with the computed omega_(1/3) = {w13}", st, m, (w13,))

    st, m = decide(lambda p: 11 * log(enclose(400, p)) - Fraction(7, 4) * Fraction("37.12"), prec=prec)
    rep.add("(c) 11 log 400 > (7/4) 37.12", st, m)
    rep.add("(c) 7 log k < (7/4) 3895 gives log k < 3895/4 < 13006.2",
            Fraction(3895, 4) < ELL7_LOG_K, margin=ELL7_LOG_K - Fraction(3895, 4))
    if computed_log_N:
        for eps, thresh in ((Fraction(3, 4), Fraction("37.12")), (Fraction(5, 12), Fraction(3895))):
            if eps in computed_log_N:
                lnN = computed_log_N[eps][1]
                rep.add(f"(c) e^{thresh} >= N_{eps} (computed log N = {float(lnN.midpoint):.6f})",
                        lnN.certainly_le(thresh), margin=thresh - lnN)

    results = {}
    for C in ELL7_CONSTANTS:
        bound = Fraction(C) * Fraction(17, 84)
        results[C] = bound
        rep.data[f"d_bound_{C}"] = {"log_k_bound": str(bound), "decimal": f"{float(bound):.4f}",
                                    "minus_13006.2": f"{float(bound - ELL7_LOG_K):+.4f}"}
    rep.add("(d) C = 64266: (17/12) C / 7 reproduces 13006.2 within 0.1",
            abs(results[64266] - ELL7_LOG_K) <= Fraction(1, 10),
            margin=results[64266] - ELL7_LOG_K)
    rep.add("(d) C = 63727: (17/12) C / 7 < 13006.2", results[63727] < ELL7_LOG_K,
            margin=ELL7_LOG_K - results[63727])
    rep.notes.append(f"(d) 64266*17/84 = {float(results[64266]):.6f}, 63727*17/84 = "
                     f"{float(results[63727]):.6f}; only 64266 reproduces 13006.2, and it exceeds "
                     f"13006.2 by {float(results[64266] - ELL7_LOG_K):.6f}")
    t = table if table is not None and len(table) >= 6460 else shared_table(10 ** 5, prec)
    th = t.log_primorial(6460)
    rep.data["theta_p_6460"] = th
    rep.notes.append(f"(d) theta(p_6460) = {float(th.midpoint):.4f}, so 64266 = ceil(theta(p_6460)); "
                     f"63727 matches neither")

    best, arg, raw, raw_arg = max_uvw_radical(8)
    rep.add("(e) max radical(uvw) over coprime u + v = w <= 8 is 70 at (2,5,7)",
            best == 70 and arg == (2, 5, 7), witness=arg)
    rep.data["max_raw_uvw"] = {"value": raw, "at": raw_arg}
    rep.elapsed = time.perf_counter() - t0
    return rep
