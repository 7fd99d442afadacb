"""Finite searches and exponent arithmetic for three Diophantine equations.

* y^q = (x^n - 1)/(x - 1)                        (Nagell-Ljunggren)
* x^p + y^q = z^r with (x, y, z) = 1              (Fermat-Catalan)
* (x^m - 1)/(x - 1) = (y^n - 1)/(y - 1), x > y    (Goormaghtigh)

Every accept/reject decision in a search is exact integer arithmetic.
"""

from __future__ import annotations

import math
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Callable, Iterable

from .arith import is_prime, iroot, perfect_power_root, repunit
from .config import CITED
from .errors import DomainError
from .report import Status, VerificationReport
from .verified import DEFAULT_PRECISION, enclose, log, sqrt

FOUR_SEVENTHS = Fraction(4, 7)
SEVENTY_ONE_105 = Fraction(71, 105)  # 1/(1 + 34/71) = 1/3 + 1/5 + 1/7
REFERENCE_FC_BOUND = Fraction("1758.3353")


def _map(fn, items, threads):
    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            return list(ex.map(fn, items))
    return [fn(i) for i in items]


# Nagell-Ljunggren ----------------------------------------------------------

EXCEPTIONAL_NL = ((3, 11, 5, 2), (7, 20, 4, 2), (18, 7, 3, 3))


def nagell_ljunggren_search(x_max: int, n_max: int, q_max: int, threads: int = 1
                            ) -> list[tuple[int, int, int, int]]:
    """All (x, y, n, q) with y^q = (x^n-1)/(x-1), 2 <= x <= x_max, 3 <= n <= n_max, 2 <= q <= q_max."""
    if min(x_max, n_max, q_max) < 3:
        raise DomainError("search bounds must be at least 3")

    def row(x):
        out = []
        for n in range(3, n_max + 1):
            v = repunit(x, n)
            for q in range(2, q_max + 1):
                y = perfect_power_root(v, q)
                if y is not None and y > 1:
                    out.append((x, y, n, q))
        return out

    return sorted(w for part in _map(row, range(2, x_max + 1), threads) for w in part)


@dataclass(frozen=True)
class LinearExponent:
    """const + coef * n, an exponent of x that is linear in n."""

    const: Fraction
    coef: Fraction

    def scale(self, s) -> "LinearExponent":
        return LinearExponent(self.const * s, self.coef * s)

    def __add__(self, other: "LinearExponent") -> "LinearExponent":
        return LinearExponent(self.const + other.const, self.coef + other.coef)


def solve_n_less_than(lhs: LinearExponent, rhs: LinearExponent) -> Fraction | None:
    """Bound B with lhs(n) < rhs(n) <=> n < B; None when the inequality does not bound n above."""
    a = lhs.coef - rhs.coef
    b = rhs.const - lhs.const
    if a <= 0:
        return None
    return b / a


def nalu_exponent_check() -> VerificationReport:
    """x^n < N^(7/4) with N < x^(2 + n/3) forces n <= 8, against n >= 11."""
    rep = VerificationReport("repunit power exponents",
                             "y < x^(n/3), N(x(x-1)y) < x^(2+n/3) and x^n < N^(7/4) give n < 42/5")
    n_exp = LinearExponent(Fraction(0), Fraction(1))
    y_exp = LinearExponent(Fraction(0), Fraction(1, 3))          # y < x^(n/q) <= x^(n/3)
    N_exp = LinearExponent(Fraction(2), Fraction(0)) + y_exp     # N < x^2 y
    rhs = N_exp.scale(Fraction(7, 4))
    rep.add("(7/4)(2 + n/3) = 7/2 + 7n/12", rhs == LinearExponent(Fraction(7, 2), Fraction(7, 12)))
    bound = solve_n_less_than(n_exp, rhs)
    rep.add("n < 7/2 + 7n/12  <=>  n < 42/5", bound == Fraction(42, 5), margin=bound)
    rep.add("n = 8 satisfies n < 7/2 + 7n/12", 8 < Fraction(7, 2) + Fraction(7 * 8, 12))
    rep.add("n = 9 violates n < 7/2 + 7n/12", not 9 < Fraction(7, 2) + Fraction(7 * 9, 12))
    # q = 2 is settled, and 3, 4, 5, 7 do not divide n
    excluded = [n for n in range(3, 11) if any(n % d == 0 for d in (3, 4, 5, 7))]
    n_min = next(n for n in range(3, 100) if all(n % d for d in (3, 4, 5, 7)))
    rep.add("3, 4, 5, 7 not dividing n and n > 2 give n >= 11", excluded == list(range(3, 11))
            and n_min == 11, witness=(n_min,))
    rep.add("floor(42/5) = 8 < 11", math.floor(Fraction(42, 5)) < n_min)
    return rep


# Fermat-Catalan ------------------------------------------------------------

def valid_exponent(e: int) -> bool:
    return e == 4 or (e >= 3 and e % 2 == 1 and is_prime(e))


@dataclass(frozen=True, order=True)
class Signature:
    p: int
    q: int
    r: int

    def __post_init__(self):
        if not (self.p <= self.q <= self.r):
            raise DomainError("signatures are stored sorted ascending")
        for e in (self.p, self.q, self.r):
            if not valid_exponent(e):
                raise DomainError(f"{e} is neither 4 nor an odd prime")

    @classmethod
    def of(cls, *entries: int) -> "Signature":
        return cls(*sorted(entries))

    @property
    def entries(self) -> tuple[int, int, int]:
        return (self.p, self.q, self.r)

    @property
    def reciprocal_sum(self) -> Fraction:
        return Fraction(1, self.p) + Fraction(1, self.q) + Fraction(1, self.r)

    @property
    def chi(self) -> Fraction:
        return self.reciprocal_sum - 1

    def __str__(self) -> str:
        return f"({self.p},{self.q},{self.r})"


@dataclass(frozen=True)
class SolvedFamily:
    name: str
    citation: str
    predicate: Callable[[Signature], bool]


def _perm_match(sig: Signature, pattern: Callable[[int, int, int], bool]) -> bool:
    return any(pattern(*t) for t in permutations(sig.entries))


def default_solved_families() -> list[SolvedFamily]:
    cap = CITED.chen_siksek_cap.value
    return [
        SolvedFamily("(p,p,p)", "Wiles", lambda s: s.p == s.q == s.r),
        SolvedFamily("[3,p,p], p >= 7", "Darmon-Merel",
                     lambda s: _perm_match(s, lambda a, b, c: a == 3 and b == c and b >= 7)),
        SolvedFamily("[4,p,p], p >= 7", "Darmon-Merel",
                     lambda s: _perm_match(s, lambda a, b, c: a == 4 and b == c and b >= 7)),
        SolvedFamily("[3,5,5]", "Poonen", lambda s: s.entries == (3, 5, 5)),
        SolvedFamily("[4,5,5]", "Poonen", lambda s: s.entries == (4, 5, 5)),
        SolvedFamily("[4,4,p]", "Bennett-Ellenberg-Ng",
                     lambda s: _perm_match(s, lambda a, b, c: a == b == 4)),
        # the cited theorem is about prime exponents p, so (3,3,4) is not covered
        SolvedFamily(f"[3,3,p], p prime <= {cap}", CITED.chen_siksek_cap.citation,
                     lambda s: _perm_match(s, lambda a, b, c: a == b == 3 and c != 4 and c <= cap)),
        SolvedFamily("[3,4,5]", "Siksek-Stoll", lambda s: s.entries == (3, 4, 5)),
        SolvedFamily("[3,4,7]", "Poonen-Schaefer-Stoll", lambda s: s.entries == (3, 4, 7)),
    ]


@dataclass
class SolvedFamilyList:
    families: list[SolvedFamily] = field(default_factory=default_solved_families)

    def solved_by(self, sig: Signature) -> list[SolvedFamily]:
        return [f for f in self.families if f.predicate(sig)]

    def is_solved(self, sig: Signature) -> bool:
        return any(f.predicate(sig) for f in self.families)


def exponents_upto(limit: int) -> list[int]:
    return [e for e in range(3, limit + 1) if valid_exponent(e)]


def fc_cutoffs() -> dict:
    """Exact cutoffs from 1/p + 1/q + 1/r > 4/7 with p <= q <= r.

    p: 3/p > 4/7.  q given p: 2/q > 4/7 - 1/p.  r given p, q: 1/r > 4/7 - 1/p - 1/q,
    unbounded when the right side is <= 0.  Each bound is strict, so the
    admissible values are those strictly below the rational bound.
    """
    out = {"p_bound": Fraction(21, 4), "q_bound": {}, "r_bound": {}}
    for p in exponents_upto(5):
        if not 3 * Fraction(1, p) > FOUR_SEVENTHS:
            continue
        rest = FOUR_SEVENTHS - Fraction(1, p)
        out["q_bound"][p] = 2 / rest
        for q in exponents_upto(math.ceil(2 / rest)):
            if q < p or not Fraction(2, q) > rest:
                continue
            gap = rest - Fraction(1, q)
            out["r_bound"][(p, q)] = None if gap <= 0 else 1 / gap
    return out


@dataclass
class FcResidual:
    finite: list[Signature]              # bounded-entry survivors
    families: list[dict]                 # parametric survivors, described in closed form
    bounded: list[Signature]             # finite survivors with reciprocal sum <= 71/105
    unbounded: list[Signature]           # finite survivors the 71/105 filter does not reach
    diff_vs_Q: dict
    report: VerificationReport


def q_members(limit: int) -> set[Signature]:
    """Sorted representatives of Q with entries <= limit."""
    out = {Signature.of(3, 5, p) for p in range(7, 24) if is_prime(p)}
    out |= {Signature.of(3, 4, p) for p in range(3, limit + 1) if is_prime(p)}
    return {s for s in out if max(s.entries) <= limit}


def _admissible_upto(limit: int) -> Iterable[Signature]:
    es = exponents_upto(limit)
    for i, p in enumerate(es):
        for j in range(i, len(es)):
            for k in range(j, len(es)):
                yield Signature(p, es[j], es[k])


def fermat_catalan_residual(log_N_34_71=None, solved: SolvedFamilyList | None = None,
                            scan_limit: int = 200, prec: int = DEFAULT_PRECISION) -> FcResidual:
    """Signatures left after the 4/7 condition and the solved families, and the size bound.

    ``log_N_34_71`` is the enclosure of log N_{34/71}; when omitted it is computed.
    """
    t0 = time.perf_counter()
    solved = solved or SolvedFamilyList()
    rep = VerificationReport("fermat-catalan residual",
                             "1/p+1/q+1/r > 4/7 minus solved signatures; 71/105 filter; size bound")
    cut = fc_cutoffs()
    rep.add("p <= q <= r forces p < 21/4, so p in {3, 4, 5}", sorted(cut["q_bound"]) == [3, 4, 5],
            witness=tuple(sorted(cut["q_bound"])))

    finite, families = [], []
    for (p, q), rb in sorted(cut["r_bound"].items()):
        if rb is None:
            families.append({"p": p, "q": q})
            continue
        for r in exponents_upto(math.ceil(rb)):
            if r >= q and Fraction(1, r) > FOUR_SEVENTHS - Fraction(1, p) - Fraction(1, q):
                s = Signature(p, q, r)
                if not solved.is_solved(s):
                    finite.append(s)
    rb35 = cut["r_bound"][(3, 5)]
    rep.add("[3,5,r]: 1/r > 4/7 - 8/15 = 4/105, r < 105/4", rb35 == Fraction(105, 4), margin=rb35)
    three_five = sorted(s.r for s in finite if s.p == 3 and s.q == 5)
    rep.add("[3,5,p] survivors are 7, 11, 13, 17, 19, 23", three_five == [7, 11, 13, 17, 19, 23],
            witness=tuple(three_five))

    # parametric families: entries (p, q, r) with r unbounded
    fam_out = []
    for f in families:
        p, q = f["p"], f["q"]
        rs = [r for r in exponents_upto(scan_limit) if r >= q]
        open_r = [r for r in rs if not solved.is_solved(Signature(p, q, r))]
        solved_r = [r for r in rs if r not in open_r]
        # past the solved range only large r survive; find where the 71/105 filter takes over
        filt = SEVENTY_ONE_105 - Fraction(1, p) - Fraction(1, q)
        filter_from = None if filt <= 0 else 1 / filt
        entry = {"family": f"({p},{q},r)", "solved_r_upto_scan": solved_r,
                 "open_r_upto_scan": open_r[:12], "open_r_count_upto_scan": len(open_r),
                 "filter_bounds_r_above": filter_from}
        if (p, q) == (3, 3):
            entry["open_tail"] = f"r prime > {CITED.chen_siksek_cap.value}"
        fam_out.append(entry)
    fam_keys = [(f["p"], f["q"]) for f in families]
    rep.add("parametric families are (3,3,r) and (3,4,r)", fam_keys == [(3, 3), (3, 4)],
            witness=tuple(x for k in fam_keys for x in k))
    fam34 = next(f for f in fam_out if f["family"] == "(3,4,r)")
    rep.add("(3,4,p) family survives (p prime, p not 5 or 7)", fam34["open_r_count_upto_scan"] > 0
            and 5 not in fam34["open_r_upto_scan"] and 7 not in fam34["open_r_upto_scan"])

    # finite survivors from the families, visible inside the scan box
    finite_in_families = [Signature(f["p"], f["q"], r) for f in families for r in exponents_upto(scan_limit)
                          if r >= f["q"] and not solved.is_solved(Signature(f["p"], f["q"], r))]
    all_open = sorted(set(finite) | set(finite_in_families))

    bounded = [s for s in all_open if s.reciprocal_sum <= SEVENTY_ONE_105]
    unbounded = [s for s in all_open if s.reciprocal_sum > SEVENTY_ONE_105]
    rep.data["finite_survivors"] = [str(s) for s in finite]
    rep.data["parametric_families"] = fam_out
    rep.data["bounded_class_upto_scan"] = [str(s) for s in bounded]
    rep.data["filter_does_not_apply"] = [str(s) for s in unbounded]
    for s in unbounded:
        rep.notes.append(f"{s}: 1/p+1/q+1/r = {s.reciprocal_sum} > 71/105, so N >= N_(34/71) is not "
                         f"excluded, and no listed solved family covers it")
    # [3,3,p] with p > 10^9 is excluded by the filter since 2/3 + 1/p > 71/105 needs p < 105
    rep.add("[3,3,p]: 2/3 + 1/p > 71/105 <=> p < 105, so p > 10^9 is excluded for N >= N_(34/71)",
            1 / (SEVENTY_ONE_105 - Fraction(2, 3)) == 105)
    rep.add("71/105 = 1/3 + 1/5 + 1/7 = 1/(1 + 34/71)",
            SEVENTY_ONE_105 == Fraction(1, 3) + Fraction(1, 5) + Fraction(1, 7) == 1 / (1 + Fraction(34, 71)))

    # completeness by brute force inside the scan box
    brute = {s for s in _admissible_upto(scan_limit)
             if s.reciprocal_sum > FOUR_SEVENTHS and not solved.is_solved(s)}
    rep.add(f"cutoff enumeration equals brute force over entries <= {scan_limit}",
            brute == set(all_open), witness=(len(brute), len(all_open)))

    Q = q_members(scan_limit)
    in_res_not_Q = sorted(set(all_open) - Q)
    in_Q_not_res = sorted(Q - set(all_open))
    diff = {"in_residual_not_in_Q": [str(s) for s in in_res_not_Q],
            "in_Q_not_in_residual": [{"signature": str(s),
                                      "solved_by": [f"{f.name} ({f.citation})" for f in solved.solved_by(s)]}
                                     for s in in_Q_not_res]}
    rep.data["diff_vs_Q"] = diff
    rep.add("residual minus Q is {(4,5,7)}", [str(s) for s in in_res_not_Q] == ["(4,5,7)"],
            witness=tuple(x for s in in_res_not_Q for x in s.entries))
    rep.add("every member of Q outside the residual is a solved signature",
            all(solved.is_solved(s) for s in in_Q_not_res))
    if in_res_not_Q:
        rep.notes.append("residual signatures missing from Q: " + ", ".join(map(str, in_res_not_Q)))

    # the size bound (7/4) log N_{34/71}
    if log_N_34_71 is None:
        from .baker import compute_epsilon_entry
        log_N_34_71 = compute_epsilon_entry(Fraction(34, 71), prec=prec).log_N_eps
    bound = log_N_34_71 * Fraction(7, 4)
    rep.data["log_bound"] = bound
    dist = max(abs(Fraction(*bound.lower.as_integer_ratio()) - REFERENCE_FC_BOUND),
               abs(Fraction(*bound.upper.as_integer_ratio()) - REFERENCE_FC_BOUND))
    rep.add("(7/4) log N_(34/71) lies within 1e-3 of 1758.3353", dist <= Fraction(1, 1000),
            margin=bound - REFERENCE_FC_BOUND)
    rep.add("(7/4) log N_(34/71) <= 1758.3353 (the reference bound is valid)",
            bound.certainly_le(REFERENCE_FC_BOUND), margin=REFERENCE_FC_BOUND - bound)
    reference = Fraction("1004.763") * Fraction(7, 4)
    rep.data["log_bound_from_reference_1004.763"] = str(reference)
    rep.notes.append(f"(7/4) x computed log N = {float(bound.midpoint):.6f}; (7/4) x 1004.763 = "
                     f"{float(reference):.6f}")
    rep.elapsed = time.perf_counter() - t0
    return FcResidual(finite, fam_out, bounded, unbounded, diff, rep)


@dataclass(frozen=True, order=True)
class FcWitness:
    x: int
    p: int | None  # None when x = 1, whose exponent is arbitrary
    y: int
    q: int
    z: int
    r: int


def _power_table(power_max: int, exponents: list[int]) -> dict[int, dict[int, int]]:
    """value -> {exponent: base} for base >= 2."""
    table: dict[int, dict[int, int]] = {}
    for e in exponents:
        b = 2
        while b ** e <= power_max:
            table.setdefault(b ** e, {})[e] = b
            b += 1
    return table


def fermat_catalan_search(power_max: int, signatures: Iterable | None = None,
                          min_exponent: int = 3) -> list[FcWitness]:
    """Positive primitive x^p + y^q = z^r with max(x^p, y^q, z^r) <= power_max.

    ``signatures`` restricts to the given unordered exponent triples; by default
    every exponent triple with entries >= ``min_exponent`` is searched (exponents
    above log2(power_max) only allow the base 1).  x = 1 is admitted with any
    exponent, which is how 1 + 2^3 = 3^2 appears once 2 is allowed.
    """
    if power_max < 2:
        raise DomainError("power_max must be at least 2")
    e_max = max(min_exponent, power_max.bit_length())
    exps = list(range(min_exponent, e_max + 1))
    sigset = None
    if signatures is not None:
        sigset = {tuple(sorted(s.entries if isinstance(s, Signature) else s)) for s in signatures}
        if any(min(s) < min_exponent for s in sigset):
            raise DomainError("signature entry below min_exponent")
    table = _power_table(power_max, exps)
    values = sorted(table)

    def allowed(ea, eb, ec):
        return sigset is None or tuple(sorted((ea, eb, ec))) in sigset

    def allowed_with_one(eb, ec):
        if sigset is None:
            return True
        return any(sorted((eb, ec)) in (sorted(s[:i] + s[i + 1:]) for i in range(3)) for s in
                   ([list(t) for t in sigset]))

    found = set()
    # 1 + v = w
    for v in values:
        w = v + 1
        if w in table:
            for eb, y in table[v].items():
                for ec, z in table[w].items():
                    if allowed_with_one(eb, ec):
                        found.add(FcWitness(1, None, y, eb, z, ec))
    # u + v = w with u <= v, two pointers over the sorted powers for each target w
    vs = values
    for w in values:
        i, j = 0, len(vs) - 1
        while i <= j:
            s = vs[i] + vs[j]
            if s < w:
                i += 1
            elif s > w:
                j -= 1
            else:
                u, v = vs[i], vs[j]
                for ea, x in table[u].items():
                    for eb, y in table[v].items():
                        for ec, z in table[w].items():
                            if math.gcd(math.gcd(x, y), z) == 1 and allowed(ea, eb, ec):
                                found.add(FcWitness(x, ea, y, eb, z, ec))
                i += 1
                j -= 1
    return sorted(found, key=lambda f: (f.z ** f.r, f.x, f.y, f.p or 0, f.q, f.r))


# Goormaghtigh ------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class GoormaghtighWitness:
    value: int
    x: int
    y: int
    m: int
    n: int

    def __post_init__(self):
        if not (self.x > self.y > 1 and 2 < self.m < self.n):
            raise DomainError("need x > y > 1 and 2 < m < n")
        if repunit(self.x, self.m) != self.value or repunit(self.y, self.n) != self.value:
            raise DomainError("repunits do not agree")

    @property
    def n_above_3(self) -> bool:
        return self.n > 3

    def to_dict(self) -> dict:
        return {"x": self.x, "y": self.y, "m": self.m, "n": self.n, "value": self.value,
                "n_above_3": self.n_above_3}


def goormaghtigh_search(y_max: int, n_max: int, threads: int = 1) -> list[GoormaghtighWitness]:
    """All solutions with 2 <= y <= y_max and 3 <= m < n <= n_max.

    For m >= 3, x^(m-1) < 1 + x + ... + x^(m-1) < (x+1)^(m-1), so the only
    candidate base is the integer (m-1)-th root of the common value.
    """
    if y_max < 2 or n_max < 4:
        raise DomainError("need y_max >= 2 and n_max >= 4")

    def row(y):
        out = []
        for n in range(4, n_max + 1):
            v = repunit(y, n)
            for m in range(3, n):
                x = iroot(v, m - 1)
                if x > y and repunit(x, m) == v:
                    out.append(GoormaghtighWitness(v, x, y, m, n))
        return out

    return sorted(w for part in _map(row, range(2, y_max + 1), threads) for w in part)


def _n_bound(eps: Fraction, m: int) -> Fraction | None:
    """B with n < 2 + 2eps + (n-1)(2+3eps)/(m-1) <=> n < B; None if n is not bounded."""
    c = (2 + 3 * eps) / (m - 1)
    return solve_n_less_than(LinearExponent(Fraction(0), Fraction(1)),
                             LinearExponent(2 + 2 * eps - c, c))


def goormaghtigh_exponent_table(epsilon) -> dict:
    """m < 4 + 5eps, and for m > 3 the n range from the y^n inequality (n > m)."""
    eps = Fraction(epsilon)
    if not 0 < eps <= Fraction(3, 4):
        raise DomainError("epsilon must lie in (0, 3/4]")
    m_bound = 4 + 5 * eps
    m_max = math.ceil(m_bound) - 1
    ranges = {}
    for m in range(3, m_max + 1):
        if m == 3:
            ranges[m] = {"n_min": 4, "n_max": None, "note": "m = 3 gives no bound on n here"}
            continue
        b = _n_bound(eps, m)
        n_hi = None if b is None else math.ceil(b) - 1
        ranges[m] = {"n_min": m + 1, "n_max": n_hi, "n_bound": b,
                     "empty": n_hi is not None and n_hi < m + 1}
    return {"epsilon": eps, "m_bound": m_bound, "m_max": m_max, "n_ranges": ranges}


def goormaghtigh_arith_report(epsilon=Fraction(3, 4)) -> VerificationReport:
    """Exponent bounds plus the m = 7, eps = 1/18 and eps = 1/12 eliminations."""
    rep = VerificationReport("goormaghtigh exponents",
                             "m < 4 + 5 eps and n < 2 + 2 eps + (n-1)(2+3 eps)/(m-1)")
    eps = Fraction(epsilon)
    tab = goormaghtigh_exponent_table(eps)
    rep.data["table"] = tab
    rep.add(f"eps = {eps}: m < {tab['m_bound']} gives m <= {tab['m_max']}", True, witness=(tab["m_max"],))
    if eps != Fraction(3, 4):
        return rep

    rep.add("eps = 3/4: m <= 7", tab["m_max"] == 7, witness=(tab["m_max"],))
    r6, r7 = tab["n_ranges"][6], tab["n_ranges"][7]
    rep.add("m = 6: 7 <= n <= 17", (r6["n_min"], r6["n_max"]) == (7, 17), witness=(r6["n_min"], r6["n_max"]))
    rep.add("m = 7: n in {8, 9}", (r7["n_min"], r7["n_max"]) == (8, 9), witness=(r7["n_min"], r7["n_max"]))
    # n = m + 1 = 8: d2 d3 = 1 and x^m < x^(4 + 4 eps) = x^7
    rep.add("m = 7, n = 8: x^7 < x^(4+4 eps) = x^7 is impossible", not 7 < 4 + 4 * eps)
    # n = m + 2 = 9: y^n < 2^((2+2eps)/(m-1) - 1 - eps) y^(2 + 3eps + (n-1)(2+2eps)/(m-1))
    m, n = 7, 9
    y_exp = 2 + 3 * eps + Fraction(n - 1, m - 1) * (2 + 2 * eps)
    two_exp = (2 + 2 * eps) / (m - 1) - 1 - eps
    rep.add(f"m = 7, n = 9: exponent of y is {y_exp} < 9", y_exp < 9, margin=9 - y_exp)
    rep.add(f"m = 7, n = 9: exponent of 2 is {two_exp} <= 0", two_exp <= 0, margin=-two_exp)
    rep.add("eps = 3/4 leaves m <= 6 with 7 <= n <= 17 at m = 6",
            tab["m_max"] == 7 and y_exp < 9 and two_exp <= 0 and not 7 < 4 + 4 * eps)

    small = goormaghtigh_exponent_table(Fraction(1, 18))
    rep.add("eps = 1/18: m in {3, 4}", small["m_max"] == 4, witness=(small["m_max"],))
    b4 = small["n_ranges"][4]["n_bound"]
    rep.add("eps = 1/18, m = 4: n < 5 contradicts n > m = 4", b4 == 5 and small["n_ranges"][4]["empty"],
            margin=b4)

    # eps = 1/12, m = 3: 4 y^n < (6 sqrt 2 y^((n+5)/2))^(13/12) gives n - 13(n+5)/24 < 1/24
    lhs = LinearExponent(Fraction(-65, 24), Fraction(11, 24))   # n - 13(n+5)/24
    b = solve_n_less_than(lhs, LinearExponent(Fraction(1, 24), Fraction(0)))
    rep.add("eps = 1/12, m = 3: n - 13(n+5)/24 < 1/24 <=> 11n < 66 <=> n < 6", b == 6, margin=b)
    rep.add("eps = 1/12: (n+5)/2 (13/12) = 13(n+5)/24", Fraction(13, 12) * Fraction(1, 2) == Fraction(13, 24))
    c = log(6 * sqrt(enclose(2))) * Fraction(13, 12) - log(enclose(4))
    rep.data["m3_log_y_threshold"] = c * 24
    rep.notes.append(f"eps = 1/12, m = 3: the 1/24 step needs log y > 24((13/12) log(6 sqrt 2) - log 4) "
                     f"= {float((c * 24).midpoint):.4f}")
    return rep


def goormaghtigh_finite_elimination(m: int = 6, ns=(11, 16), y_caps: dict | None = None
                                    ) -> VerificationReport:
    """For each n and y <= cap, every x in [y+1, floor(v^(1/(m-1)))] misses v = (y^n-1)/(y-1)."""
    caps = dict(CITED.goormaghtigh_y_caps.value if y_caps is None else y_caps)
    rep = VerificationReport("goormaghtigh elimination",
                             f"m = {m}: no solutions for n in {tuple(ns)} below the cited y caps")
    rep.data["citation"] = CITED.goormaghtigh_y_caps.citation
    for n in ns:
        if n not in caps:
            raise DomainError(f"no y cap configured for n = {n}")
        checked, hits = 0, []
        for y in range(2, caps[n] + 1):
            v = repunit(y, n)
            for x in range(y + 1, iroot(v, m - 1) + 1):
                checked += 1
                if repunit(x, m) == v:
                    hits.append((x, y))
        rep.add(f"n = {n}: no (x, y) with y <= {caps[n]}", not hits,
                witness=tuple(c for h in hits for c in h) if hits else (checked,))
        rep.data[f"pairs_checked_n{n}"] = checked
    return rep


# m = 3 checks -------------------------------------------------------------------

Poly = list  # coefficients, lowest degree first, Fractions


def _trim(a: Poly) -> Poly:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_divmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    a, b = _trim([Fraction(c) for c in a]), _trim([Fraction(c) for c in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        coef = a[-1] / b[-1]
        q[shift] = coef
        for i, c in enumerate(b):
            a[i + shift] -= coef * c
        a = _trim(a)
    return _trim(q), a


def poly_gcd(a: Poly, b: Poly) -> Poly:
    a, b = _trim([Fraction(c) for c in a]), _trim([Fraction(c) for c in b])
    while b:
        _, r = poly_divmod(a, b)
        a, b = b, r
    return [c / a[-1] for c in a]  # monic


def poly_derivative(a: Poly) -> Poly:
    return [i * Fraction(c) for i, c in enumerate(a)][1:]


def gom3_sides(x: int, y: int, n: int) -> tuple[int, int]:
    """(4 y^n, (y-1)(2x+1)^2 + 3y + 1)."""
    return 4 * y ** n, (y - 1) * (2 * x + 1) ** 2 + 3 * y + 1


def goormaghtigh_m3_checks(samples: int = 2000, seed: int = 20240601) -> VerificationReport:
    rep = VerificationReport("goormaghtigh m = 3",
                             "simple roots of 4(y^3+y^2+y)+1, the 4y^n identity, and G = 4, 2, 1")
    rng = random.Random(seed)
    f = [1, 4, 4, 4]  # 1 + 4y + 4y^2 + 4y^3
    fp = poly_derivative(f)
    g = poly_gcd(f, fp)
    rep.add("gcd(f, f') over Q has degree 0", len(g) == 1, witness=(len(g) - 1,))
    core = [1, 2, 3]  # f' = 4(3y^2 + 2y + 1)
    rep.add("f' = 4(3y^2 + 2y + 1)", [Fraction(c) for c in fp] == [4 * Fraction(c) for c in core])
    disc = core[1] ** 2 - 4 * core[2] * core[0]
    rep.add("discriminant of 3y^2 + 2y + 1 is -8, roots (-1 +- sqrt(2) i)/3", disc == -8, witness=(disc,))
    _, rem = poly_divmod(f, core)
    rep.add("f mod (3y^2 + 2y + 1) is nonzero, so f(alpha) != 0", bool(rem))

    # (b) 4y^n - (y-1)(2x+1)^2 - (3y+1) = 4[(y^n - 1) - (y-1)(x^2+x+1)] identically
    bad = []
    for _ in range(samples):
        x, y, n = rng.randint(2, 10 ** 6), rng.randint(2, 10 ** 4), rng.randint(3, 40)
        lhs, rhs = gom3_sides(x, y, n)
        if lhs - rhs != 4 * ((y ** n - 1) - (y - 1) * (x * x + x + 1)):
            bad.append((x, y, n))
    rep.add(f"4y^n = (y-1)(2x+1)^2 + 3y + 1 is equivalent to the m = 3 equation ({samples} random points)",
            not bad, witness=bad[0] if bad else None)
    lhs, rhs = gom3_sides(5, 2, 5)
    rep.add("at (x, y, n) = (5, 2, 5) both sides equal 128", lhs == rhs == 128, witness=(lhs, rhs))
    # the same for (2x+1)^2 = 4(y^(n-1) + ... + y) + 1
    bad = []
    for _ in range(samples // 4):
        x, y, n = rng.randint(2, 10 ** 6), rng.randint(2, 10 ** 4), rng.randint(3, 40)
        d = (2 * x + 1) ** 2 - (4 * (repunit(y, n) - 1) + 1)
        if d != 4 * ((x * x + x + 1) - repunit(y, n)):
            bad.append((x, y, n))
    rep.add("(2x+1)^2 = 4(y^(n-1)+...+y) + 1 is equivalent to the m = 3 equation", not bad,
            witness=bad[0] if bad else None)

    # (c) G = gcd(4y^n, (y-1)(2x+1)^2, 3y+1)
    bad = []
    for _ in range(samples):
        x, y, n = rng.randint(1, 10 ** 6), rng.randint(2, 10 ** 6), rng.randint(1, 30)
        G = math.gcd(math.gcd(4 * y ** n, (y - 1) * (2 * x + 1) ** 2), 3 * y + 1)
        want = 4 if (y - 1) % 4 == 0 else 2 if (y - 3) % 4 == 0 else 1
        if G != want:
            bad.append((x, y, n))
    rep.add(f"G = 4, 2, 1 as 4 | y-1, 4 | y-3, 2 | y ({samples} random points)", not bad,
            witness=bad[0] if bad else None)
    for y in (5, 7, 8):
        G = math.gcd(math.gcd(4 * y ** 3, (y - 1) * 11 ** 2), 3 * y + 1)
        rep.add(f"G at y = {y}", G == {5: 4, 7: 2, 8: 1}[y], witness=(y, G))
    rep.data["seed"] = seed
    return rep
