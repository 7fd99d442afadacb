"""Sweeps over abc triples: bounds c < (6/5) N (log N)^w / w! and c < N^(7/4).

A full sweep to c_max = 10^5 touches about 1.5 * 10^9 triples, so only part of
it is checked one triple at a time:

* every triple with c <= ``full_below``;
* every "hit", i.e. every triple with N = rad(abc) < c, for all c <= c_max.

The remaining triples have N >= c >= 3, and for them both bounds follow from
the squarefree estimate (6/5) (log N)^w / w! > 1, which ``bulk_lemma`` certifies
for every w with Theta(p_w) < c_max^3 (N <= abc < c^3 caps w).  Then
c <= N < (6/5) N (log N)^w / w!  and  c <= N < N^(7/4).
"""

from __future__ import annotations

import csv
import io
import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterator

import numpy as np

from .arith import coprime3, factorize
from .errors import DomainError, ResourceLimitError
from .primes import sieve
from .report import Status, VerificationReport
from .verified import DEFAULT_PRECISION, VerifiedReal, decide, enclose, log, log_factorial

BAKER_FACTOR = Fraction(6, 5)
DEFAULT_FULL_BELOW = 1000
MAX_SCAN = 10 ** 7
CSV_COLUMNS = ["a", "b", "c", "N", "omega", "quality", "baker_margin"]


def _baker(N: int, w: int, prec: int) -> VerifiedReal:
    lnN = log(enclose(N, prec))
    return BAKER_FACTOR * N * lnN ** w / math.factorial(w)


@dataclass(frozen=True)
class AbcTriple:
    a: int
    b: int
    c: int
    radical: int
    omega: int
    prec: int = DEFAULT_PRECISION

    def __post_init__(self):
        if min(self.a, self.b) < 1:
            raise DomainError("a and b must be positive")
        if self.a > self.b:
            raise DomainError("a <= b required (canonical order)")
        if self.a + self.b != self.c:
            raise DomainError(f"a + b != c ({self.a} + {self.b} != {self.c})")
        if not coprime3(self.a, self.b, self.c):
            raise DomainError(f"({self.a}, {self.b}, {self.c}) not pairwise coprime")

    @classmethod
    def of(cls, a: int, b: int, c: int, prec: int = DEFAULT_PRECISION) -> "AbcTriple":
        a, b = min(a, b), max(a, b)
        if a < 1 or a + b != c:
            raise DomainError(f"a + b != c ({a} + {b} != {c})" if a >= 1 else "a, b, c must be positive")
        if not coprime3(a, b, c):
            raise DomainError(f"({a}, {b}, {c}) not pairwise coprime")
        f = factorize(factorize(a * b * c).radical)
        return cls(a, b, c, f.value, f.omega, prec)

    @property
    def quality(self) -> VerifiedReal:
        return log(enclose(self.c, self.prec)) / log(enclose(self.radical, self.prec))

    @property
    def baker_bound(self) -> VerifiedReal:
        return _baker(self.radical, self.omega, self.prec)

    @property
    def baker_margin(self) -> VerifiedReal:
        return self.baker_bound - self.c

    def below_baker(self) -> tuple[Status, VerifiedReal]:
        return decide(lambda p: _baker(self.radical, self.omega, p) - self.c, prec=self.prec)

    def below_n_7_4(self) -> bool:
        return self.c ** 4 < self.radical ** 7

    def sort_key(self):
        return (-self.quality.midpoint, self.c, self.a)

    def to_dict(self) -> dict:
        return {"a": self.a, "b": self.b, "c": self.c, "N": self.radical, "omega": self.omega,
                "quality": self.quality, "baker_margin": self.baker_margin}


# sieves --------------------------------------------------------------------

def radical_sieve(limit: int) -> tuple[np.ndarray, np.ndarray]:
    """(rad, omega) for 0..limit, with rad(0) = 0 as a sentinel."""
    rad = np.ones(limit + 1, dtype=np.int64)
    om = np.zeros(limit + 1, dtype=np.int64)
    for p in sieve(limit).tolist():
        rad[p::p] *= p
        om[p::p] += 1
    rad[0] = 0
    return rad, om


def iter_triples(c_max: int) -> Iterator[tuple[int, int, int]]:
    """All coprime (a, b, c) with a <= b and a + b = c <= c_max, ordered by c then a."""
    for c in range(2, c_max + 1):
        for a in range(1, c // 2 + 1):
            if math.gcd(a, c) == 1:
                yield a, c - a, c


def triple_count(c_max: int) -> int:
    """1 + sum_{3 <= c <= c_max} phi(c)/2, the number of triples iter_triples yields."""
    if c_max < 2:
        return 0
    phi = np.arange(c_max + 1, dtype=np.int64)
    for p in sieve(c_max).tolist():
        phi[p::p] -= phi[p::p] // p
    return 1 + int(phi[3:].sum()) // 2


# the squarefree estimate ---------------------------------------------------

def bulk_lemma(c_max: int, prec: int = DEFAULT_PRECISION) -> VerificationReport:
    """(6/5) (log N)^w / w! > 1 for squarefree N >= 3 with Theta(p_w) <= N < c_max^3.

    log N >= theta(p_w), so it suffices to check (6/5) theta(p_w)^w / w! > 1 for
    w >= 2 and (6/5) log 3 > 1 for w = 1.
    """
    rep = VerificationReport("abc bulk estimate",
                             "(6/5)(log N)^omega/omega! > 1 for squarefree N >= 3, so N >= c gives both bounds")
    cap = c_max ** 3
    st, m = decide(lambda p: BAKER_FACTOR * log(enclose(3, p)) - 1, prec=prec)
    rep.add("omega=1: (6/5) log 3 > 1", st, m, (1,))
    w, primorial, smallest = 1, 2, None
    primes = sieve(1000).tolist()
    while True:
        w += 1
        primorial *= primes[w - 1]
        if primorial > cap:
            break
        st, m = decide(lambda p: log(enclose(BAKER_FACTOR, p)) + w * log(log(enclose(primorial, p)))
                       - log_factorial(w, p), prec=prec)
        rep.add(f"omega={w}: (6/5) theta(p_w)^w / w! > 1", st, m, (w,))
        if smallest is None or m.lower < smallest.lower:
            smallest = m
    rep.data["omega_range"] = [1, w - 1]
    rep.data["c_max_cubed"] = cap
    rep.data["smallest_log_margin"] = smallest
    return rep


# the scan ---------------------------------------------------------------------

@dataclass
class ScanResult:
    report: VerificationReport
    triples: list[AbcTriple]  # everything checked one by one
    top: list[AbcTriple]


def _hits_for_range(lo: int, hi: int, rad, om, xs_by_rad, rad_sorted, full_below):
    """Explicit triples for c in [lo, hi): all of them if c <= full_below, else the hits."""
    out = []
    for c in range(lo, hi):
        rc = int(rad[c])
        if c <= full_below:
            a = np.arange(1, c // 2 + 1, dtype=np.int64)
            a = a[np.gcd(a, c) == 1]
            for x in a.tolist():
                y = c - x
                out.append((x, y, c, int(rad[x]) * int(rad[y]) * rc, int(om[x] + om[y]) + int(om[c])))
            continue
        M = (c - 1) // rc  # hits need rad(a) rad(b) <= M
        if M < 1:
            continue
        s = math.isqrt(M)
        n = int(np.searchsorted(rad_sorted, s, side="right"))
        cand = xs_by_rad[:n]
        cand = cand[cand < c]
        if cand.size == 0:
            continue
        cand = cand[np.gcd(cand, c) == 1]
        y = c - cand
        keep = rad[cand] * rad[y] <= M
        for x in np.unique(np.minimum(cand[keep], y[keep])).tolist():
            yy = c - x
            out.append((x, yy, c, int(rad[x]) * int(rad[yy]) * rc, int(om[x] + om[yy]) + int(om[c])))
    return out


def enumerate_and_check(c_max: int, top: int = 10, threads: int = 1,
                        full_below: int = DEFAULT_FULL_BELOW,
                        prec: int = DEFAULT_PRECISION) -> ScanResult:
    t0 = time.perf_counter()
    if c_max < 2:
        raise DomainError("c_max must be at least 2")
    if c_max > MAX_SCAN:
        raise ResourceLimitError(f"c_max above {MAX_SCAN}")
    if top < 1:
        raise DomainError("top must be positive")
    rad, om = radical_sieve(c_max)
    order = np.argsort(rad[1:c_max], kind="stable") + 1
    xs_by_rad = order.astype(np.int64)
    rad_sorted = rad[xs_by_rad]

    chunk = max(1000, (c_max + 1) // max(1, threads * 4))
    bounds = [(lo, min(lo + chunk, c_max + 1)) for lo in range(2, c_max + 1, chunk)]
    work = lambda b: _hits_for_range(b[0], b[1], rad, om, xs_by_rad, rad_sorted, full_below)
    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            parts = list(ex.map(work, bounds))
    else:
        parts = [work(b) for b in bounds]
    # merge in (c, a) order so the result does not depend on the thread schedule
    raw = sorted((t for part in parts for t in part), key=lambda t: (t[2], t[0]))

    rep = VerificationReport(f"abc scan c<={c_max}",
                             "c < (6/5) N (log N)^omega/omega! and c < N^(7/4) over coprime a + b = c")
    triples = [AbcTriple(a, b, c, N, w, prec) for a, b, c, N, w in raw]
    baker_bad, n74_bad, undecided = [], [], []
    min_margin, min_at = None, None
    for t in triples:
        st, m = t.below_baker()
        if st is Status.FAIL:
            baker_bad.append(t)
        elif st is Status.UNDECIDED:
            undecided.append(t)
        if min_margin is None or m.lower < min_margin.lower:
            min_margin, min_at = m, t
        if not t.below_n_7_4():
            n74_bad.append(t)

    total = triple_count(c_max)
    n_small = triple_count(min(full_below, c_max))
    rep.data.update({"triples_total": total, "checked_individually": len(triples),
                     "full_below": full_below, "hits_with_N_below_c": sum(t.radical < t.c for t in triples)})
    for t in baker_bad:
        rep.add(f"c < Baker bound at ({t.a},{t.b},{t.c})", False, t.baker_margin, (t.a, t.b, t.c))
    for t in undecided:
        rep.add(f"c < Baker bound at ({t.a},{t.b},{t.c})", Status.UNDECIDED, t.baker_margin, (t.a, t.b, t.c))
    rep.add(f"c < Baker bound for all {len(triples)} individually checked triples",
            not baker_bad and not undecided, min_margin, (min_at.a, min_at.b, min_at.c) if min_at else None)
    for t in n74_bad:
        rep.add(f"c < N^(7/4) at ({t.a},{t.b},{t.c})", False, witness=(t.a, t.b, t.c))
    rep.add(f"c < N^(7/4) for all {len(triples)} individually checked triples (exact c^4 < N^7)",
            not n74_bad)
    if c_max > full_below:
        bulk = bulk_lemma(c_max, prec)
        rep.extend(bulk, prefix="bulk: ")
        rep.add(f"remaining {total - len(triples)} triples have N >= c and follow from the bulk estimate",
                bulk.status, witness=(total - len(triples),))
        rep.data["bulk_omega_range"] = bulk.data["omega_range"]
    rep.data["individual_small_triples"] = n_small
    ranked = sorted((t for t in triples if t.radical < t.c or c_max <= full_below), key=AbcTriple.sort_key)
    top_list = ranked[:top]
    rep.data["top"] = [t.to_dict() for t in top_list]
    rep.elapsed = time.perf_counter() - t0
    return ScanResult(rep, triples, top_list)


# ingestion and output ---------------------------------------------------------

def parse_triple_line(line: str, lineno: int) -> tuple[int, int, int] | None:
    s = line.strip()
    if not s or s.startswith("#"):
        return None
    parts = s.split()
    if len(parts) != 3:
        raise DomainError(f"line {lineno}: expected 'a b c', got {s!r}")
    try:
        a, b, c = (int(p, 10) for p in parts)
    except ValueError:
        raise DomainError(f"line {lineno}: not decimal integers: {s!r}") from None
    return a, b, c


def ingest_triples(path, prec: int = DEFAULT_PRECISION) -> list[AbcTriple]:
    out = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        abc = parse_triple_line(line, lineno)
        if abc is None:
            continue
        a, b, c = abc
        if min(a, b, c) < 1:
            raise DomainError(f"line {lineno}: a, b, c must be positive")
        if a + b != c:
            raise DomainError(f"line {lineno}: a + b != c ({a} + {b} != {c})")
        if not coprime3(a, b, c):
            raise DomainError(f"line {lineno}: ({a}, {b}, {c}) not pairwise coprime")
        out.append(AbcTriple.of(a, b, c, prec))
    return out


def check_triples(triples: list[AbcTriple], name: str = "abc check") -> VerificationReport:
    rep = VerificationReport(name, "c < (6/5) N (log N)^omega/omega! and c < N^(7/4)")
    for t in triples:
        st, m = t.below_baker()
        rep.add(f"({t.a},{t.b},{t.c}): c < Baker bound", st, m, (t.a, t.b, t.c))
        rep.add(f"({t.a},{t.b},{t.c}): c < N^(7/4)", t.below_n_7_4(), witness=(t.a, t.b, t.c))
    rep.data["triples"] = [t.to_dict() for t in triples]
    return rep


def triples_to_csv(triples) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for t in triples:
        q, m = t.quality, t.baker_margin
        w.writerow([t.a, t.b, t.c, t.radical, t.omega, f"{float(q.midpoint):.12g}",
                    f"{float(m.midpoint):.12g}"])
    return buf.getvalue()


def triples_to_json(triples) -> str:
    from .report import _jsonable
    return json.dumps([_jsonable(t.to_dict()) for t in triples], indent=2)
