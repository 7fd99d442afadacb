"""Prime tables: p_i, pi(x), and enclosures of theta(x) = sum of log p for p <= x."""

from __future__ import annotations

import math
import threading
import time
from fractions import Fraction

import numpy as np
from gmpy2 import mpfr

from .arith import legendre
from .errors import DomainError, ResourceLimitError, TableRangeError
from .report import Status, VerificationReport
from .verified import DEFAULT_PRECISION, VerifiedReal, _down, _up, decide, log, log_factorial

# A bool sieve of this many entries is about 2 GB.
MAX_TABLE_LIMIT = 2_000_000_000
# Each step of the theta prefix adds at most a few ulps of the running sum, so the
# final width must stay below n * theta * 2^(THETA_SLACK_BITS - prec).
THETA_SLACK_BITS = 4
EXACT_PRIMORIAL_MAX_INDEX = 200


def sieve(limit: int) -> np.ndarray:
    """All primes ``<= limit`` as an int64 array."""
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    is_p = np.ones(limit + 1, dtype=bool)
    is_p[:2] = False
    is_p[4::2] = False
    for p in range(3, math.isqrt(limit) + 1, 2):
        if is_p[p]:
            is_p[p * p::2 * p] = False
    return np.flatnonzero(is_p).astype(np.int64)


class PrimeTable:
    """Immutable table of the primes up to ``limit``.

    ``theta_lower[i]`` / ``theta_upper[i]`` enclose theta(p_{i+1}), i.e. the
    prefix sum of logs up to and including the (i+1)-th prime, accumulated with
    downward / upward rounding respectively.
    """

    def __init__(self, limit: int, precision: int = DEFAULT_PRECISION, _primes=None):
        if limit < 2:
            raise DomainError("prime tables need limit >= 2")
        if limit > MAX_TABLE_LIMIT:
            raise ResourceLimitError(f"limit {limit} exceeds the table budget {MAX_TABLE_LIMIT}")
        self.limit = int(limit)
        self.precision = precision
        self.primes = sieve(self.limit) if _primes is None else _primes
        self.primes.setflags(write=False)
        self._prime_list = self.primes.tolist()
        self.theta_lower, self.theta_upper = self._theta_prefix(precision)
        self._primorials = [1]
        for p in self._prime_list[:EXACT_PRIMORIAL_MAX_INDEX]:
            self._primorials.append(self._primorials[-1] * p)
        self._lock = threading.Lock()
        self._rescaled: dict[int, PrimeTable] = {}

    def _theta_prefix(self, prec: int):
        dn, up = _down(prec), _up(prec)
        lo_acc = up_acc = mpfr(0, prec)
        lows, ups = [], []
        for p in self._prime_list:
            x = mpfr(p, prec)  # exact: primes here are far below 2**prec
            lo_acc = dn.add(lo_acc, dn.log(x))
            up_acc = up.add(up_acc, up.log(x))
            lows.append(lo_acc)
            ups.append(up_acc)
        cap = mpfr(2, prec) ** (THETA_SLACK_BITS - prec) * len(ups) * max(1, ups[-1]) if ups else 0
        if ups and up.sub(ups[-1], lows[-1]) > cap:
            raise ArithmeticError("theta prefix enclosure wider than the radius cap")
        return lows, ups

    def at_precision(self, prec: int) -> "PrimeTable":
        """The same table with theta prefixes recomputed at ``prec`` bits."""
        if prec == self.precision:
            return self
        with self._lock:
            t = self._rescaled.get(prec)
            if t is None:
                t = PrimeTable(self.limit, prec, _primes=self.primes)
                self._rescaled[prec] = t
            return t

    def __len__(self) -> int:
        return len(self._prime_list)

    def __repr__(self) -> str:
        return f"PrimeTable(limit={self.limit}, primes={len(self)}, precision={self.precision})"

    # exact queries -----------------------------------------------------------

    def nth_prime(self, i: int) -> int:
        if i < 1:
            raise DomainError("primes are indexed from 1")
        if i > len(self._prime_list):
            raise TableRangeError(f"p_{i} exceeds table limit {self.limit}")
        return self._prime_list[i - 1]

    def prime_count(self, x) -> int:
        """pi(x) for real ``x`` (ints and Fractions are floored exactly)."""
        n = math.floor(x)
        if n > self.limit:
            raise TableRangeError(f"pi({x}) needs primes beyond {self.limit}")
        if n < 2:
            return 0
        return int(np.searchsorted(self.primes, n, side="right"))

    def is_prime(self, n: int) -> bool:
        if n > self.limit:
            raise TableRangeError(f"{n} beyond table limit {self.limit}")
        if n < 2:
            return False
        i = int(np.searchsorted(self.primes, n))
        return i < len(self) and self._prime_list[i] == n

    def primes_upto(self, x: int) -> list[int]:
        return self._prime_list[: self.prime_count(x)]

    def primorial(self, i: int) -> int:
        """Exact Theta(p_i) = p_1 * ... * p_i."""
        if i > len(self._prime_list):
            raise TableRangeError(f"p_{i} exceeds table limit {self.limit}")
        if i < len(self._primorials):
            return self._primorials[i]
        return math.prod(self._prime_list[:i])

    # enclosures ----------------------------------------------------------------

    def log_primorial(self, i: int) -> VerifiedReal:
        """Enclosure of theta(p_i); theta(p_0) = 0."""
        if i < 0:
            raise DomainError("negative prime index")
        if i == 0:
            return VerifiedReal.exact(0, self.precision)
        if i > len(self._prime_list):
            raise TableRangeError(f"p_{i} exceeds table limit {self.limit}")
        enc = VerifiedReal(self.theta_lower[i - 1], self.theta_upper[i - 1], self.precision)
        if i <= EXACT_PRIMORIAL_MAX_INDEX:
            enc = enc.intersect(log(VerifiedReal.exact(self.primorial(i), self.precision)))
        return enc

    def theta(self, x) -> VerifiedReal:
        return self.log_primorial(self.prime_count(x))


def build_table(limit: int, precision: int = DEFAULT_PRECISION) -> PrimeTable:
    return PrimeTable(limit, precision)


def nth_prime(table: PrimeTable, i: int) -> int:
    return table.nth_prime(i)


def prime_count(table: PrimeTable, x) -> int:
    return table.prime_count(x)


def theta(table: PrimeTable, x) -> VerifiedReal:
    return table.theta(x)


def log_primorial(table: PrimeTable, i: int) -> VerifiedReal:
    return table.log_primorial(i)


def nth_prime_upper_bound(n: int) -> int:
    """An integer >= p_n (Rosser: p_n < n(log n + log log n) for n >= 6)."""
    if n < 6:
        return 13
    ln = math.log(n)
    # generous slack absorbs any floating point error in this sizing estimate
    return int(n * (ln + math.log(ln)) * 1.01) + 100


def table_for_index(n: int, precision: int = DEFAULT_PRECISION) -> PrimeTable:
    """A table guaranteed to contain p_n."""
    t = PrimeTable(nth_prime_upper_bound(n), precision)
    if len(t) < n:  # sizing is only a heuristic aid; enforce the real requirement
        t = PrimeTable(2 * t.limit, precision)
    return t


_shared: dict[tuple[int, int], PrimeTable] = {}
_shared_lock = threading.Lock()


def shared_table(limit: int, precision: int = DEFAULT_PRECISION) -> PrimeTable:
    """Process-wide cache so independent checks can reuse one sieve."""
    with _shared_lock:
        for (lim, prec), t in _shared.items():
            if lim >= limit and prec == precision:
                return t
        t = PrimeTable(limit, precision)
        _shared[(limit, precision)] = t
        return t


# explicit prime and factorial estimates ------------------------------------------------

PI_UPPER_COEFF = Fraction("1.2762")
THETA_UPPER_COEFF = Fraction("1.000081")
ROBIN_CONSTANT = Fraction("1.076869")


class _SlackTracker:
    """Running minimum slack plus counts of failing / undecided points."""

    def __init__(self):
        self.min_margin = None
        self.argmin = None
        self.checked = 0
        self.failed: list[int] = []
        self.undecided: list[int] = []

    def record(self, point, status: Status, margin):
        self.checked += 1
        if status is Status.FAIL:
            self.failed.append(point)
        elif status is Status.UNDECIDED:
            self.undecided.append(point)
        lower = margin.lower if isinstance(margin, VerifiedReal) else margin
        if self.min_margin is None or lower < _lower(self.min_margin):
            self.min_margin, self.argmin = margin, point

    @property
    def status(self) -> Status:
        if self.failed:
            return Status.FAIL
        return Status.UNDECIDED if self.undecided else Status.PASS

    def emit(self, rep, label: str):
        witness = self.argmin if isinstance(self.argmin, tuple) else (self.argmin,)
        rep.add(label, self.status, self.min_margin, witness)
        rep.data[label] = {"points_checked": self.checked,
                           "failures": self.failed[:20], "undecided": self.undecided[:20]}


def _lower(m):
    return m.lower if isinstance(m, VerifiedReal) else m


def _pi_bound_margin(x: int, count: int, prec: int) -> VerifiedReal:
    """x/log x * (1 + 1.2762/log x) - count."""
    lx = log(VerifiedReal.exact(x, prec))
    return x / lx * (1 + PI_UPPER_COEFF / lx) - count


def _pn_margin(i: int, value: VerifiedReal | int, const: Fraction, prec: int) -> VerifiedReal:
    """value - i(log i + log log i - const); the i = 1 term is -inf so the margin is +inf."""
    if i == 1:
        inf = mpfr("inf")
        return VerifiedReal(inf, inf, prec)
    dn, up = _down(prec), _up(prec)
    x = mpfr(i, prec)
    l_lo, l_hi = dn.log(x), up.log(x)
    c = VerifiedReal.exact(const, prec)
    br_lo = dn.sub(dn.add(l_lo, dn.log(l_lo)), c.upper)
    br_hi = up.sub(up.add(l_hi, up.log(l_hi)), c.lower)
    rhs = VerifiedReal(dn.mul(br_lo, x), up.mul(br_hi, x), prec)
    return VerifiedReal.exact(value, prec) - rhs if not isinstance(value, VerifiedReal) else value - rhs


def _robbins_margins(k: int, prec: int) -> tuple[VerifiedReal, VerifiedReal]:
    """(log k! - lower Robbins form, upper Robbins form - log k!)."""
    lk = log_factorial(k, prec)
    kk = VerifiedReal.exact(k, prec)
    base = log(VerifiedReal.pi(prec) * (2 * k)) * Fraction(1, 2) + kk * log(kk) - k
    return lk - (base + Fraction(1, 12 * k + 1)), base + Fraction(1, 12 * k) - lk


def _ord_factorial_slack(p: int, k_cap: int) -> tuple[int, Fraction, int]:
    """Exact certified slack of ord_p(k!) >= (k-p)/(p-1) - log(k-1)/log p over p < k <= k_cap.

    log(k-1)/log p >= t where p^t <= k-1 < p^(t+1), so the rational quantity
    ord_p(k!) - (k-p)/(p-1) + t is a lower bound for the true slack.
    Returns (argmin k, min bound, count).
    """
    ks = np.arange(p + 1, k_cap + 1, dtype=np.int64)
    ords = np.zeros_like(ks)
    t = np.zeros_like(ks)
    q = p
    while q <= k_cap:
        ords += ks // q
        t += (ks - 1) >= q
        q *= p
    scaled = (p - 1) * ords - (ks - p) + (p - 1) * t  # (p-1) * bound, exact
    j = int(np.argmin(scaled))
    return int(ks[j]), Fraction(int(scaled[j]), p - 1), len(ks)


def verify_lemma1(table: PrimeTable, x_max: int, k_sample_cap: int = 10 ** 4,
                  prec: int | None = None) -> VerificationReport:
    """Check the six prime and factorial estimates on [1, x_max] and k <= k_sample_cap.

    pi and theta are step functions jumping at primes.  For x >= 5 the pi upper
    bound is increasing (its derivative changes sign at log x ~ 1.4644), so on
    each gap [p_i, p_{i+1}) the binding point is p_i; below 5, pi(x) <= 2 < e
    <= x/log x.  The theta bound is increasing everywhere, so again only the
    primes matter.
    """
    t0 = time.perf_counter()
    prec = prec or table.precision
    if x_max > table.limit:
        raise TableRangeError(f"x_max {x_max} exceeds table limit {table.limit}")
    if x_max < 2:
        raise DomainError("x_max must be at least 2")
    if k_sample_cap < 2:
        raise DomainError("k_sample_cap must be at least 2")
    tab = table.at_precision(prec)
    rep = VerificationReport(
        "prime estimates", "prime counting, p_i and theta(p_i) bounds, theta(x) < 1.000081x, "
                  "ord_p(k!) lower bound, Robbins factorial bounds")
    n = table.prime_count(x_max)
    primes = table.primes_upto(x_max)

    est_i, est_ii, est_iii, est_iv = (_SlackTracker() for _ in range(4))
    rep.add("pi bound for 1 < x < 5: pi(x) <= 2 < e <= x/log x", True)
    for i, p in enumerate(primes, start=1):
        if p >= 5:
            st, m = decide(lambda pr: _pi_bound_margin(p, i, pr), strict=False, prec=prec)
            est_i.record(p, st, m)
        st, m = decide(lambda pr: _pn_margin(i, p, Fraction(1), pr), strict=False, prec=prec)
        est_ii.record(i, st, m)
        st, m = decide(lambda pr: _pn_margin(i, table.at_precision(pr).log_primorial(i),
                                             ROBIN_CONSTANT, pr), strict=False, prec=prec)
        est_iii.record(i, st, m)
        st, m = decide(lambda pr: THETA_UPPER_COEFF * p - table.at_precision(pr).log_primorial(i),
                       prec=prec)
        est_iv.record(p, st, m)
    est_i.emit(rep, "(i) pi(x) <= x/log x (1 + 1.2762/log x)")
    est_ii.emit(rep, "(ii) p_i >= i(log i + log log i - 1)")
    est_iii.emit(rep, "(iii) theta(p_i) >= i(log i + log log i - 1.076869)")
    est_iv.emit(rep, "(iv) theta(x) < 1.000081 x")

    est_v = _SlackTracker()
    k_primes = table.primes_upto(k_sample_cap - 1) if k_sample_cap - 1 <= table.limit else None
    if k_primes is None:
        raise TableRangeError("k_sample_cap exceeds the table")
    for p in k_primes:
        k, bound, count = _ord_factorial_slack(p, k_sample_cap)
        status = Status.PASS if bound > 0 else Status.UNDECIDED
        if status is not Status.PASS:
            # the rational lower bound is not enough; decide the real inequality at the argmin
            status, _ = decide(lambda pr: legendre(k, p) - Fraction(k - p, p - 1)
                               + log(VerifiedReal.exact(k - 1, pr)) / log(VerifiedReal.exact(p, pr)),
                               strict=False, prec=prec)
        est_v.record((p, k), status, bound)
        est_v.checked += count - 1
    est_v.emit(rep, "(v) ord_p(k!) >= (k-p)/(p-1) - log(k-1)/log p")

    lo_t, hi_t = _SlackTracker(), _SlackTracker()
    for k in range(1, k_sample_cap + 1):
        st_lo, m_lo = decide(lambda pr: _robbins_margins(k, pr)[0], strict=False, prec=prec)
        st_hi, m_hi = decide(lambda pr: _robbins_margins(k, pr)[1], strict=False, prec=prec)
        lo_t.record(k, st_lo, m_lo)
        hi_t.record(k, st_hi, m_hi)
    lo_t.emit(rep, "(vi) k! >= sqrt(2 pi k)(k/e)^k e^(1/(12k+1))")
    hi_t.emit(rep, "(vi) k! <= sqrt(2 pi k)(k/e)^k e^(1/(12k))")

    rep.data["verified_domain"] = {"x_max": x_max, "prime_count": n, "k_sample_cap": k_sample_cap}
    rep.elapsed = time.perf_counter() - t0
    return rep

