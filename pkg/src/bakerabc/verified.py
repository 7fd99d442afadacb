"""Real intervals with outward (directed) rounding on top of MPFR.

Every MPFR operation used here is correctly rounded, so evaluating the lower
endpoint with ``RoundDown`` and the upper endpoint with ``RoundUp`` yields a
guaranteed enclosure of the exact real result.  Operands are always promoted
to intervals before mixing; raw ints or rationals are never handed to MPFR
inside a directed context, because MPFR would round them in the context's
direction regardless of the sign of the other operand.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Callable, Union

import gmpy2
from gmpy2 import mpfr, mpq, mpz

from .errors import DomainError
from .report import Status

DEFAULT_PRECISION = 120
MAX_RETRIES = 4

Number = Union[int, Fraction, "VerifiedReal"]


@lru_cache(maxsize=None)
def _down(prec: int):
    return gmpy2.context(precision=prec, round=gmpy2.RoundDown, emax=gmpy2.get_emax_max(),
                         emin=gmpy2.get_emin_min())


@lru_cache(maxsize=None)
def _up(prec: int):
    return gmpy2.context(precision=prec, round=gmpy2.RoundUp, emax=gmpy2.get_emax_max(),
                         emin=gmpy2.get_emin_min())


def _to_mpq(value) -> mpq:
    if isinstance(value, (int, mpz)):
        return mpq(value)
    if isinstance(value, Rational):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, mpq):
        return value
    if isinstance(value, str):
        return mpq(Fraction(value).numerator, Fraction(value).denominator)
    raise TypeError(f"cannot enclose exact value of type {type(value).__name__}")


class VerifiedReal:
    """Closed interval ``[lower, upper]`` known to contain one real number."""

    __slots__ = ("lower", "upper", "prec")

    def __init__(self, lower, upper, prec: int = DEFAULT_PRECISION):
        if lower > upper:
            raise ValueError(f"empty interval [{lower}, {upper}]")
        self.lower = lower
        self.upper = upper
        self.prec = prec

    # construction -------------------------------------------------------

    @classmethod
    def exact(cls, value, prec: int = DEFAULT_PRECISION) -> "VerifiedReal":
        """Tightest enclosure of an exact int, Fraction or decimal string."""
        if isinstance(value, VerifiedReal):
            return value
        q = _to_mpq(value)
        if q.denominator == 1:
            z = q.numerator
            return cls(mpfr(z, prec, context=_down(prec)), mpfr(z, prec, context=_up(prec)), prec)
        return cls(mpfr(q, prec, context=_down(prec)), mpfr(q, prec, context=_up(prec)), prec)

    @classmethod
    def neg_infinity(cls, prec: int = DEFAULT_PRECISION) -> "VerifiedReal":
        ninf = mpfr("-inf")
        return cls(ninf, ninf, prec)

    @classmethod
    def pi(cls, prec: int = DEFAULT_PRECISION) -> "VerifiedReal":
        return cls(_down(prec).const_pi(), _up(prec).const_pi(), prec)

    # inspection ---------------------------------------------------------

    @property
    def is_neg_infinity(self) -> bool:
        return gmpy2.is_infinite(self.upper) and self.upper < 0

    @property
    def midpoint(self):
        if self.is_neg_infinity:
            return self.upper
        ctx = gmpy2.context(precision=self.prec + 8)
        return ctx.div(ctx.add(self.lower, self.upper), 2)

    @property
    def radius(self):
        if self.is_neg_infinity:
            return mpfr(0)
        ctx = _up(self.prec + 8)
        mid = self.midpoint
        return max(ctx.sub(self.upper, mid), ctx.sub(mid, self.lower))

    @property
    def width(self):
        return _up(self.prec).sub(self.upper, self.lower)

    def contains(self, value) -> bool:
        if isinstance(value, VerifiedReal):
            return self.lower <= value.lower and value.upper <= self.upper
        q = _to_mpq(value) if not isinstance(value, mpfr) else value
        return self.lower <= q <= self.upper

    def nested_in(self, other: "VerifiedReal") -> bool:
        return other.lower <= self.lower and self.upper <= other.upper

    def intersect(self, other: "VerifiedReal") -> "VerifiedReal":
        lo = max(self.lower, other.lower)
        hi = min(self.upper, other.upper)
        if lo > hi:
            raise ValueError("disjoint enclosures of the same quantity: unsound input")
        return VerifiedReal(lo, hi, max(self.prec, other.prec))

    def floor(self) -> int | None:
        """The exact floor if both endpoints agree on it, else None."""
        lo = int(gmpy2.floor(self.lower))
        hi = int(gmpy2.floor(self.upper))
        return lo if lo == hi else None

    def __repr__(self) -> str:
        return f"VerifiedReal([{self.lower}, {self.upper}])"

    def __str__(self) -> str:
        return f"{float(self.midpoint):.12g} ± {float(self.radius):.3g}"

    def __float__(self) -> float:
        return float(self.midpoint)

    # arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "VerifiedReal":
        if isinstance(other, VerifiedReal):
            return other
        return VerifiedReal.exact(other, self.prec)

    def __neg__(self) -> "VerifiedReal":
        return VerifiedReal(-self.upper, -self.lower, self.prec)

    def __add__(self, other) -> "VerifiedReal":
        o = self._coerce(other)
        p = max(self.prec, o.prec)
        return VerifiedReal(_down(p).add(self.lower, o.lower), _up(p).add(self.upper, o.upper), p)

    __radd__ = __add__

    def __sub__(self, other) -> "VerifiedReal":
        o = self._coerce(other)
        p = max(self.prec, o.prec)
        return VerifiedReal(_down(p).sub(self.lower, o.upper), _up(p).sub(self.upper, o.lower), p)

    def __rsub__(self, other) -> "VerifiedReal":
        return self._coerce(other) - self

    def __mul__(self, other) -> "VerifiedReal":
        o = self._coerce(other)
        p = max(self.prec, o.prec)
        dn, up = _down(p), _up(p)
        if self.lower >= 0 and o.lower >= 0:
            return VerifiedReal(dn.mul(self.lower, o.lower), up.mul(self.upper, o.upper), p)
        pairs = [(self.lower, o.lower), (self.lower, o.upper),
                 (self.upper, o.lower), (self.upper, o.upper)]
        return VerifiedReal(min(dn.mul(a, b) for a, b in pairs),
                            max(up.mul(a, b) for a, b in pairs), p)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "VerifiedReal":
        o = self._coerce(other)
        if o.lower <= 0 <= o.upper:
            raise DomainError("division by an enclosure that contains zero")
        p = max(self.prec, o.prec)
        dn, up = _down(p), _up(p)
        pairs = [(self.lower, o.lower), (self.lower, o.upper),
                 (self.upper, o.lower), (self.upper, o.upper)]
        return VerifiedReal(min(dn.div(a, b) for a, b in pairs),
                            max(up.div(a, b) for a, b in pairs), p)

    def __rtruediv__(self, other) -> "VerifiedReal":
        return self._coerce(other) / self

    def __pow__(self, n: int) -> "VerifiedReal":
        if not isinstance(n, int) or n < 0:
            raise TypeError("only non-negative integer powers; use rpow for rationals")
        if n == 0:
            return VerifiedReal.exact(1, self.prec)
        if self.lower >= 0:
            return VerifiedReal(_down(self.prec).pow(self.lower, n),
                                _up(self.prec).pow(self.upper, n), self.prec)
        result = self
        for _ in range(n - 1):
            result = result * self
        return result

    # comparisons (three-valued) -----------------------------------------

    def certainly_lt(self, other) -> bool:
        return self.upper < self._coerce(other).lower

    def certainly_le(self, other) -> bool:
        return self.upper <= self._coerce(other).lower

    def certainly_gt(self, other) -> bool:
        return self.lower > self._coerce(other).upper

    def certainly_ge(self, other) -> bool:
        return self.lower >= self._coerce(other).upper


# elementary functions ------------------------------------------------------

def enclose(value, prec: int = DEFAULT_PRECISION) -> VerifiedReal:
    return VerifiedReal.exact(value, prec)


def _as_interval(x, prec: int) -> VerifiedReal:
    return x if isinstance(x, VerifiedReal) else VerifiedReal.exact(x, prec)


def log(x, prec: int = DEFAULT_PRECISION) -> VerifiedReal:
    """Natural logarithm.  Exact integer arguments are converted once, outward."""
    x = _as_interval(x, prec)
    if x.lower <= 0:
        raise DomainError("log of an enclosure that is not strictly positive")
    return VerifiedReal(_down(x.prec).log(x.lower), _up(x.prec).log(x.upper), x.prec)


def exp(x, prec: int = DEFAULT_PRECISION) -> VerifiedReal:
    x = _as_interval(x, prec)
    return VerifiedReal(_down(x.prec).exp(x.lower), _up(x.prec).exp(x.upper), x.prec)


def sqrt(x, prec: int = DEFAULT_PRECISION) -> VerifiedReal:
    x = _as_interval(x, prec)
    if x.lower < 0:
        raise DomainError("sqrt of an enclosure with negative part")
    return VerifiedReal(_down(x.prec).sqrt(x.lower), _up(x.prec).sqrt(x.upper), x.prec)


def rpow(x, exponent, prec: int = DEFAULT_PRECISION) -> VerifiedReal:
    """``x ** exponent`` for positive ``x`` and exact rational ``exponent``."""
    x = _as_interval(x, prec)
    return exp(log(x) * Fraction(exponent))


def log_factorial(n: int, prec: int = DEFAULT_PRECISION) -> VerifiedReal:
    """Enclosure of ``log(n!)``.

    Small arguments go through the exact integer factorial; larger ones use
    MPFR's correctly rounded ``lngamma``.
    """
    if n < 0:
        raise DomainError("factorial of a negative integer")
    if n <= 200:
        f = math.factorial(n)
        if f == 1:
            return VerifiedReal.exact(0, prec)
        return log(VerifiedReal.exact(f, prec))
    arg = mpfr(n + 1, prec)  # exact: n + 1 < 2**prec
    return VerifiedReal(_down(prec).lngamma(arg), _up(prec).lngamma(arg), prec)


# deciding comparisons -----------------------------------------------------

def decide(margin: Callable[[int], VerifiedReal], *, strict: bool = True,
           prec: int = DEFAULT_PRECISION, retries: int = MAX_RETRIES
           ) -> tuple[Status, VerifiedReal]:
    """Decide ``margin > 0`` (or ``>= 0`` when not strict).

    ``margin(p)`` must rebuild the enclosure from scratch at precision ``p``.
    The precision doubles after each straddling attempt; once the retries are
    exhausted the verdict is UNDECIDED together with the last enclosure.
    """
    p = prec
    m = margin(p)
    for attempt in range(retries + 1):
        if strict:
            if m.lower > 0:
                return Status.PASS, m
            if m.upper <= 0:
                return Status.FAIL, m
        else:
            if m.lower >= 0:
                return Status.PASS, m
            if m.upper < 0:
                return Status.FAIL, m
        if attempt == retries:
            break
        p *= 2
        m = margin(p)
    return Status.UNDECIDED, m
