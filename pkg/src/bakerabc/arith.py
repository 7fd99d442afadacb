"""Exact integer arithmetic: factorization, radical, omega, P(n), ord_p.

Nothing in this module touches floating point.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import reduce
from typing import Callable, Iterable

import gmpy2

from .errors import DomainError

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)
# Miller-Rabin with the first 13 prime bases is deterministic below this bound.
_MR_DETERMINISTIC_BOUND = 3317044064679887385961981
_TRIAL_BOUND = 1 << 12


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    if n < _MR_DETERMINISTIC_BOUND:
        d, s = n - 1, 0
        while d % 2 == 0:
            d //= 2
            s += 1
        for a in _SMALL_PRIMES[:13]:
            x = pow(a, d, n)
            if x in (1, n - 1):
                continue
            for _ in range(s - 1):
                x = x * x % n
                if x == n - 1:
                    break
            else:
                return False
        return True
    return bool(gmpy2.is_prime(n, 64))


@dataclass(frozen=True)
class Factorization:
    """An integer together with its sorted prime-power decomposition."""

    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.value < 1:
            raise DomainError("factorizations are of positive integers")
        primes = [p for p, _ in self.factors]
        if primes != sorted(set(primes)):
            raise ValueError("primes must be strictly increasing")
        if any(e < 1 for _, e in self.factors):
            raise ValueError("exponents must be positive")
        if reconstruct(self.factors) != self.value:
            raise ValueError("factor list does not multiply out to value")

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    @property
    def radical(self) -> int:
        return math.prod(self.primes)

    @property
    def omega(self) -> int:
        return len(self.factors)

    @property
    def greatest_prime(self) -> int:
        return self.factors[-1][0] if self.factors else 1

    def ord(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0


def reconstruct(factors: Iterable[tuple[int, int]]) -> int:
    return math.prod(p ** e for p, e in factors)


def pollard_brent(n: int, seed: int = 1) -> int:
    """A non-trivial factor of the odd composite ``n``."""
    rng = random.Random(seed)
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def factorize(n: int, splitter: Callable[[int], int] = pollard_brent) -> Factorization:
    """Prime factorization of ``n >= 1``.

    Trial division removes factors below 4096; what remains is split with
    ``splitter`` (Pollard-Brent by default) and every piece is certified prime.
    """
    if n < 1:
        raise DomainError(f"cannot factorize {n}")
    counts: dict[int, int] = {}
    m = n
    for p in range(2, _TRIAL_BOUND):
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            counts[p] = e
    stack = [m] if m > 1 else []
    while stack:
        x = stack.pop()
        if is_prime(x):
            counts[x] = counts.get(x, 0) + 1
            continue
        root, exact = gmpy2.iroot(x, 2)
        if exact:
            stack.extend((int(root), int(root)))
            continue
        d = splitter(x)
        stack.extend((d, x // d))
    return Factorization(n, tuple(sorted(counts.items())))


def radical(n: int) -> int:
    if n < 1:
        raise DomainError("radical of a non-positive integer")
    return factorize(n).radical


def omega(n: int) -> int:
    if n < 1:
        raise DomainError("omega of a non-positive integer")
    return factorize(n).omega


def greatest_prime_factor(n: int) -> int:
    if n < 1:
        raise DomainError("P(n) of a non-positive integer")
    return factorize(n).greatest_prime


def ord_p(n: int, p: int) -> int:
    if n < 1:
        raise DomainError("ord_p of a non-positive integer")
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def legendre(k: int, p: int) -> int:
    """Exact exponent of the prime ``p`` in ``k!``."""
    e, q = 0, k
    while q:
        q //= p
        e += q
    return e


def gcd(a: int, b: int) -> int:
    return math.gcd(a, b)


def coprime3(a: int, b: int, c: int) -> bool:
    return math.gcd(a, b) == 1 and math.gcd(a, c) == 1 and math.gcd(b, c) == 1


def lcm_all(xs: Iterable[int]) -> int:
    return reduce(math.lcm, xs, 1)


# integer roots and repunits ------------------------------------------------

def iroot(n: int, k: int) -> int:
    """``floor(n ** (1/k))`` for ``n >= 0``, confirmed by neighbour checks."""
    if n < 0 or k < 1:
        raise DomainError("iroot needs n >= 0 and k >= 1")
    r = int(gmpy2.iroot(n, k)[0])
    while r ** k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    return r


def perfect_power_root(n: int, k: int) -> int | None:
    """``y`` with ``y**k == n`` if one exists."""
    r = iroot(n, k)
    return r if r ** k == n else None


def repunit(base: int, length: int) -> int:
    """``(base**length - 1) // (base - 1)``, i.e. ``1 + base + ... + base**(length-1)``."""
    if base < 2 or length < 1:
        raise DomainError("repunit needs base >= 2 and length >= 1")
    return (base ** length - 1) // (base - 1)
