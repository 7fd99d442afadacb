"""Independent reference computations used by the tests.

Nothing here imports from bakerabc: values come from mpmath, sympy or plain
brute force, so agreement with the package is a genuine second route.
"""

from functools import lru_cache
from math import gcd, isqrt

import mpmath as mp
import sympy

DPS = 50


@lru_cache(maxsize=None)
def theta_prefix(n: int) -> tuple:
    """theta(p_1), ..., theta(p_n) at DPS digits."""
    with mp.workdps(DPS):
        out, s = [], mp.mpf(0)
        for p in sympy.primerange(2, sympy.prime(n) + 1):
            s += mp.log(p)
            out.append(s)
    return tuple(out)


def omega_eps_oracle(num: int, den: int, w_cap: int = 8000) -> tuple[int, int, float]:
    """(omega_1, omega_eps, log N_eps) by linear scans in mpmath."""
    with mp.workdps(DPS):
        eps = mp.mpf(num) / den
        w1 = None
        for w in range(5, w_cap):
            x = mp.log(w) + mp.log(mp.log(w)) - mp.mpf("1.076869")
            if eps * x - mp.log(x) >= 1:
                w1 = w
                break
        th = theta_prefix(w1)
        w = w1
        while w >= 1:
            t = th[w - 1]
            ok_a = t >= w / eps
            ok_b = mp.loggamma(w + 1) + eps * t - w * mp.log(t) > mp.log(2 * mp.pi * w) / 2
            if not (ok_a and ok_b):
                break
            w -= 1
        return w1, w + 1, float(th[w])


def radical(n: int) -> int:
    r = 1
    for p in sympy.factorint(n):
        r *= p
    return r


def abc_triples_brute(c_max: int):
    for c in range(2, c_max + 1):
        for a in range(1, c // 2 + 1):
            if gcd(a, c) == 1:
                yield a, c - a, c


def baker_bound_mp(N: int) -> mp.mpf:
    w = len(sympy.factorint(N))
    with mp.workdps(DPS):
        return mp.mpf(6) / 5 * N * mp.log(N) ** w / mp.factorial(w)


def iroot_brute(n: int, k: int) -> int:
    return int(sympy.integer_nthroot(n, k)[0])


def repunit_brute(x: int, m: int) -> int:
    return sum(x ** i for i in range(m))


def nl_brute(x_max, n_max, q_max):
    out = []
    for x in range(2, x_max + 1):
        for n in range(3, n_max + 1):
            v = repunit_brute(x, n)
            for q in range(2, q_max + 1):
                y, exact = sympy.integer_nthroot(v, q)
                if exact and y > 1:
                    out.append((x, int(y), n, q))
    return sorted(out)


def goor_brute(y_max, n_max):
    """For each repunit value of a small base, binary-search every longer-base representation."""
    hits = set()
    for y in range(2, y_max + 1):
        for n in range(4, n_max + 1):
            v = repunit_brute(y, n)
            for m in range(3, n):
                lo, hi = y + 1, v
                while lo < hi:
                    mid = (lo + hi) // 2
                    if repunit_brute(mid, m) < v:
                        lo = mid + 1
                    else:
                        hi = mid
                if repunit_brute(lo, m) == v:
                    hits.add((v, lo, y, m, n))
    return sorted(hits)


def fc_brute(power_max, min_exp=3):
    """Positive primitive x^p + y^q = z^r with all powers <= power_max, by set lookup."""
    powers = {}
    e = min_exp
    while 2 ** e <= power_max:
        b = 2
        while b ** e <= power_max:
            powers.setdefault(b ** e, []).append((b, e))
            b += 1
        e += 1
    pv = sorted(powers)
    found = set()
    for i, u in enumerate(pv):
        for v in pv[i:]:
            if u + v > power_max:
                break
            for z, r in powers.get(u + v, ()):
                for x, p in powers[u]:
                    for y, q in powers[v]:
                        if gcd(gcd(x, y), z) == 1:
                            found.add((x, p, y, q, z, r))
        if u + 1 in powers:
            for z, r in powers[u + 1]:
                for y, q in powers[u]:
                    found.add((1, 0, y, q, z, r))
    return found


def is_perfect_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n
