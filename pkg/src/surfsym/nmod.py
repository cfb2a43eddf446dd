"""Dense univariate arithmetic over Z/pZ with backend selection.

The compiled ``_nmod`` extension is used when it imports; otherwise the
pure-Python twin ``_nmod_py``.  Setting ``SURFSYM_PURE=1`` forces the
fallback.
"""
from __future__ import annotations

import os
import random

if os.environ.get("SURFSYM_PURE"):
    from . import _nmod_py as _k
    BACKEND = "python"
else:
    try:
        from . import _nmod as _k  # type: ignore[attr-defined]
        BACKEND = "cython"
    except ImportError:  # pragma: no cover - depends on build
        from . import _nmod_py as _k
        BACKEND = "python"

# 2**61 - 1, a Mersenne prime; leaves headroom for 128-bit products
P61 = (1 << 61) - 1
# the next primes below it, for multi-modular work
PRIMES = [
    P61,
    2305843009213693921,
    2305843009213693907,
    2305843009213693723,
    2305843009213693693,
    2305843009213693669,
    2305843009213693613,
    2305843009213693561,
]

trim = _k.trim
mul = _k.mul
mul_trunc = _k.mul_trunc
divmod_ = _k.divmod_
rem = _k.rem
monic = _k.monic
gcd = _k.gcd
powmod = _k.powmod
eval_ = _k.eval_
eval_many = _k.eval_many
interpolate = _k.interpolate
resultant = _k.resultant
nullspace = _k.nullspace
series_inv = _k.series_inv
eval2_series = _k.eval2_series


def is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, r = n - 1, 0
    while not d & 1:
        d >>= 1
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime(i: int) -> int:
    """The i-th prime of the fixed working list (extended on demand)."""
    while i >= len(PRIMES):
        c = PRIMES[-1] - 2
        while not is_probable_prime(c):
            c -= 2
        PRIMES.append(c)
    return PRIMES[i]


def add(a, b, p):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return trim(out)


def sub(a, b, p):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return trim(out)


def scale(a, c, p):
    c %= p
    if not c:
        return []
    return [x * c % p for x in a]


def deriv(a, p):
    return trim([i * a[i] % p for i in range(1, len(a))])


def inv(a: int, p: int) -> int:
    return pow(a, p - 2, p)


def _equal_degree_roots(f, p, rng):
    """Roots of a monic squarefree f that splits into distinct linear factors."""
    d = len(f) - 1
    if d == 0:
        return []
    if d == 1:
        return [(-f[0]) % p]
    while True:
        a = rng.randrange(p)
        g = gcd(sub(powmod([a, 1], (p - 1) // 2, f, p), [1], p), f, p)
        if 1 < len(g) < len(f):
            h = divmod_(f, g, p)[0]
            return _equal_degree_roots(g, p, rng) + _equal_degree_roots(monic(h, p), p, rng)


def roots(f, p, seed=0):
    """Distinct roots in Z/pZ of a polynomial, sorted."""
    f = trim([c % p for c in f])
    if len(f) <= 1:
        return []
    f = monic(f, p)
    out = []
    if f[0] == 0:
        out.append(0)
        k = 0
        while f[k] == 0:
            k += 1
        f = f[k:]
    if len(f) > 1:
        # product of the distinct linear factors: gcd(f, x^p - x)
        xp = powmod([0, 1], p, f, p)
        g = gcd(sub(xp, [0, 1], p), f, p)
        out.extend(_equal_degree_roots(g, p, random.Random(seed)))
    return sorted(set(out))


def ratrec(a: int, m: int, bound: int | None = None):
    """Rational reconstruction of a mod m as n/d with |n|, d <= bound; None if absent."""
    from fractions import Fraction
    from math import isqrt

    if bound is None:
        bound = isqrt(m // 2)
    a %= m
    r0, r1 = m, a
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    from math import gcd as igcd
    if igcd(r1, abs(s1)) != 1:
        return None
    return Fraction(r1, s1)
