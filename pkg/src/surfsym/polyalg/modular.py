"""Multivariate arithmetic over Z/pZ and the modular GCD.

Polynomials mod p are plain dicts ``{exponent tuple: int}``; the variable
tuple is tracked by the caller.  The recursive form used inside the GCD
maps the leading ``n-1`` exponents to a dense list in the last variable.
"""
from __future__ import annotations

import random
from fractions import Fraction
from math import gcd as igcd
from typing import Dict, Tuple

from .. import nmod
from .poly import MultiPoly

Exp = Tuple[int, ...]
PolyP = Dict[Exp, int]


class BadPrime(ArithmeticError):
    """A coefficient denominator vanishes modulo the chosen prime."""


def reduce_poly(p: MultiPoly, prime: int) -> PolyP:
    out = {}
    for e, c in p.terms.items():
        if isinstance(c, Fraction):
            d = c.denominator % prime
            if not d:
                raise BadPrime(prime)
            v = c.numerator * pow(d, prime - 2, prime) % prime
        else:
            v = c % prime
        if v:
            out[e] = v
    return out


def symmetric(c: int, m: int) -> int:
    return c - m if c > m // 2 else c


def lift_poly(f: PolyP, m: int, vars) -> MultiPoly:
    return MultiPoly._raw({e: symmetric(c, m) for e, c in f.items() if c % m}, tuple(vars))


def eval_point(f: PolyP, point, p: int) -> int:
    """Evaluate at a full point (one value per variable)."""
    n = len(point)
    pw = [dict() for _ in range(n)]
    acc = 0
    for e, c in f.items():
        v = c
        for i, k in enumerate(e):
            if k:
                x = pw[i].get(k)
                if x is None:
                    x = pw[i][k] = pow(point[i], k, p)
                v = v * x % p
        acc += v
    return acc % p


def univariate_image(f: PolyP, i: int, point, p: int):
    """Dense list in variable ``i`` after substituting ``point`` for the others."""
    pw = {}
    out: Dict[int, int] = {}
    for e, c in f.items():
        v = c
        for j, k in enumerate(e):
            if j != i and k:
                key = (j, k)
                x = pw.get(key)
                if x is None:
                    x = pw[key] = pow(point[j], k, p)
                v = v * x % p
        out[e[i]] = (out.get(e[i], 0) + v) % p
    if not out:
        return []
    lst = [0] * (max(out) + 1)
    for k, v in out.items():
        lst[k] = v
    return nmod.trim(lst)


def mul_p(a: PolyP, b: PolyP, p: int) -> PolyP:
    out: Dict[Exp, int] = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = (out.get(e, 0) + ca * cb) % p
    return {e: c for e, c in out.items() if c}


def monic_p(f: PolyP, p: int) -> PolyP:
    if not f:
        return {}
    lc = f[max(f)]
    if lc == 1:
        return dict(f)
    inv = pow(lc, p - 2, p)
    return {e: c * inv % p for e, c in f.items()}


# -- recursive form ---------------------------------------------------------

def _to_rec(f: PolyP):
    rec: Dict[Exp, list] = {}
    for e, c in f.items():
        lst = rec.setdefault(e[:-1], [])
        k = e[-1]
        if len(lst) <= k:
            lst.extend([0] * (k + 1 - len(lst)))
        lst[k] = c
    return rec


def _from_rec(rec) -> PolyP:
    out = {}
    for key, lst in rec.items():
        for k, c in enumerate(lst):
            if c:
                out[key + (k,)] = c
    return out


def gcd_mod(a: PolyP, b: PolyP, n: int, p: int, rng: random.Random) -> PolyP:
    """Monic (lex) GCD of two polynomials in ``n`` variables over Z/pZ."""
    if not a:
        return monic_p(b, p)
    if not b:
        return monic_p(a, p)
    if n == 0:
        return {(): 1}
    if n == 1:
        la = _to_rec(a)[()]
        lb = _to_rec(b)[()]
        g = nmod.gcd(la, lb, p)
        return {(k,): c for k, c in enumerate(g) if c}
    ra, rb = _to_rec(a), _to_rec(b)
    ca = _content(ra, p)
    cb = _content(rb, p)
    if len(ca) > 1:
        ra = {k: nmod.divmod_(v, ca, p)[0] for k, v in ra.items()}
    if len(cb) > 1:
        rb = {k: nmod.divmod_(v, cb, p)[0] for k, v in rb.items()}
    cont = nmod.gcd(ca, cb, p)
    ka, kb = max(ra), max(rb)
    lca, lcb = ra[ka], rb[kb]
    gam = nmod.gcd(lca, lcb, p)
    dega = max(len(v) for v in ra.values()) - 1
    degb = max(len(v) for v in rb.values()) - 1
    bound = len(gam) - 1 + min(dega, degb)
    best = None
    H = None
    q = [1]
    pts = 0
    used = set()
    while True:
        x = rng.randrange(p)
        if x in used:
            continue
        used.add(x)
        gx = nmod.eval_(gam, x, p)
        if not gx or not nmod.eval_(lca, x, p) or not nmod.eval_(lcb, x, p):
            continue
        ax = {k: v for k, v in ((k, nmod.eval_(v, x, p)) for k, v in ra.items()) if v}
        bx = {k: v for k, v in ((k, nmod.eval_(v, x, p)) for k, v in rb.items()) if v}
        c = gcd_mod(ax, bx, n - 1, p, rng)
        m = max(c)
        if best is not None and m > best:
            continue
        c = {k: v * gx % p for k, v in c.items()}
        if best is None or m < best:
            best = m
            H = {k: [v] for k, v in c.items()}
            q = [(-x) % p, 1]
            pts = 1
        else:
            qx = nmod.eval_(q, x, p)
            qinv = pow(qx, p - 2, p)
            keys = set(H) | set(c)
            newH = {}
            for k in keys:
                h = H.get(k, [])
                delta = (c.get(k, 0) - nmod.eval_(h, x, p)) * qinv % p
                if delta:
                    h = nmod.add(h, nmod.scale(q, delta, p), p)
                if h:
                    newH[k] = h
            H = newH
            q = nmod.mul(q, [(-x) % p, 1], p)
            pts += 1
        if pts > bound:
            break
    hc = _content(H, p)
    if len(hc) > 1:
        H = {k: nmod.divmod_(v, hc, p)[0] for k, v in H.items()}
    if len(cont) > 1:
        H = {k: nmod.mul(v, cont, p) for k, v in H.items()}
    return monic_p(_from_rec(H), p)


def _content(rec, p):
    g = []
    for v in rec.values():
        g = nmod.gcd(g, v, p) if g else nmod.monic(v, p)
        if len(g) == 1:
            break
    return g or [1]


# -- integer GCD --------------------------------------------------------------

def trivial_gcd_certificate(a: MultiPoly, b: MultiPoly, rng: random.Random, p: int = nmod.P61) -> bool:
    """True only if gcd(a, b) is certainly a constant.

    For each variable, substitute random values for the others keeping the
    leading coefficients of ``a`` nonzero; a constant univariate image gcd
    then bounds the degree of the true gcd in that variable by zero.
    """
    a, b = a._align(b)
    n = len(a.vars)
    ap, bp = reduce_poly(a, p), reduce_poly(b, p)
    for i in range(n):
        da, db = a.degree(a.vars[i]), b.degree(b.vars[i])
        if da <= 0 or db <= 0:
            continue
        for _attempt in range(3):
            pt = [rng.randrange(1, p) for _ in range(n)]
            ia = univariate_image(ap, i, pt, p)
            if len(ia) - 1 != da:
                continue
            ib = univariate_image(bp, i, pt, p)
            if len(nmod.gcd(ia, ib, p)) > 1:
                return False
            break
        else:
            return False
    return True


def gcd_integer(a: MultiPoly, b: MultiPoly, seed: int = 0) -> MultiPoly:
    """GCD of two integer, primitive polynomials over the same variables.

    Brown-style: images modulo word-size primes, CRT on the lex-normalised
    images scaled by the gcd of the leading coefficients, trial division
    over Z to certify.
    """
    vars = a.vars
    n = len(vars)
    rng = random.Random(seed)
    lca = a.terms[max(a.terms)]
    lcb = b.terms[max(b.terms)]
    gam = igcd(lca, lcb)
    best = None
    acc: PolyP = {}
    mod = 1
    last = None
    i = 0
    while True:
        p = nmod.prime(i)
        i += 1
        if lca % p == 0 or lcb % p == 0:
            continue
        g = gcd_mod(reduce_poly(a, p), reduce_poly(b, p), n, p, rng)
        m = max(g)
        if not any(m):
            return MultiPoly.const(1, vars)
        if best is not None and m > best:
            continue
        g = {e: c * gam % p for e, c in g.items()}
        if best is None or m < best:
            best, acc, mod, last = m, g, p, None
        else:
            acc = _crt(acc, mod, g, p)
            mod *= p
        cand = lift_poly(acc, mod, vars)
        if last is not None and cand == last:
            pp = cand.primitive()
            if pp.divides(a) and pp.divides(b):
                return pp
        last = cand


def _crt(f: PolyP, m: int, g: PolyP, p: int) -> PolyP:
    inv = pow(m % p, p - 2, p)
    out = {}
    for e in set(f) | set(g):
        x = f.get(e, 0)
        y = g.get(e, 0)
        t = (y - x) * inv % p
        out[e] = x + m * t
    return out


def may_divide(b: MultiPoly, a: MultiPoly, p: int = nmod.P61, seed: int = 3) -> bool:
    """False only if ``b`` certainly does not divide ``a`` (modular images)."""
    a, b = a._align(b)
    n = len(a.vars)
    if not b.terms or not a.terms:
        return True
    for v in a.vars:
        if b.degree(v) > a.degree(v):
            return False
    try:
        ap, bp = reduce_poly(a, p), reduce_poly(b, p)
    except BadPrime:
        return True
    rng = random.Random(seed)
    pt = [rng.randrange(1, p) for _ in range(n)]
    for i in range(n):
        ib = univariate_image(bp, i, pt, p)
        if len(ib) < 2:
            continue
        ia = univariate_image(ap, i, pt, p)
        if nmod.rem(ia, ib, p):
            return False
    return True
