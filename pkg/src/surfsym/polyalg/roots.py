"""Rational roots of univariate polynomials via p-adic lifting."""
from __future__ import annotations

from fractions import Fraction
from typing import List

from .. import nmod
from .poly import MultiPoly


def _int_coeffs(p: MultiPoly) -> List[int]:
    fv = p.free_vars()
    if len(fv) > 1:
        raise ValueError("expected a univariate polynomial")
    q = p.primitive()
    if not fv:
        return [q.constant_value()] if q else []
    i = q.vars.index(fv[0])
    deg = q.degree(fv[0])
    out = [0] * (deg + 1)
    for e, c in q.terms.items():
        out[e[i]] = c
    return out


def _eval_int(f, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(f):
        acc = acc * x + c
    return acc


def _deriv(f):
    return [i * f[i] for i in range(1, len(f))]


def rational_roots_list(f: List[int]) -> List[Fraction]:
    """Distinct rational roots of an integer coefficient list (low to high)."""
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    if len(f) <= 1:
        return []
    roots: List[Fraction] = []
    if f[0] == 0:
        roots.append(Fraction(0))
        k = next(i for i, c in enumerate(f) if c)
        f = f[k:]
    if len(f) <= 1:
        return roots
    if len(f) == 2:
        return sorted(roots + [Fraction(-f[0], f[1])])
    lc, tc = abs(f[-1]), abs(f[0])
    bound = max(lc, tc)
    # a prime keeping the degree and separability; failing that, f has a
    # repeated factor over Z and we pass to its squarefree part
    p = None
    for k in range(24):
        q = nmod.prime(k)
        if f[-1] % q == 0:
            continue
        fq = [c % q for c in f]
        if len(nmod.gcd(fq, nmod.deriv(fq, q), q)) == 1:
            p = q
            break
    if p is None:
        from .gcd import squarefree_part

        sq = squarefree_part(MultiPoly.from_univariate(f, "x"), "x")
        return sorted(set(roots + rational_roots_list(_int_coeffs(sq))))
    cand = nmod.roots([c % p for c in f], p)
    target = 2 * bound * bound + 1
    df = _deriv(f)
    for r0 in cand:
        x, m = _hensel(f, df, r0, p, target)
        q = nmod.ratrec(x, m, bound)
        if q is not None and _eval_int(f, q) == 0:
            roots.append(q)
    return sorted(set(roots))


def _hensel(f, df, r0, p, target):
    m = p
    r = r0
    while m < target:
        m = m * m
        fr = 0
        for c in reversed(f):
            fr = (fr * r + c) % m
        dr = 0
        for c in reversed(df):
            dr = (dr * r + c) % m
        r = (r - fr * pow(dr, -1, m)) % m
    return r, m


def rational_roots_univar(p: MultiPoly) -> List[Fraction]:
    """All distinct rational roots of a nonzero univariate polynomial."""
    if not p:
        raise ValueError("rational roots of the zero polynomial")
    return rational_roots_list(_int_coeffs(p))
