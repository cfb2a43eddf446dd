"""GCD, cofactors and squarefree parts over Q."""
from __future__ import annotations

import random

from .modular import gcd_integer, trivial_gcd_certificate
from .poly import MultiPoly, canonical_vars


def gcd_poly(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Primitive gcd with positive leading coefficient; gcd(p, 0) = primitive(p)."""
    p, q = p._align(q)
    vars = p.vars
    if not q:
        return p.primitive()
    if not p:
        return q.primitive()
    if p.is_constant() or q.is_constant():
        return MultiPoly.const(1, vars)
    a, b = p.primitive(), q.primitive()
    if a == b:
        return a
    used = canonical_vars(a.free_vars() + b.free_vars())
    a, b = a.embed(used), b.embed(used)
    # monomial content handled separately: cheap and common
    mono = tuple(min(ea, eb) for ea, eb in zip(_min_exps(a), _min_exps(b)))
    if any(mono):
        a = _shift(a, mono)
        b = _shift(b, mono)
    if trivial_gcd_certificate(a, b, random.Random(1)):
        g = MultiPoly.const(1, used)
    elif b.divides(a):
        g = b
    elif a.divides(b):
        g = a
    else:
        g = gcd_integer(a, b)
    if any(mono):
        g = g * MultiPoly._raw({mono: 1}, used)
    return g.embed(vars).primitive()


def _min_exps(p: MultiPoly):
    n = len(p.vars)
    return tuple(min(e[i] for e in p.terms) for i in range(n))


def _shift(p: MultiPoly, mono):
    return MultiPoly._raw({tuple(x - y for x, y in zip(e, mono)): c for e, c in p.terms.items()}, p.vars)


def cofactors(p: MultiPoly, q: MultiPoly):
    """(g, p/g, q/g)."""
    g = gcd_poly(p, q)
    return g, p.divexact(g), q.divexact(g)


def squarefree_part(p: MultiPoly, var: str | None = None) -> MultiPoly:
    """p / gcd(p, dp/dvar), primitive.

    With ``var`` omitted every variable is reduced in turn, which removes all
    repeated factors.
    """
    if not p:
        raise ValueError("squarefree part of the zero polynomial")
    if p.is_constant():
        return MultiPoly.const(1, p.vars)
    names = [var] if var is not None else list(p.free_vars())
    out = p.primitive()
    for v in names:
        d = out.diff(v)
        if not d:
            continue
        g = gcd_poly(out, d)
        if not g.is_constant():
            out = out.divexact(g).primitive()
    return out


def squarefree_decomposition(p: MultiPoly, var: str):
    """Yun's algorithm in ``var``: list of (factor, multiplicity), var-free content dropped."""
    a = p.primitive()
    b = a.diff(var)
    if not b:
        return []
    out = []
    c = gcd_poly(a, b)
    w = a.divexact(c)
    y = b.divexact(c)
    i = 1
    while w.degree(var) > 0:
        z = y - w.diff(var)
        g = gcd_poly(w, z) if z else w.primitive()
        if g.degree(var) > 0:
            out.append((g, i))
        w = w.divexact(g)
        y = z.divexact(g) if z else z
        i += 1
    return out
