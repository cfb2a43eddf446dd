"""Sylvester resultants: fraction-free Bareiss and a multi-modular variant."""
from __future__ import annotations

from fractions import Fraction

from .. import nmod
from .linalg import det_bareiss
from .modular import BadPrime, _crt, lift_poly, reduce_poly
from .poly import MultiPoly, canonical_vars


def sylvester_matrix(p: MultiPoly, q: MultiPoly, var: str):
    """Sylvester matrix with polynomial entries (coefficients in the other variables)."""
    p, q = p._align(q)
    rest = tuple(v for v in p.vars if v != var)
    m, n = p.degree(var), q.degree(var)
    cp = p.coeffs_in(var)
    cq = q.coeffs_in(var)
    zero = MultiPoly.const(0, rest)

    def row(coeffs, deg, shift, size):
        r = [zero] * size
        for k in range(deg + 1):
            r[shift + deg - k] = coeffs.get(k, zero).embed(rest)
        return r

    size = m + n
    rows = [row(cp, m, i, size) for i in range(n)]
    rows += [row(cq, n, i, size) for i in range(m)]
    return rows, rest


def _special(p: MultiPoly, q: MultiPoly, var: str):
    p, q = p._align(q)
    if not p and not q:
        raise ValueError("undefined resultant")
    rest = canonical_vars(v for v in p.vars if v != var)
    if not p or not q:
        return MultiPoly.const(0, rest)
    m, n = p.degree(var), q.degree(var)
    if m == 0:
        return (p ** n).embed(rest)
    if n == 0:
        return (q ** m).embed(rest)
    return None


def resultant_bareiss(p: MultiPoly, q: MultiPoly, var: str) -> MultiPoly:
    sp = _special(p, q, var)
    if sp is not None:
        return sp
    rows, rest = sylvester_matrix(p, q, var)
    d = det_bareiss(rows)
    if not isinstance(d, MultiPoly):
        d = MultiPoly.const(d, rest)
    return d.embed(rest)


def _l1(p: MultiPoly) -> Fraction:
    return sum(abs(Fraction(c)) for c in p.terms.values())


def resultant_modular(p: MultiPoly, q: MultiPoly, var: str) -> MultiPoly:
    """Evaluation/interpolation mod word primes, CRT up to a proven coefficient bound."""
    sp = _special(p, q, var)
    if sp is not None:
        return sp
    p, q = p._align(q)
    # clear denominators: Res(c p, d q) = c^n d^m Res(p, q)
    cp, cq = p.rational_content(), q.rational_content()
    a, b = p.scale(1 / cp), q.scale(1 / cq)
    m, n = a.degree(var), b.degree(var)
    vars = a.vars
    xi = vars.index(var)
    others = [i for i in range(len(vars)) if i != xi]
    bound = _l1(a) ** n * _l1(b) ** m
    acc = {}
    mod = 1
    k = 0
    while mod <= 2 * bound:
        pr = nmod.prime(k)
        k += 1
        try:
            fa, fb = reduce_poly(a, pr), reduce_poly(b, pr)
        except BadPrime:
            continue
        # formal degrees must survive reduction
        if not any(e[xi] == m for e in fa) or not any(e[xi] == n for e in fb):
            continue
        r = _res_rec(fa, fb, xi, others, m, n, pr, vars)
        acc = _crt(acc, mod, r, pr) if mod > 1 else r
        mod *= pr
    rest = tuple(vars[i] for i in others)
    res = lift_poly(acc, mod, rest)
    scale = Fraction(cp) ** n * Fraction(cq) ** m
    return res.scale(scale)


def _res_rec(fa, fb, xi, others, m, n, p, vars):
    """Resultant in variable xi as a dict keyed by exponents in ``others``."""
    if not others:
        ua = _dense(fa, xi)
        ub = _dense(fb, xi)
        r = nmod.resultant(ua, ub, p)
        return {(): r} if r else {}
    y = others[-1]
    dya = max(e[y] for e in fa)
    dyb = max(e[y] for e in fb)
    bound = m * dyb + n * dya
    xs, vals = [], []
    x = 0
    while len(xs) <= bound:
        x += 1
        ga = _eval_var(fa, y, x, p)
        gb = _eval_var(fb, y, x, p)
        if not any(e[xi] == m for e in ga) or not any(e[xi] == n for e in gb):
            continue
        xs.append(x)
        vals.append(_res_rec(ga, gb, xi, others[:-1], m, n, p, vars))
    keys = set()
    for v in vals:
        keys.update(v)
    out = {}
    for key in keys:
        coeffs = nmod.interpolate(xs, [v.get(key, 0) for v in vals], p)
        for d, c in enumerate(coeffs):
            if c:
                out[key + (d,)] = c
    return out


def _dense(f, i):
    deg = max(e[i] for e in f)
    lst = [0] * (deg + 1)
    for e, c in f.items():
        lst[e[i]] = c
    return lst


def _eval_var(f, i, x, p):
    out = {}
    pw = {}
    for e, c in f.items():
        k = e[i]
        if k:
            v = pw.get(k)
            if v is None:
                v = pw[k] = pow(x, k, p)
            c = c * v % p
        ne = e[:i] + (0,) + e[i + 1:]
        out[ne] = (out.get(ne, 0) + c) % p
    return {e: c for e, c in out.items() if c}


def resultant(p: MultiPoly, q: MultiPoly, var: str, method: str = "auto") -> MultiPoly:
    """Res_var(p, q): determinant of the Sylvester matrix with respect to ``var``.

    ``method`` is ``"bareiss"``, ``"modular"`` or ``"auto"`` (Bareiss for small
    matrices, modular otherwise; both are exact).
    """
    if method == "bareiss":
        return resultant_bareiss(p, q, var)
    if method == "modular":
        return resultant_modular(p, q, var)
    size = max(p.degree(var), 0) + max(q.degree(var), 0)
    nvars = len(set(p.free_vars()) | set(q.free_vars()))
    if size <= 4 or (size <= 8 and nvars <= 2):
        return resultant_bareiss(p, q, var)
    return resultant_modular(p, q, var)
