"""Rational branches of polynomial systems over Q(t, s).

A system is a list of equations in one or two unknowns whose coefficients
are polynomials in (t, s); each equation is stored as a sum of products
``a_k(t, s) * b_k(unknowns)``.  A rational branch is a solution
``unknowns = R(t, s)`` with R rational.

The branches are found from one generic base point (t0, s0):

1. the rational solutions at the base point are computed exactly;
2. each one is continued as a power series along D + 1 lines
   ``(t0 + e, s0 + lam * e)`` by Newton iteration modulo a word prime;
3. a Pade approximant on every line, interpolation in ``lam`` and rational
   reconstruction of the coefficients give a candidate R; more primes are
   added (CRT) until the reconstruction stabilizes.

Candidates are not verified here; callers check them exactly.
"""
from __future__ import annotations

import logging
import random
from fractions import Fraction
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from . import nmod
from .polyalg import MultiPoly, RationalFunction
from .polyalg.modular import BadPrime
from .polyalg.roots import rational_roots_univar

log = logging.getLogger(__name__)

ST = ("t", "s")


class SingularPoint(ArithmeticError):
    """The Jacobian of the system is not invertible at the base solution."""


class NoIsolatedSolutions(ArithmeticError):
    """The specialized system has a common component (zero resultant)."""


def _fmod(c, p: int) -> int:
    if isinstance(c, Fraction):
        d = c.denominator % p
        if not d:
            raise BadPrime(p)
        return c.numerator * pow(d, p - 2, p) % p
    return c % p


def _rows(f: MultiPoly, x: str, y: Optional[str], p: int) -> List[List[int]]:
    """Dense coefficient rows rows[i][j] of x^i y^j modulo p."""
    if not f:
        return []
    ix = f.vars.index(x) if x in f.vars else None
    iy = f.vars.index(y) if (y is not None and y in f.vars) else None
    dx = f.degree(x) if ix is not None else 0
    rows: List[List[int]] = [[] for _ in range(dx + 1)]
    for e, c in f.terms.items():
        i = e[ix] if ix is not None else 0
        j = e[iy] if iy is not None else 0
        r = rows[i]
        if len(r) <= j:
            r.extend([0] * (j + 1 - len(r)))
        r[j] = (r[j] + _fmod(c, p)) % p
    return rows


class Equation:
    """sum_k a_k(t, s) * b_k(unknowns)."""

    def __init__(self, terms: Sequence[Tuple[MultiPoly, MultiPoly]]):
        self.terms = [(a, b) for a, b in terms if a and b]

    @classmethod
    def from_poly(cls, f: MultiPoly, unknowns: Sequence[str]) -> "Equation":
        """Split a polynomial in (t, s, unknowns) by its (t, s) monomials."""
        groups: Dict[Tuple[int, int], Dict] = {}
        names = tuple(unknowns)
        idx_t = f.vars.index("t") if "t" in f.vars else None
        idx_s = f.vars.index("s") if "s" in f.vars else None
        idx_u = [f.vars.index(n) if n in f.vars else None for n in names]
        for e, c in f.terms.items():
            key = (e[idx_t] if idx_t is not None else 0, e[idx_s] if idx_s is not None else 0)
            ue = tuple(e[i] if i is not None else 0 for i in idx_u)
            g = groups.setdefault(key, {})
            g[ue] = g.get(ue, 0) + c
        terms = []
        for (i, j), g in groups.items():
            a = MultiPoly({(i, j): 1}, ST)
            b = MultiPoly(g, names)
            terms.append((a, b))
        return cls(terms)

    def at_base(self, t0, s0) -> MultiPoly:
        acc = None
        env = {"t": t0, "s": s0}
        for a, b in self.terms:
            c = a.subs(env)
            c = c.constant_value() if c else 0
            if c:
                term = b.scale(c)
                acc = term if acc is None else acc + term
        return acc if acc is not None else MultiPoly.const(0)


class _ModImage:
    """One equation reduced modulo p, ready for series evaluation."""

    def __init__(self, eq: Equation, unknowns, p):
        self.p = p
        x = unknowns[0]
        y = unknowns[1] if len(unknowns) > 1 else None
        self.a_rows = [_rows(a.embed(ST), "t", "s", p) for a, _ in eq.terms]
        self.b_rows = []
        for _, b in eq.terms:
            d = [_rows(b, x, y, p)]
            for v in unknowns:
                db = b.diff(v) if v in b.vars else MultiPoly.const(0)
                d.append(_rows(db, x, y, p))
            self.b_rows.append(d)

    def restrict(self, t0, s0, lam, n):
        p = self.p
        return [nmod.eval2_series(r, [t0, 1], [s0, lam], n, p) for r in self.a_rows]

    def values(self, a_line, X, n, nvars):
        """(E, [dE/dx_j]) as truncated series."""
        p = self.p
        u = X[0]
        v = X[1] if nvars > 1 else []
        out = [[] for _ in range(nvars + 1)]
        for a, rows in zip(a_line, self.b_rows):
            if not a:
                continue
            for k in range(nvars + 1):
                if not rows[k]:
                    continue
                val = nmod.eval2_series(rows[k], u, v, n, p)
                out[k] = nmod.add(out[k], nmod.mul_trunc(a, val, n, p), p)
        return out[0], out[1:]


def _pad(a, n):
    return list(a) + [0] * (n - len(a)) if len(a) < n else list(a[:n])


def newton_series(images, a_lines, x0, n, p):
    """Power series solution (mod e^n) through the base solution x0."""
    nv = len(x0)
    X = [[c % p] for c in x0]
    prec = 1
    while prec < n:
        prec = min(2 * prec, n)
        F, J = [], []
        for img, al in zip(images, a_lines):
            e, de = img.values([_pad(a, prec) for a in al], X, prec, nv)
            F.append(e)
            J.append(de)
        if nv == 1:
            j0 = J[0][0]
            if not j0 or j0[0] % p == 0:
                raise SingularPoint()
            d = [nmod.mul_trunc(F[0], nmod.series_inv(j0, prec, p), prec, p)]
        else:
            det = nmod.sub(nmod.mul_trunc(J[0][0], J[1][1], prec, p),
                           nmod.mul_trunc(J[0][1], J[1][0], prec, p), p)
            if not det or det[0] % p == 0:
                raise SingularPoint()
            di = nmod.series_inv(det, prec, p)
            d0 = nmod.sub(nmod.mul_trunc(J[1][1], F[0], prec, p), nmod.mul_trunc(J[0][1], F[1], prec, p), p)
            d1 = nmod.sub(nmod.mul_trunc(J[0][0], F[1], prec, p), nmod.mul_trunc(J[1][0], F[0], prec, p), p)
            d = [nmod.mul_trunc(d0, di, prec, p), nmod.mul_trunc(d1, di, prec, p)]
        X = [nmod.sub(_pad(x, prec), dx, p) for x, dx in zip(X, d)]
    return [_pad(x, n) for x in X]


def pade(series, deg, p):
    """(num, den) with den(0) = 1, deg <= deg each, den*series = num mod e^(2 deg + 1)."""
    n = 2 * deg + 1
    r0 = [0] * n + [1]
    r1 = nmod.trim(_pad(series, n))
    s0, s1 = [], [1]
    while len(r1) - 1 > deg:
        q, r = nmod.divmod_(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, nmod.sub(s0, nmod.mul(q, s1, p), p)
    if not s1 or len(s1) - 1 > deg or s1[0] % p == 0:
        return None
    c = nmod.inv(s1[0], p)
    return nmod.scale(r1, c, p), nmod.scale(s1, c, p)


def _shift_to_monomials(coef: Dict[Tuple[int, int], int], t0, s0, p):
    """sum c_(a,b) (t - t0)^a (s - s0)^b expanded into t^i s^j, mod p."""
    out: Dict[Tuple[int, int], int] = {}
    for (a, b), c in coef.items():
        if not c:
            continue
        for i in range(a + 1):
            ci = c * comb(a, i) * pow(-t0, a - i, p) % p
            for j in range(b + 1):
                v = ci * comb(b, j) * pow(-s0, b - j, p) % p
                if v:
                    out[(i, j)] = (out.get((i, j), 0) + v) % p
    return {k: v for k, v in out.items() if v}


def lines_to_bivariate(pairs, lams, deg, t0, s0, p):
    """Assemble num/den in (t, s) from Pade data on the lines (None if inconsistent)."""
    res = []
    for which in (0, 1):
        coef = {}
        for k in range(deg + 1):
            ys = [(_pad(pr[which], deg + 1))[k] for pr in pairs]
            poly = nmod.interpolate(list(lams), ys, p)
            if len(poly) - 1 > k:
                return None
            for i, c in enumerate(poly):
                if c:
                    coef[(k - i, i)] = c
        res.append(_shift_to_monomials(coef, t0, s0, p))
    return res


def _crt_pair(r1, m1, r2, m2):
    k = (r2 - r1) * pow(m1, -1, m2) % m2
    return r1 + m1 * k


class Branch:
    """Branch data collected over several primes."""

    def __init__(self, x0):
        self.x0 = x0
        self.acc = None          # per unknown: (num dict, den dict) of residues
        self.modulus = 1

    def add(self, images, p):
        if self.acc is None:
            self.acc = images
            self.modulus = p
            return
        merged = []
        for (n1, d1), (n2, d2) in zip(self.acc, images):
            nn = {k: _crt_pair(n1.get(k, 0), self.modulus, n2.get(k, 0), p) for k in set(n1) | set(n2)}
            dd = {k: _crt_pair(d1.get(k, 0), self.modulus, d2.get(k, 0), p) for k in set(d1) | set(d2)}
            merged.append((nn, dd))
        self.acc = merged
        self.modulus *= p

    def rational(self) -> Optional[List[RationalFunction]]:
        out = []
        m = self.modulus
        for nd, dd in self.acc:
            parts = []
            for d in (nd, dd):
                terms = {}
                for k, c in d.items():
                    q = nmod.ratrec(c, m)
                    if q is None:
                        return None
                    if q:
                        terms[k] = q.numerator if q.denominator == 1 else q
                parts.append(MultiPoly(terms, ST))
            if not parts[1]:
                return None
            out.append(RationalFunction(parts[0], parts[1]))
        return out


def _base_solutions_1(f: MultiPoly, var: str):
    if not f or f.is_constant():
        return []
    g = f.embed((var,))
    return [(r,) for r in rational_roots_univar(g)]


def _res_in_v(A_rows_v, B_rows_v, du_bound, p):
    """Res_v of polynomials given as rows over v-powers of dense u-lists, as a dense u-list."""
    m = len(A_rows_v) - 1
    n = len(B_rows_v) - 1
    bound = du_bound
    xs = []
    vals = []
    x = 0
    while len(xs) <= bound:
        batch = list(range(x + 1, x + 1 + (bound + 1 - len(xs)) + 4))
        x = batch[-1]
        ea = [nmod.eval_many(r, batch, p) if r else [0] * len(batch) for r in A_rows_v]
        eb = [nmod.eval_many(r, batch, p) if r else [0] * len(batch) for r in B_rows_v]
        for idx, pt in enumerate(batch):
            if len(xs) > bound:
                break
            fa = [ea[j][idx] for j in range(m + 1)]
            fb = [eb[j][idx] for j in range(n + 1)]
            if not fa[m] or not fb[n]:
                continue
            xs.append(pt)
            vals.append(nmod.resultant(fa, fb, p))
    return nmod.interpolate(xs, vals, p)


def _rows_v(f: MultiPoly, u: str, v: str, p: int):
    """rows[j] = dense u-list of the coefficient of v^j."""
    r = _rows(f, v, u, p)
    return [nmod.trim(x) for x in r]


def _lift_point(fs, dfs, u0, v0, p, target_bits=400):
    """p-adic Newton lift of a simple solution; yields (u, v, modulus) per doubling."""
    m = p
    u, v = u0, v0
    while m.bit_length() < target_bits:
        m = m * m
        a = [_eval_mod(f, u, v, m) for f in fs]
        j = [[_eval_mod(d, u, v, m) for d in row] for row in dfs]
        det = (j[0][0] * j[1][1] - j[0][1] * j[1][0]) % m
        try:
            di = pow(det, -1, m)
        except ValueError:
            return
        du = (j[1][1] * a[0] - j[0][1] * a[1]) * di % m
        dv = (j[0][0] * a[1] - j[1][0] * a[0]) * di % m
        u = (u - du) % m
        v = (v - dv) % m
        yield u, v, m


def _eval_mod(f: MultiPoly, u, v, m):
    iu = f.vars.index("u") if "u" in f.vars else None
    iv = f.vars.index("v") if "v" in f.vars else None
    acc = 0
    for e, c in f.terms.items():
        x = c
        if iu is not None and e[iu]:
            x = x * pow(u, e[iu], m)
        if iv is not None and e[iv]:
            x = x * pow(v, e[iv], m)
        acc += x
    return acc % m


def _base_solutions_2(A: MultiPoly, B: MultiPoly, rng):
    """Rational solutions of A(u, v) = B(u, v) = 0 (assumed isolated)."""
    A = A.embed(("u", "v")).primitive()
    B = B.embed(("u", "v")).primitive()
    if A.degree("v") < 1 and B.degree("v") < 1:
        raise NoIsolatedSolutions()
    if A.degree("v") < 1 or B.degree("v") < 1:
        # one equation is univariate in u
        uni, other = (A, B) if A.degree("v") < 1 else (B, A)
        out = []
        for (u0,) in _base_solutions_1(uni.drop_unused() if uni.free_vars() else uni, "u"):
            g = other.subs({"u": u0})
            if not g:
                raise NoIsolatedSolutions()
            for (v0,) in _base_solutions_1(g, "v"):
                out.append((u0, v0))
        return out
    fs = [A, B]
    dfs = [[f.diff("u"), f.diff("v")] for f in fs]
    for k in range(3):
        p = nmod.prime(k)
        ra = _rows_v(A, "u", "v", p)
        rb = _rows_v(B, "u", "v", p)
        if not ra[-1] or not rb[-1]:
            continue
        bound = (len(ra) - 1) * B.degree("u") + (len(rb) - 1) * A.degree("u")
        R = _res_in_v(ra, rb, bound, p)
        if not R:
            continue
        sols = []
        for u0 in nmod.roots(R, p, seed=rng.randrange(1 << 30)):
            fa = [nmod.eval_(r, u0, p) if r else 0 for r in ra]
            fb = [nmod.eval_(r, u0, p) if r else 0 for r in rb]
            g = nmod.gcd(nmod.trim(fa), nmod.trim(fb), p)
            for v0 in nmod.roots(g, p):
                found = None
                for u, v, m in _lift_point(fs, dfs, u0, v0, p):
                    qu = nmod.ratrec(u, m)
                    qv = nmod.ratrec(v, m)
                    if qu is None or qv is None:
                        continue
                    if not A.subs({"u": qu, "v": qv}) and not B.subs({"u": qu, "v": qv}):
                        found = (qu, qv)
                        break
                if found is not None:
                    sols.append(found)
        return sorted(set(sols))
    raise NoIsolatedSolutions()


def base_solutions(eqs: Sequence[Equation], unknowns, t0, s0, rng):
    polys = [e.at_base(t0, s0) for e in eqs]
    if len(unknowns) == 1:
        return _base_solutions_1(polys[0], unknowns[0])
    ren = {unknowns[0]: "u", unknowns[1]: "v"}
    polys = [f.rename(ren) if set(unknowns) & set(f.vars) else f for f in polys]
    return _base_solutions_2(polys[0], polys[1], rng)


def continue_branch(eqs, unknowns, t0, s0, x0, deg, rng, max_primes=4, check=None):
    """Rational reconstruction of the branch through x0; yields candidates.

    Every time the reconstruction from the primes used so far succeeds the
    candidate is yielded; callers stop the generator once it verifies.
    """
    br = Branch(x0)
    n = 2 * deg + 1
    used = 0
    last = None
    for k in range(12):
        if used >= max_primes:
            break
        p = nmod.prime(k)
        try:
            images = [_ModImage(e, unknowns, p) for e in eqs]
            t0p, s0p = _fmod(t0, p), _fmod(s0, p)
            x0p = [_fmod(c, p) for c in x0]
        except BadPrime:
            continue
        lams = []
        while len(lams) < deg + 1:
            lam = rng.randrange(1, p)
            if lam not in lams:
                lams.append(lam)
        per_var = [[] for _ in unknowns]
        try:
            for lam in lams:
                a_lines = [img.restrict(t0p, s0p, lam, n) for img in images]
                X = newton_series(images, a_lines, x0p, n, p)
                for i, x in enumerate(X):
                    pd = pade(x, deg, p)
                    if pd is None:
                        return
                    per_var[i].append(pd)
        except (SingularPoint, ZeroDivisionError):
            raise SingularPoint()
        imgs = []
        for i in range(len(unknowns)):
            biv = lines_to_bivariate(per_var[i], lams, deg, t0p, s0p, p)
            if biv is None:
                return
            imgs.append(tuple(biv))
        br.add(imgs, p)
        used += 1
        cand = br.rational()
        if cand is not None and cand != last:
            last = cand
            yield cand


def pick_base_point(rng, avoid, span=60):
    """A random rational point where none of the ``avoid`` polynomials vanish."""
    for _ in range(1000):
        t0 = Fraction(rng.randint(-span, span), rng.randint(1, 9))
        s0 = Fraction(rng.randint(-span, span), rng.randint(1, 9))
        if t0 == 0 or s0 == 0 or abs(t0) == abs(s0):
            continue
        env = {"t": t0, "s": s0}
        if all(f.subs(env) for f in avoid):
            return t0, s0
    raise ArithmeticError("no admissible base point")
