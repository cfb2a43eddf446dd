"""Differential invariants of rational surfaces and space curves.

Everything is kept rational: with ``x = X/D`` over a common denominator the
cross product, fundamental forms and second-form entries scaled by
``W = |x_t x x_s|`` are polynomials over powers of ``D``, and

    K  = (l*n - m^2) / w2^2
    H^2 = (e*n + g*l - 2*f*m)^2 / (4 * D^2 * w2^3)

where ``e, f, g`` are the first-form numerators (over D^4), ``l, m, n`` the
scaled second-form numerators (over D^6) and ``w2 = N'.N'`` with
``N' = (P_t x P_s)/D``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from . import nmod
from .polyalg import MultiPoly, RationalFunction, gcd_poly
from .polyalg.modular import BadPrime, reduce_poly
from .polyalg.poly import sqrt_poly

ST = ("t", "s")


class DegenerateParametrization(ValueError):
    def __init__(self, msg="degenerate parametrization"):
        super().__init__(msg)


class CurveIsLine(ValueError):
    def __init__(self, msg="curve is a line"):
        super().__init__(msg)


def _rf(x) -> RationalFunction:
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, MultiPoly):
        return RationalFunction(x)
    return RationalFunction.const(x)


def _lcm(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    if a.is_constant():
        return b
    if b.is_constant():
        return a
    return a.divexact(gcd_poly(a, b)) * b


def common_denominator(comps: Sequence[RationalFunction]):
    """(numerators, D) with comps[i] = numerators[i] / D and D primitive."""
    den = MultiPoly.const(1)
    for c in comps:
        den = _lcm(den, c.den)
    den = den.primitive()
    nums = [c.num * den.divexact(c.den) for c in comps]
    return nums, den


def _cross(a, b):
    return [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]


def _dot(a, b):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


@dataclass(frozen=True)
class SurfaceParam:
    """x(t, s) = (x1, x2, x3), rational in t and s."""

    x1: RationalFunction
    x2: RationalFunction
    x3: RationalFunction
    name: str = ""
    meta: dict = field(default_factory=dict, compare=False, hash=False)

    @classmethod
    def of(cls, comps, name: str = "") -> "SurfaceParam":
        a, b, c = (_rf(x) for x in comps)
        return cls(a, b, c, name)

    @property
    def comps(self) -> Tuple[RationalFunction, RationalFunction, RationalFunction]:
        return (self.x1, self.x2, self.x3)

    def at(self, t, s):
        env = {"t": t, "s": s}
        return tuple(Fraction(c.eval(env)) for c in self.comps)

    def compose(self, psi1, psi2) -> "SurfaceParam":
        """x o psi."""
        vals = {"t": _rf(psi1), "s": _rf(psi2)}
        return SurfaceParam(*(c.subs(vals) for c in self.comps), name=self.name)

    def transform(self, A, b) -> "SurfaceParam":
        """A x + b."""
        out = []
        for i in range(3):
            acc = RationalFunction.const(b[i])
            for j in range(3):
                if A[i][j]:
                    acc = acc + self.comps[j] * A[i][j]
            out.append(acc)
        return SurfaceParam(*out, name=self.name)

    def degree(self) -> int:
        nums, den = common_denominator(self.comps)
        return max([den.degree()] + [n.degree() for n in nums])

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.comps) + ")"


@dataclass(frozen=True)
class CurveParam:
    c1: RationalFunction
    c2: RationalFunction
    c3: RationalFunction

    @classmethod
    def of(cls, comps) -> "CurveParam":
        return cls(*(_rf(x) for x in comps))

    @property
    def comps(self):
        return (self.c1, self.c2, self.c3)

    def at(self, t):
        return tuple(Fraction(c.eval({"t": t})) for c in self.comps)

    def diff(self) -> "CurveParam":
        return CurveParam(*(c.diff("t") for c in self.comps))

    def compose(self, phi) -> "CurveParam":
        return CurveParam(*(c.subs({"t": _rf(phi)}) for c in self.comps))

    def transform(self, A, b) -> "CurveParam":
        out = []
        for i in range(3):
            acc = RationalFunction.const(b[i])
            for j in range(3):
                if A[i][j]:
                    acc = acc + self.comps[j] * A[i][j]
            out.append(acc)
        return CurveParam(*out)

    def is_constant(self) -> bool:
        return all(c.is_constant() for c in self.comps)

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.comps) + ")"


# -- polynomial core -----------------------------------------------------------

@dataclass
class _Core:
    X: list
    D: MultiPoly
    Pt: list
    Ps: list
    Nn: list        # N' = (P_t x P_s) / D, so x_t x x_s = N' / D^3
    e: MultiPoly
    f: MultiPoly
    g: MultiPoly
    l: MultiPoly
    m: MultiPoly
    n: MultiPoly
    w2: MultiPoly


_CORE_CACHE: dict = {}


def _core(x: SurfaceParam) -> _Core:
    key = x.comps
    hit = _CORE_CACHE.get(key)
    if hit is not None:
        return hit
    X, D = common_denominator(x.comps)
    X = [c.embed(ST) for c in X]
    D = D.embed(ST)
    Dt, Ds = D.diff("t"), D.diff("s")
    Pt = [c.diff("t") * D - c * Dt for c in X]
    Ps = [c.diff("s") * D - c * Ds for c in X]
    cr = _cross(Pt, Ps)
    Nn = [c.divexact(D) if not D.is_constant() else c.scale(Fraction(1) / D.constant_value()) for c in cr]
    w2 = _dot(Nn, Nn)
    if not w2:
        raise DegenerateParametrization()
    Qtt = [a.diff("t") * D - 2 * a * Dt for a in Pt]
    Qts = [a.diff("s") * D - 2 * a * Ds for a in Pt]
    Qss = [a.diff("s") * D - 2 * a * Ds for a in Ps]
    core = _Core(
        X=X, D=D, Pt=Pt, Ps=Ps, Nn=Nn,
        e=_dot(Pt, Pt), f=_dot(Pt, Ps), g=_dot(Ps, Ps),
        l=_dot(Qtt, Nn), m=_dot(Qts, Nn), n=_dot(Qss, Nn), w2=w2,
    )
    if len(_CORE_CACHE) > 64:
        _CORE_CACHE.clear()
    _CORE_CACHE[key] = core
    return core


@dataclass(frozen=True)
class FundamentalForms:
    E: RationalFunction
    F: RationalFunction
    G: RationalFunction
    L2: RationalFunction    # L * W
    M2: RationalFunction    # M * W
    N2: RationalFunction    # N * W
    Wsq: RationalFunction


def normal_unnormalized(x: SurfaceParam):
    """x_t cross x_s."""
    c = _core(x)
    d3 = c.D ** 3
    return tuple(RationalFunction(n, d3) for n in c.Nn)


def fundamental_forms(x: SurfaceParam) -> FundamentalForms:
    c = _core(x)
    d4 = c.D ** 4
    d6 = c.D ** 6
    return FundamentalForms(
        E=RationalFunction(c.e, d4), F=RationalFunction(c.f, d4), G=RationalFunction(c.g, d4),
        L2=RationalFunction(c.l, d6), M2=RationalFunction(c.m, d6), N2=RationalFunction(c.n, d6),
        Wsq=RationalFunction(c.w2, d6),
    )


def gauss_curvature(x: SurfaceParam) -> RationalFunction:
    c = _core(x)
    return RationalFunction(c.l * c.n - c.m * c.m, c.w2 * c.w2)


def _mean_numerator(c: _Core) -> MultiPoly:
    return c.e * c.n + c.g * c.l - 2 * c.f * c.m


def mean_curvature_squared(x: SurfaceParam) -> RationalFunction:
    c = _core(x)
    h = _mean_numerator(c)
    if not h:
        return RationalFunction.const(0)
    # h is divisible by D in practice; let the gcd find it
    return RationalFunction(h * h, 4 * c.D * c.D * c.w2 ** 3)


def pn_check(x: SurfaceParam) -> Optional[RationalFunction]:
    """sqrt(EG - F^2) as a rational function when it exists, else None."""
    c = _core(x)
    w = sqrt_poly(c.w2)
    if w is None:
        return None
    return RationalFunction(w, c.D ** 3)


def mean_curvature_pn(x: SurfaceParam, w: Optional[RationalFunction] = None) -> RationalFunction:
    """H itself, using the rational W = pn_check(x)."""
    c = _core(x)
    if w is None:
        w = pn_check(x)
        if w is None:
            raise ValueError("surface is not PN")
    # H = h / (2 D^10 W^3)
    return RationalFunction(_mean_numerator(c), 2 * c.D ** 10) / (w ** 3)


def pn_root(x: SurfaceParam) -> Optional[MultiPoly]:
    """Polynomial w with w^2 = w2 (so W = w / D^3)."""
    return sqrt_poly(_core(x).w2)


# -- sample-point helpers ------------------------------------------------------

def random_points(x: SurfaceParam, count: int, rng: random.Random, span: int = 40):
    """Rational points avoiding denominators and degenerate tangents."""
    pts = []
    c = _core(x)
    tries = 0
    while len(pts) < count:
        tries += 1
        if tries > 200 * count:
            raise DegenerateParametrization("could not find regular sample points")
        t0 = Fraction(rng.randint(-span, span), rng.randint(1, 7))
        s0 = Fraction(rng.randint(-span, span), rng.randint(1, 7))
        env = {"t": t0, "s": s0}
        if not c.D.subs(env) or not c.w2.subs(env):
            continue
        pts.append((t0, s0))
    return pts


def is_regular(x: SurfaceParam, rng: Optional[random.Random] = None, points: int = 5) -> bool:
    """All sample points have independent partials (the sampler rejects the others)."""
    rng = rng or random.Random(0)
    c = _core(x)
    ok = 0
    for t0, s0 in random_points(x, points, rng):
        env = {"t": t0, "s": s0}
        if c.w2.subs(env):
            ok += 1
    return ok == points


def fiber_degree(x: SurfaceParam, seed: int = 0) -> int:
    """Number of parameter values over a random surface point (1 for proper x).

    Works modulo a word prime: after a random shear the t-coordinates of the
    fibre are the roots of gcd(Res_s(Q1, Q2), Res_s(Q1, Q3)) for random
    combinations Q of the cleared equations; roots shared with Res_s(Q1, D)
    come from base points and are discarded.
    """
    rng = random.Random(seed)
    X, D = common_denominator(x.comps)
    X = [c.embed(ST) for c in X]
    D = D.embed(ST)
    t, s = MultiPoly.var("t", ST), MultiPoly.var("s", ST)
    lam = rng.randint(2, 50)
    shear = {"t": t + lam * s}
    X = [c.subs(shear).embed(ST) for c in X]
    D = D.subs(shear).embed(ST)
    t0, s0 = Fraction(rng.randint(-30, 30), 7), Fraction(rng.randint(-30, 30), 11)
    env = {"t": t0, "s": s0}
    d0 = D.subs(env).constant_value() if D.subs(env) else 0
    while not d0:
        t0 += 1
        env = {"t": t0, "s": s0}
        d0 = D.subs(env).constant_value() if D.subs(env) else 0
    eqs = [c * d0 - D * c.subs(env).constant_value() if c.subs(env) else c * d0 for c in X]
    eqs = [e for e in eqs if e]
    if not eqs:
        raise DegenerateParametrization()
    for k in range(4):
        p = nmod.prime(k)
        try:
            fe = [reduce_poly(e, p) for e in eqs]
            fd = reduce_poly(D, p)
        except BadPrime:
            continue
        combos = []
        for _ in range(3):
            co = [rng.randrange(1, p) for _ in fe]
            q = {}
            for c, f in zip(co, fe):
                for ex, v in f.items():
                    q[ex] = (q.get(ex, 0) + c * v) % p
            combos.append({ex: v for ex, v in q.items() if v})
        r12 = _res_s(combos[0], combos[1], p)
        r13 = _res_s(combos[0], combos[2], p)
        if r12 is None or r13 is None:
            continue
        g = nmod.gcd(r12, r13, p)
        if len(g) <= 1:
            return 0
        g = nmod.divmod_(g, nmod.gcd(g, nmod.deriv(g, p), p), p)[0]
        if fd and any(e[1] for e in fd):
            rb = _res_s(combos[0], fd, p)
            if rb is not None and rb:
                g = nmod.divmod_(g, nmod.gcd(g, rb, p), p)[0]
        elif fd and len(fd) == 1 and not any(next(iter(fd))):
            pass
        return len(g) - 1
    raise DegenerateParametrization("fibre degree computation failed")


def _res_s(a, b, p):
    """Res_s of bivariate dicts mod p, as a dense list in t (None if degenerate)."""
    from .polyalg.resultant import _res_rec

    if not a or not b:
        return None
    m = max(e[1] for e in a)
    n = max(e[1] for e in b)
    if m == 0 or n == 0:
        # one side free of s: resultant is a power of it
        base, k = (a, n) if m == 0 else (b, m)
        lst = _dense_t(base)
        out = [1]
        for _ in range(k):
            out = nmod.mul(out, lst, p)
        return out
    # resultant in s (index 1), interpolated in t (index 0)
    r = _res_rec(a, b, 1, [0], m, n, p, ST)
    if not r:
        return []
    deg = max(e[0] for e in r)
    lst = [0] * (deg + 1)
    for e, c in r.items():
        lst[e[0]] = c
    return nmod.trim(lst)


def _dense_t(f):
    deg = max(e[0] for e in f)
    lst = [0] * (deg + 1)
    for e, c in f.items():
        lst[e[0]] = (lst[e[0]] + c)
    return lst


def is_proper(x: SurfaceParam, seed: int = 0) -> bool:
    return fiber_degree(x, seed) == 1


# -- curves --------------------------------------------------------------------

def _curve_derivs(c: CurveParam, k: int):
    out = [c]
    for _ in range(k):
        out.append(out[-1].diff())
    return out


def curve_curvature_sq(c: CurveParam) -> RationalFunction:
    _, d1, d2 = _curve_derivs(c, 2)
    cr = _cross(d1.comps, d2.comps)
    num = _dot(cr, cr)
    if not num:
        raise CurveIsLine()
    sp = _dot(d1.comps, d1.comps)
    return num / (sp ** 3)


def curve_torsion(c: CurveParam) -> RationalFunction:
    _, d1, d2, d3 = _curve_derivs(c, 3)
    cr = _cross(d1.comps, d2.comps)
    den = _dot(cr, cr)
    if not den:
        raise CurveIsLine()
    return _dot(cr, d3.comps) / den


def curve_fiber_degree(c: CurveParam, seed: int = 0) -> int:
    """Number of parameters over a random curve point (1 for proper c)."""
    rng = random.Random(seed)
    nums, D = common_denominator(c.comps)
    nums = [n.embed(("t",)) for n in nums]
    D = D.embed(("t",))
    while True:
        t0 = Fraction(rng.randint(-40, 40), rng.randint(1, 9))
        d0 = D.subs({"t": t0})
        if d0:
            break
    d0 = d0.constant_value()
    g = MultiPoly.const(0, ("t",))
    for n in nums:
        n0 = n.subs({"t": t0})
        n0 = n0.constant_value() if n0 else 0
        g = gcd_poly(g, n * d0 - D * n0)
    if g.is_constant():
        return 0 if g else 0
    from .polyalg.gcd import squarefree_part

    g = squarefree_part(g, "t")
    if not D.is_constant():
        g = g.divexact(gcd_poly(g, D))
    return g.degree("t")
