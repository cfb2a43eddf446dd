"""Symmetries of rational ruled surfaces x(t, s) = u(t) + s v(t).

Symmetries of a ruled surface (other than cylinders and cones) map the line
of striction to itself, so they are found among the symmetries of that
space curve: Moebius reparametrizations phi with f o c = c o phi, matched
through curvature and torsion.  A curve symmetry lifts when it maps rulings
to rulings, i.e. A v(t) is parallel to v(phi(t)).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .cremona import CremonaCandidate, _sorted_unique, extract_branches
from .diffgeo import (
    CurveParam,
    SurfaceParam,
    _cross,
    _dot,
    curve_curvature_sq,
    curve_fiber_degree,
    curve_torsion,
)
from .isometry import Isometry, SymmetryRecord, solve_curve_isometry
from .polyalg import MultiPoly, RationalFunction, gcd_poly

log = logging.getLogger(__name__)


class StrictionUndefined(ValueError):
    def __init__(self, msg="striction undefined for cylindrical"):
        super().__init__(msg)


class NotProper(ValueError):
    def __init__(self, msg="input not proper"):
        super().__init__(msg)


class InfiniteSymmetries(Exception):
    """The curve is a line or a circle."""

    def __init__(self, kind: str):
        super().__init__(f"curve is a {kind}: infinitely many symmetries")
        self.kind = kind


class RuledFallback(Exception):
    """The ruled pipeline does not apply; use the general algorithm."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


@dataclass(frozen=True)
class RuledSurface:
    u: CurveParam
    v: CurveParam

    def surface(self, name: str = "") -> SurfaceParam:
        s = RationalFunction(MultiPoly.var("s", ("t", "s")))
        return SurfaceParam(*(a + s * b for a, b in zip(self.u.comps, self.v.comps)), name=name)


@dataclass(frozen=True)
class MobiusTransform:
    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __post_init__(self):
        for k in "abcd":
            object.__setattr__(self, k, Fraction(getattr(self, k)))
        if self.a * self.d - self.b * self.c == 0:
            raise ValueError("Moebius transformation needs ad - bc != 0")

    @classmethod
    def identity(cls) -> "MobiusTransform":
        return cls(1, 0, 0, 1)

    @classmethod
    def from_rf(cls, phi: RationalFunction) -> Optional["MobiusTransform"]:
        n, d = phi.num, phi.den
        if n.free_vars() not in ((), ("t",)) or d.free_vars() not in ((), ("t",)):
            return None
        if n.degree("t") > 1 or d.degree("t") > 1:
            return None
        nt = n.embed(("t",))
        dt = d.embed(("t",))
        a, b = nt.terms.get((1,), 0), nt.terms.get((0,), 0)
        c, e = dt.terms.get((1,), 0), dt.terms.get((0,), 0)
        if a * e - b * c == 0:
            return None
        return cls(a, b, c, e)

    def as_rf(self) -> RationalFunction:
        t = MultiPoly.var("t")
        return RationalFunction(t * self.a + self.b, t * self.c + self.d)

    def is_identity(self) -> bool:
        return self.b == 0 and self.c == 0 and self.a == self.d

    def __str__(self):
        return str(self.as_rf())


@dataclass(frozen=True)
class DevelopableClass:
    tag: str      # not_developable | cylindrical | conical | tangential | planar
    direction: Optional[Tuple[Fraction, Fraction, Fraction]] = None
    vertex: Optional[Tuple[Fraction, Fraction, Fraction]] = None

    def __str__(self):
        if self.direction is not None:
            return f"{self.tag} (direction {tuple(map(str, self.direction))})"
        if self.vertex is not None:
            return f"{self.tag} (vertex {tuple(map(str, self.vertex))})"
        return self.tag


def detect_standard_form(x: SurfaceParam) -> Optional[RuledSurface]:
    """u(t) + s v(t) form when every component is polynomial of degree <= 1 in s."""
    us, vs = [], []
    for c in x.comps:
        if c.den.degree("s") > 0 or c.num.degree("s") > 1:
            return None
        us.append(c.subs({"s": 0}))
        vs.append(c.diff("s"))
    if all(v.is_zero() for v in vs):
        return None
    return RuledSurface(CurveParam.of(us), CurveParam.of(vs))


def _d(c: CurveParam) -> CurveParam:
    return c.diff()


def _mixed(a, b, c) -> RationalFunction:
    return _dot(a, _cross(b, c))


def _primitive_direction(vec) -> Tuple[Fraction, ...]:
    fr = [Fraction(x) for x in vec]
    from math import gcd, lcm

    den = 1
    for x in fr:
        den = lcm(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for k in ints:
        g = gcd(g, abs(k))
    ints = [k // g for k in ints]
    lead = next(k for k in ints if k)
    if lead < 0:
        ints = [-k for k in ints]
    return tuple(Fraction(k) for k in ints)


def _sample_t(c: CurveParam, k: int = 0):
    t0 = Fraction(7 + 3 * k, 11)
    while True:
        try:
            return c.at(t0)
        except ZeroDivisionError:
            t0 += Fraction(1, 3)


def _is_planar(r: RuledSurface) -> bool:
    x = r.surface()
    pts = []
    k = 0
    while len(pts) < 12:
        k += 1
        try:
            pts.append(x.at(Fraction(k, 3), Fraction(2 * k + 1, 5)))
        except ZeroDivisionError:
            continue
    rows = [list(p) + [Fraction(1)] for p in pts]
    from .polyalg.linalg import nullspace_q

    ns = nullspace_q(rows, 4)
    if len(ns) != 1:
        return len(ns) > 1
    n = ns[0]
    lin = sum((comp * n[i] for i, comp in enumerate(x.comps)), RationalFunction.const(n[3]))
    return lin.is_zero()


def classify_developable(r: RuledSurface) -> DevelopableClass:
    u1 = _d(r.u).comps
    v, v1 = r.v.comps, _d(r.v).comps
    if _mixed(u1, v, v1):
        return DevelopableClass("not_developable")
    if _is_planar(r):
        return DevelopableClass("planar")
    vx = _cross(v, v1)
    if all(c.is_zero() for c in vx):
        return DevelopableClass("cylindrical", direction=_primitive_direction(_sample_t(r.v)))
    c = striction_line(r)
    if c.is_constant():
        return DevelopableClass("conical", vertex=tuple(Fraction(x.constant_value()) for x in c.comps))
    return DevelopableClass("tangential")


def striction_coefficient(r: RuledSurface) -> RationalFunction:
    """mu with u = c + mu v, c the line of striction."""
    u1 = _d(r.u).comps
    v, v1 = r.v.comps, _d(r.v).comps
    vx = _cross(v, v1)
    den = _dot(vx, vx)
    if den.is_zero():
        raise StrictionUndefined()
    return _dot(vx, _cross(v, u1)) / den


def striction_line(r: RuledSurface) -> CurveParam:
    mu = striction_coefficient(r)
    c = CurveParam(*(a - mu * b for a, b in zip(r.u.comps, r.v.comps)))
    if not striction_residual(c, r.v).is_zero():
        raise AssertionError("striction line fails the orthogonality check")
    return c


def unit_derivative_direction(v: CurveParam):
    """(v.v) v' - (v.v') v, parallel to the derivative of v/|v|."""
    vv = v.comps
    v1 = _d(v).comps
    a, b = _dot(vv, vv), _dot(vv, v1)
    return [a * y - b * x for x, y in zip(vv, v1)]


def striction_residual(c: CurveParam, v: CurveParam) -> RationalFunction:
    """c' . (v/|v|)' up to a nonzero factor; zero exactly on the line of striction."""
    return _dot(_d(c).comps, unit_derivative_direction(v))


def _matching_poly(f: RationalFunction, sign: int) -> MultiPoly:
    # numerator of f(t) - sign * f(w)
    n, d = f.num.embed(("t",)), f.den.embed(("t",))
    nw, dw = n.rename({"t": "w"}), d.rename({"t": "w"})
    return (n * dw - nw * d * sign)


def _is_circle(k2: RationalFunction, tau: RationalFunction) -> bool:
    return k2.is_constant() and tau.is_zero()


def curve_symmetries(c: CurveParam, seed: int = 0) -> List[Tuple[MobiusTransform, Isometry]]:
    """Pairs (phi, f) with f o c = c o phi.  Raises `InfiniteSymmetries` for lines and circles."""
    d1, d2 = _d(c).comps, _d(_d(c)).comps
    if all(x.is_zero() for x in _cross(d1, d2)):
        raise InfiniteSymmetries("line")
    k2 = curve_curvature_sq(c)
    tau = curve_torsion(c)
    if _is_circle(k2, tau):
        raise InfiniteSymmetries("circle")
    if k2.is_constant() and tau.is_constant():
        raise InfiniteSymmetries("helix")
    if curve_fiber_degree(c, seed) != 1:
        raise NotProper()
    xi1 = _matching_poly(k2, 1)
    branches: List[RationalFunction] = []
    for sign in (1, -1):
        xi2 = _matching_poly(tau, sign)
        if xi1.is_zero() and xi2.is_zero():
            raise InfiniteSymmetries("helix")
        if xi1.is_zero():
            g = xi2
        elif xi2.is_zero():
            g = xi1
        else:
            g = gcd_poly(xi1, xi2)
        if g.degree("w") < 1:
            continue
        g = g.embed(("t", "w"))
        branches.extend(extract_branches(g, 2, seed=seed))
    out = []
    seen = set()
    for phi in _sorted_unique(branches):
        m = MobiusTransform.from_rf(phi)
        if m is None:
            log.debug("branch %s is not a Moebius transformation", phi)
            continue
        if str(phi) in seen:
            continue
        seen.add(str(phi))
        for f in solve_curve_isometry(c, m.as_rf(), seed=seed):
            out.append((m, f))
    return out


def lift_to_surface(r: RuledSurface, phi: MobiusTransform, f: Isometry, tangential: Optional[bool] = None) -> bool:
    """Does the curve symmetry (phi, f) map rulings to rulings?"""
    if tangential is None:
        tangential = classify_developable(r).tag == "tangential"
    if tangential:
        return True
    return _ruling_ratio(r, phi, f) is not None


def _ruling_ratio(r: RuledSurface, phi: MobiusTransform, f: Isometry) -> Optional[RationalFunction]:
    """rho with A v(t) = rho(t) v(phi(t)), or None when the rulings are not parallel."""
    Av = CurveParam.of([sum((r.v.comps[j] * f.A[i][j] for j in range(3)), RationalFunction.const(0)) for i in range(3)])
    vphi = r.v.compose(phi.as_rf())
    cr = _cross(Av.comps, vphi.comps)
    if not all(x.is_zero() for x in cr):
        return None
    for a, b in zip(Av.comps, vphi.comps):
        if not b.is_zero():
            return a / b
    return None


@dataclass
class RuledResult:
    records: List[SymmetryRecord]
    classification: DevelopableClass
    curve_only: List[Tuple[MobiusTransform, Isometry]]
    striction: CurveParam

    @property
    def group_order(self) -> int:
        return len({r.isometry.key() for r in self.records})


def ruled_symmetries(r: RuledSurface, seed: int = 0) -> RuledResult:
    """Symmetries through the line of striction; raises `RuledFallback` when inapplicable."""
    cls = classify_developable(r)
    if cls.tag in ("cylindrical", "conical", "planar"):
        raise RuledFallback(f"{cls.tag} surface")
    c = striction_line(r)
    try:
        pairs = curve_symmetries(c, seed=seed)
    except InfiniteSymmetries as e:
        raise RuledFallback(f"line of striction is a {e.kind}") from None
    mu = striction_coefficient(r)
    x = r.surface()
    s = RationalFunction(MultiPoly.var("s", ("t", "s")))
    records, curve_only = [], []
    for phi, f in pairs:
        rho = _ruling_ratio(r, phi, f)
        if rho is None:
            if cls.tag == "tangential":
                raise AssertionError("tangential surface symmetry without parallel rulings")
            curve_only.append((phi, f))
            continue
        ph = phi.as_rf()
        psi2 = (s + mu) * rho - mu.subs({"t": ph})
        lhs = x.transform(f.A, f.b).comps
        rhs = x.compose(ph, psi2).comps
        if not all(a == b for a, b in zip(lhs, rhs)):
            log.debug("lifted symmetry fails the surface identity")
            curve_only.append((phi, f))
            continue
        records.append(SymmetryRecord(f, CremonaCandidate(ph, psi2, True, "ruled"), "ruled_pipeline",
                                      {"phi": phi, "rho": rho}))
    return RuledResult(records, cls, curve_only, c)
