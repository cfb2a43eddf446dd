"""Cremona candidates: reparametrizations psi with K(psi) = K and H(psi) = +-H.

A symmetry f of the surface satisfies f o x = x o psi for a birational map
psi of the parameter plane.  Since the Gauss curvature and the squared mean
curvature are invariant, psi = (u, v) solves

    xi1 := K(t, s) - K(u, v) = 0,      xi2 := H^2(t, s) - H^2(u, v) = 0

after clearing denominators.  For PN surfaces (rational normal length) the
signed mean curvature is used instead, giving two systems with H(u, v) =
+H(t, s) and H(u, v) = -H(t, s).

The classical route eliminates v (resp. u) with resultants and looks for
factors linear in u.  Those resultants get large quickly, so `xi` and `eta`
are kept in factored form and only expanded on demand; branch extraction
works from specializations and power-series continuation (see
``_continuation``) and every branch is confirmed exactly.
"""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from . import _continuation as cont
from .diffgeo import (
    SurfaceParam,
    _core,
    _mean_numerator,
    gauss_curvature,
    mean_curvature_squared,
    pn_root,
)
from .polyalg import MultiPoly, RationalFunction, gcd_poly, resultant, squarefree_part
from .polyalg.ratfunc import compose_poly

log = logging.getLogger(__name__)

TS = ("t", "s")
UV = ("u", "v")


class InvariantDegeneracy(ValueError):
    """Both invariants are constant; the hint names the likely surface class."""

    def __init__(self, hint: str):
        super().__init__(f"invariant degeneracy ({hint})")
        self.hint = hint


class ZeroResultants(ValueError):
    def __init__(self, msg: str = "method fails: zero resultants"):
        super().__init__(msg)


def _to_uv(f: MultiPoly) -> MultiPoly:
    return f.rename({"t": "u", "s": "v"})


@dataclass
class XiSystem:
    """The pair xi1, xi2 in (t, s, u, v).

    ``eq1``/``eq2`` hold each equation as a sum of products a(t, s) * b(u, v);
    the expanded polynomials are built lazily.
    """

    eq1: cont.Equation
    eq2: cont.Equation
    source: str = "general"
    sign: int = 1
    _xi: dict = field(default_factory=dict, repr=False)

    @classmethod
    def from_polys(cls, xi1: MultiPoly, xi2: MultiPoly, source: str = "general") -> "XiSystem":
        s = cls(cont.Equation.from_poly(xi1, UV), cont.Equation.from_poly(xi2, UV), source)
        s._xi[1] = xi1
        s._xi[2] = xi2
        return s

    @classmethod
    def from_invariants(cls, I1: RationalFunction, I2: RationalFunction, source="general", sign=1):
        # I(u, v) = I(t, s)  <=>  n(u,v) d(t,s) - n(t,s) d(u,v) = 0
        def eq(I, sg):
            n, d = I.num.embed(TS), I.den.embed(TS)
            return cont.Equation([(d, _to_uv(n)), (-sg * n, _to_uv(d))])

        return cls(eq(I1, 1), eq(I2, sign), source, sign)

    def _expand(self, k: int) -> MultiPoly:
        if k not in self._xi:
            eq = self.eq1 if k == 1 else self.eq2
            acc = MultiPoly.const(0, TS + UV)
            for a, b in eq.terms:
                acc = acc + a * b
            self._xi[k] = acc.primitive() if acc else acc
        return self._xi[k]

    @property
    def xi1(self) -> MultiPoly:
        return self._expand(1)

    @property
    def xi2(self) -> MultiPoly:
        return self._expand(2)

    def size(self) -> int:
        return sum(len(a) * len(b) for a, b in self.eq1.terms + self.eq2.terms)


@dataclass(frozen=True)
class CremonaCandidate:
    psi1: RationalFunction
    psi2: RationalFunction
    verified: bool = False
    source: str = "general"

    def key(self):
        return (str(self.psi1), str(self.psi2))

    def __str__(self):
        return f"({self.psi1}, {self.psi2})"


def _hint(K: RationalFunction, H2: RationalFunction) -> str:
    k = K.constant_value()
    h = H2.constant_value()
    if k == 0 and h == 0:
        return "plane"
    if k > 0 and h == k:
        return "sphere"
    if k == 0:
        return "developable"
    return "linear-Weingarten"


def invariants(x: SurfaceParam, use_pn: bool):
    """(K, [(second invariant, sign, tag), ...]) used by the systems."""
    K = gauss_curvature(x)
    if use_pn:
        w = pn_root(x)
        if w is None:
            raise ValueError("surface is not PN")
        c = _core(x)
        h = _mean_numerator(c)
        H = RationalFunction(h, 2 * c.D * w ** 3)
        return K, [(H, 1, "pn_plus"), (H, -1, "pn_minus")]
    return K, [(mean_curvature_squared(x), 1, "general")]


def build_xi(x: SurfaceParam, use_pn: bool = False) -> List[XiSystem]:
    K, seconds = invariants(x, use_pn)
    if K.is_constant():
        H2 = mean_curvature_squared(x)
        if H2.is_constant():
            raise InvariantDegeneracy(_hint(K, H2))
    return [XiSystem.from_invariants(K, I2, tag, sg) for I2, sg, tag in seconds]


class Eta:
    """Res_v(xi1, xi2) (or Res_u), materialized only on request."""

    def __init__(self, sys: XiSystem, eliminate: str):
        self.sys = sys
        self.eliminate = eliminate
        self.keep = "u" if eliminate == "v" else "v"
        self._poly = None
        self._zero = None

    def is_zero(self) -> bool:
        # Res_v(a, b) = 0 iff a, b share a factor of positive degree in v
        if self._zero is None:
            a, b = self.sys.xi1, self.sys.xi2
            if not a or not b:
                self._zero = True
            else:
                g = gcd_poly(a, b)
                self._zero = g.degree(self.eliminate) > 0 or (
                    a.degree(self.eliminate) == 0 and b.degree(self.eliminate) == 0
                )
        return self._zero

    def __bool__(self):
        return not self.is_zero()

    @property
    def poly(self) -> MultiPoly:
        if self._poly is None:
            r = resultant(self.sys.xi1, self.sys.xi2, self.eliminate)
            self._poly = squarefree_part(r) if r and not r.is_constant() else r
        return self._poly

    def at(self, t0, s0) -> MultiPoly:
        """The univariate specialization; exact."""
        a = self.sys.eq1.at_base(t0, s0)
        b = self.sys.eq2.at_base(t0, s0)
        return resultant(a.embed(UV), b.embed(UV), self.eliminate)


def eta_resultants(sys: XiSystem) -> Tuple[Eta, Eta]:
    e1, e2 = Eta(sys, "v"), Eta(sys, "u")
    if e1.is_zero() and e2.is_zero():
        raise ZeroResultants()
    return e1, e2


def default_degree_bound(x: SurfaceParam) -> int:
    return x.degree() + 2


def default_sample_budget(degree_bound: int) -> int:
    return 4 * (degree_bound + 1) ** 2


def _third_var(eta: MultiPoly) -> str:
    extra = [v for v in eta.free_vars() if v not in TS]
    if len(extra) != 1:
        raise ValueError("expected a polynomial in t, s and one more variable")
    return extra[0]


def _branch_factor(w: RationalFunction, var: str, vars_) -> MultiPoly:
    q, p = w.den, w.num
    return (q * MultiPoly.var(var, vars_) - p)


def extract_branches(eta, degree_bound: int, sample_budget: Optional[int] = None, seed: int = 0) -> List[RationalFunction]:
    """Rational w(t, s) of degree <= degree_bound with (q*w - p) | eta.

    ``eta`` is a polynomial in (t, s, w) or an `Eta`.  Roots at a random
    base point are continued as power series; every reconstructed branch is
    confirmed exactly.  ``sample_budget`` caps the number of base points
    tried when the specialization is degenerate.
    """
    if isinstance(eta, Eta):
        return _extract_from_system(eta, degree_bound, sample_budget, seed)
    if not eta:
        raise ValueError("extract_branches of the zero polynomial")
    var = _third_var(eta)
    eta = squarefree_part(eta, var)
    budget = sample_budget or default_sample_budget(degree_bound)
    rng = random.Random(seed)
    lc = eta.coeffs_in(var)[eta.degree(var)]
    disc_test = eta.diff(var)
    eq = cont.Equation.from_poly(eta, (var,))
    found: List[RationalFunction] = []
    for _ in range(max(1, min(budget, 20))):
        t0, s0 = cont.pick_base_point(rng, [lc.embed(TS) if lc.vars else lc] if not lc.is_constant() else [])
        spec = eta.subs({"t": t0, "s": s0})
        if spec.degree(var) < eta.degree(var):
            continue
        if gcd_poly(spec, disc_test.subs({"t": t0, "s": s0})).degree(var) > 0:
            continue  # colliding roots at this point
        for (r,) in cont.base_solutions([eq], (var,), t0, s0, rng):
            for cand in cont.continue_branch([eq], (var,), t0, s0, (r,), degree_bound, rng):
                w = cand[0]
                if _branch_factor(w, var, eta.vars).divides(eta):
                    found.append(w)
                    break
        return _sorted_unique(found)
    log.warning("branch extraction found no admissible sample point")
    return []


def _sorted_unique(ws):
    out = {}
    for w in ws:
        out.setdefault(str(w), w)
    return [out[k] for k in sorted(out)]


def _subs_u(eq: cont.Equation, var: str, w: RationalFunction) -> MultiPoly:
    """Numerator of sum a_k(t,s) b_k(u,v) with ``var`` replaced by w(t, s)."""
    acc = None
    for a, b in eq.terms:
        term = compose_poly(b, {var: w}) * RationalFunction(a)
        acc = term if acc is None else acc + term
    return acc.num if acc is not None else MultiPoly.const(0)


def recover_psi2(sys: XiSystem, psi1: RationalFunction, degree_bound: Optional[int] = None, seed: int = 0) -> List[RationalFunction]:
    """All psi2 with xi1(t, s, psi1, psi2) = xi2(t, s, psi1, psi2) = 0."""
    g = _psi1_gcd(sys, psi1, "u")
    if g is None:
        return []
    bound = degree_bound if degree_bound is not None else max(4, g.degree() // max(1, g.degree("v")) + 2)
    return extract_branches(g, bound, seed=seed)


def _psi1_gcd(sys: XiSystem, w: RationalFunction, var: str) -> Optional[MultiPoly]:
    other = "v" if var == "u" else "u"
    a = _subs_u(sys.eq1, var, w)
    b = _subs_u(sys.eq2, var, w)
    if not a and not b:
        return None
    g = gcd_poly(a, b) if a and b else (a or b)
    if g.degree(other) < 1:
        return None
    return g


def _extract_from_system(eta: Eta, degree_bound, sample_budget, seed):
    """Branches of a lazy resultant: continue the xi-system and confirm each component."""
    if eta.is_zero():
        raise ZeroResultants()
    cands = system_candidates(eta.sys, degree_bound, seed=seed, attempts=sample_budget)
    idx = 0 if eta.keep == "u" else 1
    out = []
    for c in cands:
        w = (c.psi1, c.psi2)[idx]
        if _psi1_gcd(eta.sys, w, eta.keep) is not None:
            out.append(w)
    return _sorted_unique(out)


def verify_candidate(sys: XiSystem, cand: CremonaCandidate) -> bool:
    """Both xi vanish identically at (u, v) = (psi1, psi2)."""
    vals = {"u": cand.psi1, "v": cand.psi2}
    for eq in (sys.eq1, sys.eq2):
        acc = RationalFunction.const(0)
        for a, b in eq.terms:
            acc = acc + compose_poly(b, vals) * RationalFunction(a)
        if acc:
            return False
    return True


def _avoid_polys(sys: XiSystem):
    out = []
    for eq in (sys.eq1, sys.eq2):
        for a, b in eq.terms:
            if not a.is_constant():
                out.append(a.embed(TS))
    return out


def system_candidates(sys: XiSystem, degree_bound: int, seed: int = 0, attempts: Optional[int] = None,
                      extra_avoid: Sequence[MultiPoly] = (), accept=None) -> List[CremonaCandidate]:
    """Rational solutions (u, v) = psi(t, s) of the system, reconstructed and checked.

    ``accept(psi1, psi2)`` decides whether a reconstruction is final (default:
    `verify_candidate`); unaccepted reconstructions trigger more primes.
    """
    rng = random.Random(seed)
    if accept is None:
        def accept(p1, p2):
            return verify_candidate(sys, CremonaCandidate(p1, p2))
    tries = attempts if attempts else 6
    tries = max(2, min(tries, 6))
    zero_hits = 0
    for _ in range(tries):
        t0, s0 = cont.pick_base_point(rng, _avoid_polys(sys) + list(extra_avoid))
        try:
            sols = cont.base_solutions([sys.eq1, sys.eq2], UV, t0, s0, rng)
        except cont.NoIsolatedSolutions:
            zero_hits += 1
            continue
        log.debug("base point (%s, %s): %d rational solutions", t0, s0, len(sols))
        out = []
        for x0 in sols:
            try:
                for p1, p2 in cont.continue_branch([sys.eq1, sys.eq2], UV, t0, s0, x0, degree_bound, rng):
                    if accept(p1, p2):
                        out.append(CremonaCandidate(p1, p2, True, sys.source))
                        break
            except cont.SingularPoint:
                log.debug("singular base solution %s skipped", x0)
        return out
    if zero_hits:
        raise ZeroResultants()
    raise ArithmeticError("no regular base point found")
