"""The general symmetry pipeline for rational surfaces."""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

from . import cremona
from .cremona import CremonaCandidate, ZeroResultants, build_xi, system_candidates
from .diffgeo import SurfaceParam, _core, fiber_degree, pn_check
from .isometry import Isometry, SymmetryRecord, Underdetermined, solve_isometry
from .polyalg import RationalFunction

log = logging.getLogger(__name__)


@dataclass
class PipelineResult:
    records: List[SymmetryRecord]
    fibre_degree: int
    pn: bool
    warnings: List[str] = field(default_factory=list)
    degree_bound: int = 0

    @property
    def isometries(self) -> List[Isometry]:
        seen = {}
        for r in self.records:
            seen.setdefault(r.isometry.key(), r.isometry)
        return list(seen.values())

    @property
    def group_order(self) -> int:
        return len(self.isometries)

    @property
    def symmetry_count(self) -> int:
        return self.group_order * max(1, self.fibre_degree)


def _jacobian_det(p1: RationalFunction, p2: RationalFunction) -> RationalFunction:
    return p1.diff("t") * p2.diff("s") - p1.diff("s") * p2.diff("t")


def orientation_sign(x: SurfaceParam, psi, point) -> int:
    """det(J psi) * W(psi) / W at a point, for a PN surface (always +-1)."""
    w = pn_check(x)
    p1, p2 = psi
    env = {"t": point[0], "s": point[1]}
    u0, v0 = p1.eval(env), p2.eval(env)
    val = _jacobian_det(p1, p2).eval(env) * w.eval({"t": u0, "s": v0}) / w.eval(env)
    return 1 if val > 0 else -1


def general_symmetries(x: SurfaceParam, degree_bound: Optional[int] = None, seed: int = 0,
                       pn: str = "auto", sample_budget: Optional[int] = None) -> PipelineResult:
    """Symmetries from invariant matching (Cremona candidates + isometry recovery).

    Raises `cremona.InvariantDegeneracy`, `cremona.ZeroResultants` or
    `Underdetermined` when the method does not apply.
    """
    if degree_bound is None:
        degree_bound = cremona.default_degree_bound(x)
    _core(x)  # raises on degenerate input
    if pn == "on":
        use_pn = True
        if pn_check(x) is None:
            raise ValueError("surface is not PN (--pn=on)")
    elif pn == "off":
        use_pn = False
    else:
        use_pn = pn_check(x) is not None
    systems = build_xi(x, use_pn)
    log.info("pipeline: %s, degree bound %d", "PN" if use_pn else "general", degree_bound)
    records: List[SymmetryRecord] = []
    found = {}
    warnings: List[str] = []
    for k, sys in enumerate(systems):
        if not sys.eq1.terms or not sys.eq2.terms:
            raise ZeroResultants()
        log.info("system %s: xi degrees %d, %d", sys.source, _eq_degree(sys.eq1), _eq_degree(sys.eq2))

        def accept(p1, p2, _sys=sys):
            f = solve_isometry(x, (p1, p2), seed=seed)
            if f is None:
                return False
            found[(str(p1), str(p2))] = f
            return True

        cands = system_candidates(sys, degree_bound, seed=seed + 7919 * k, attempts=sample_budget, accept=accept)
        log.info("system %s: %d candidates", sys.source, len(cands))
        for c in cands:
            f = found[(str(c.psi1), str(c.psi2))]
            meta = {"system": sys.source}
            if use_pn:
                rng = random.Random(seed)
                pt = _generic_point(x, (c.psi1, c.psi2), rng)
                eps = orientation_sign(x, (c.psi1, c.psi2), pt)
                meta["orientation"] = eps
                # H(psi) = sigma * H with sigma = eps * det(A)
                if eps * f.det_sign != sys.sign:
                    raise AssertionError("PN sign pairing violated")
            records.append(SymmetryRecord(f, c, "general_pipeline", meta))
    records = _dedupe(records)
    if not any(r.isometry.is_identity() for r in records):
        warnings.append("identity not recovered; extraction gap")
    delta = fiber_degree(x, seed)
    if delta > 1:
        warnings.append(f"parametrization covers the surface {delta} times; count = group order x {delta}")
    return PipelineResult(records, delta, use_pn, warnings, degree_bound)


def _eq_degree(eq) -> int:
    return max(a.degree() + b.degree() for a, b in eq.terms)


def _generic_point(x, psi, rng):
    c = _core(x)
    for _ in range(200):
        t0 = Fraction(rng.randint(-40, 40), rng.randint(1, 7))
        s0 = Fraction(rng.randint(-40, 40), rng.randint(1, 7))
        env = {"t": t0, "s": s0}
        try:
            u0, v0 = psi[0].eval(env), psi[1].eval(env)
        except ZeroDivisionError:
            continue
        if c.w2.subs(env) and c.D.subs(env) and c.D.subs({"t": u0, "s": v0}) and c.w2.subs({"t": u0, "s": v0}):
            if _jacobian_det(*psi).eval(env):
                return (t0, s0)
    raise ArithmeticError("no generic point")


def _dedupe(records):
    seen = {}
    for r in records:
        seen.setdefault(r.reparam.key(), r)
    return [seen[k] for k in sorted(seen)]
