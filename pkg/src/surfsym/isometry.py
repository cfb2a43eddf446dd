"""Isometries f(x) = A x + b recovered from reparametrizations.

Given psi with f o x = x o psi, the twelve entries of (A, b) solve a linear
system at sample points.  The solution must be orthogonal and the identity
must hold symbolically before it is accepted.
"""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from .cremona import CremonaCandidate
from .diffgeo import CurveParam, SurfaceParam
from .polyalg import RationalFunction
from .polyalg.linalg import det3, rref

log = logging.getLogger(__name__)

Matrix = Tuple[Tuple[Fraction, Fraction, Fraction], ...]
Vector = Tuple[Fraction, Fraction, Fraction]


class Underdetermined(ValueError):
    def __init__(self, msg="underdetermined; the surface may have continuous symmetries"):
        super().__init__(msg)


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _matmul(A, B):
    return tuple(tuple(sum(A[i][k] * B[k][j] for k in range(3)) for j in range(3)) for i in range(3))


def _matvec(A, v):
    return tuple(sum(A[i][k] * v[k] for k in range(3)) for i in range(3))


def _transpose(A):
    return tuple(tuple(A[j][i] for j in range(3)) for i in range(3))


IDENTITY = tuple(tuple(Fraction(int(i == j)) for j in range(3)) for i in range(3))
ZERO = (Fraction(0),) * 3


def is_orthogonal(A) -> bool:
    return _matmul(_transpose(A), A) == IDENTITY


@dataclass(frozen=True)
class Isometry:
    """x -> A x + b with A orthogonal; validated on construction."""

    A: Matrix
    b: Vector = ZERO
    det_sign: int = field(default=0, compare=False)

    def __post_init__(self):
        A = tuple(tuple(_frac(x) for x in row) for row in self.A)
        b = tuple(_frac(x) for x in self.b)
        if len(A) != 3 or any(len(r) != 3 for r in A) or len(b) != 3:
            raise ValueError("isometry needs a 3x3 matrix and a 3-vector")
        if not is_orthogonal(A):
            raise ValueError("matrix is not orthogonal")
        d = det3(A)
        if d not in (1, -1):
            raise ValueError("determinant must be +-1")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "det_sign", int(d))

    @classmethod
    def identity(cls) -> "Isometry":
        return cls(IDENTITY, ZERO)

    def is_identity(self) -> bool:
        return self.A == IDENTITY and self.b == ZERO

    def __call__(self, p):
        q = _matvec(self.A, [_frac(c) for c in p])
        return tuple(q[i] + self.b[i] for i in range(3))

    def key(self):
        return tuple(x for row in self.A for x in row) + self.b

    def sort_key(self) -> str:
        return " ".join(_fmt(x) for x in self.key())

    def __str__(self):
        rows = ["[" + ", ".join(_fmt(x) for x in r) + "]" for r in self.A]
        return "A=[" + ", ".join(rows) + "], b=(" + ", ".join(_fmt(x) for x in self.b) + ")"


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def compose(f: Isometry, g: Isometry) -> Isometry:
    """f o g."""
    Ab = _matvec(f.A, g.b)
    return Isometry(_matmul(f.A, g.A), tuple(Ab[i] + f.b[i] for i in range(3)))


def invert(f: Isometry) -> Isometry:
    At = _transpose(f.A)
    Atb = _matvec(At, f.b)
    return Isometry(At, tuple(-c for c in Atb))


def rotation_from_quaternion(a, b, c, d) -> Matrix:
    n = Fraction(a * a + b * b + c * c + d * d)
    if not n:
        raise ValueError("zero quaternion")
    m = (
        (a * a + b * b - c * c - d * d, 2 * (b * c - a * d), 2 * (b * d + a * c)),
        (2 * (b * c + a * d), a * a - b * b + c * c - d * d, 2 * (c * d - a * b)),
        (2 * (b * d - a * c), 2 * (c * d + a * b), a * a - b * b - c * c + d * d),
    )
    return tuple(tuple(Fraction(x) / n for x in row) for row in m)


def random_isometry(rng: random.Random, span: int = 5, reflections: bool = True) -> Isometry:
    """A random rational isometry (quaternion rotation, optional reflection)."""
    while True:
        q = [rng.randint(-span, span) for _ in range(4)]
        if any(q):
            break
    A = rotation_from_quaternion(*q)
    if reflections and rng.random() < 0.5:
        A = tuple(tuple(-x for x in row) for row in A)
    b = tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(3))
    return Isometry(A, b)


@dataclass
class SymmetryRecord:
    isometry: Isometry
    reparam: object          # CremonaCandidate or a (MobiusTransform, rho) pair
    provenance: str = "general_pipeline"
    meta: dict = field(default_factory=dict)


# -- the linear system ---------------------------------------------------------

def _sub3(a, b):
    return tuple(a[i] - b[i] for i in range(3))


def _cross3(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def solve_affine(xs: Sequence[Vector], ys: Sequence[Vector]) -> List[Tuple[Matrix, Vector]]:
    """All orthogonal (A, b) with A x_i + b = y_i.

    A full-rank point set determines (A, b) uniquely.  Coplanar points are
    completed with the normal direction: A n = +-(images' normal).  Collinear
    data raise `Underdetermined`.
    """
    rows = [list(x) + [Fraction(1)] for x in xs]
    _, piv = rref(rows, 4)
    rank = len(piv)
    extra: List[Tuple[List[List[Fraction]], List[List[Fraction]]]] = []
    if rank == 4:
        extra.append(([], [[], [], []]))
    elif rank == 3:
        # coplanar: find two independent differences
        d = [_sub3(x, xs[0]) for x in xs[1:]]
        e = [_sub3(y, ys[0]) for y in ys[1:]]
        nrm = None
        for i in range(len(d)):
            for j in range(i + 1, len(d)):
                c = _cross3(d[i], d[j])
                if any(c):
                    nrm = (c, _cross3(e[i], e[j]))
                    break
            if nrm:
                break
        n, m = nrm
        for sg in (1, -1):
            extra.append(([list(n) + [Fraction(0)]], [[sg * m[k]] for k in range(3)]))
    else:
        raise Underdetermined()
    out = []
    for add_rows, add_rhs in extra:
        A, b = [], []
        ok = True
        for k in range(3):
            aug = [r + [y[k]] for r, y in zip(rows, ys)] + [r + rhs for r, rhs in zip(add_rows, [add_rhs[k]] * len(add_rows))]
            m, pv = rref(aug, 5)
            if 4 in pv or len(pv) < 4:
                ok = False
                break
            sol = [Fraction(0)] * 4
            for i, pc in enumerate(pv):
                sol[pc] = m[i][4]
            A.append(tuple(sol[:3]))
            b.append(sol[3])
        if not ok:
            continue
        A = tuple(A)
        if is_orthogonal(A):
            out.append((A, tuple(b)))
    return out


def _affine_rf(A, b, comps: Sequence[RationalFunction]):
    out = []
    for i in range(3):
        acc = RationalFunction.const(b[i])
        for j in range(3):
            if A[i][j]:
                acc = acc + comps[j] * A[i][j]
        out.append(acc)
    return out


def _psi_pair(psi):
    if isinstance(psi, CremonaCandidate):
        return psi.psi1, psi.psi2
    p1, p2 = psi
    return tuple(x if isinstance(x, RationalFunction) else RationalFunction.const(x) for x in (p1, p2))


def _sample_pairs(x: SurfaceParam, psi, count: int, rng: random.Random):
    p1, p2 = psi
    xs, ys = [], []
    tries = 0
    while len(xs) < count:
        tries += 1
        if tries > 50 * count + 100:
            break
        t0 = Fraction(rng.randint(-50, 50), rng.randint(1, 9))
        s0 = Fraction(rng.randint(-50, 50), rng.randint(1, 9))
        env = {"t": t0, "s": s0}
        try:
            u0 = p1.eval(env)
            v0 = p2.eval(env)
            X = x.at(t0, s0)
            Y = x.at(u0, v0)
        except (ZeroDivisionError, TypeError):
            continue
        xs.append(X)
        ys.append(Y)
    return xs, ys


def solve_isometry(x: SurfaceParam, psi, seed: int = 0) -> Optional[Isometry]:
    """The isometry f with f o x = x o psi, or None."""
    p1, p2 = _psi_pair(psi)
    rng = random.Random(seed)
    count = 8
    sols = None
    while count <= 48:
        xs, ys = _sample_pairs(x, (p1, p2), count, rng)
        try:
            sols = solve_affine(xs, ys)
            break
        except Underdetermined:
            count *= 2
    if sols is None:
        raise Underdetermined()
    if not sols:
        return None
    lhs_cache = None
    for A, b in sols:
        lhs = _affine_rf(A, b, x.comps)
        if lhs_cache is None:
            lhs_cache = x.compose(p1, p2).comps
        if all(l == r for l, r in zip(lhs, lhs_cache)):
            return Isometry(A, b)
        log.debug("numerically consistent isometry fails the symbolic check")
    return None


def solve_curve_isometry(c: CurveParam, phi: RationalFunction, seed: int = 0) -> List[Isometry]:
    """Isometries f with f o c = c o phi (planar curves admit a reflection pair)."""
    rng = random.Random(seed)
    count = 8
    while True:
        xs, ys = [], []
        tries = 0
        while len(xs) < count and tries < 50 * count:
            tries += 1
            t0 = Fraction(rng.randint(-60, 60), rng.randint(1, 9))
            try:
                w0 = phi.eval({"t": t0})
                xs.append(c.at(t0))
                ys.append(c.at(w0))
            except ZeroDivisionError:
                continue
        try:
            sols = solve_affine(xs, ys)
            break
        except Underdetermined:
            if count >= 48:
                raise
            count *= 2
    out = []
    target = None
    for A, b in sols:
        lhs = _affine_rf(A, b, c.comps)
        if target is None:
            target = c.compose(phi).comps
        if all(l == r for l, r in zip(lhs, target)):
            out.append(Isometry(A, b))
    return out


# -- group structure -----------------------------------------------------------

@dataclass
class ClosureReport:
    closed: bool
    order: int
    missing: List[Isometry]
    has_identity: bool

    def __str__(self):
        if self.closed:
            return f"closed group of order {self.order}"
        return f"not closed: {len(self.missing)} missing element(s)"


def _as_isometries(items: Iterable) -> List[Isometry]:
    out = []
    for it in items:
        out.append(it.isometry if isinstance(it, SymmetryRecord) else it)
    return out


def distinct_isometries(items: Iterable) -> List[Isometry]:
    seen = {}
    for f in _as_isometries(items):
        seen.setdefault(f.key(), f)
    return [seen[k] for k in sorted(seen, key=lambda k: seen[k].sort_key())]


def group_closure_check(syms: Iterable) -> ClosureReport:
    """Closure under composition and inverse; lists the missing elements."""
    elems = distinct_isometries(syms)
    keys = {f.key() for f in elems}
    missing = {}
    for f in elems:
        g = invert(f)
        if g.key() not in keys:
            missing.setdefault(g.key(), g)
        for h in elems:
            k = compose(f, h)
            if k.key() not in keys:
                missing.setdefault(k.key(), k)
    has_id = Isometry.identity().key() in keys
    if not has_id:
        missing.setdefault(Isometry.identity().key(), Isometry.identity())
    miss = [missing[k] for k in sorted(missing, key=lambda k: missing[k].sort_key())]
    return ClosureReport(closed=not miss, order=len(elems), missing=miss, has_identity=has_id)
