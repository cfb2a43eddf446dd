"""Invariance, covariance and round-trip properties on random inputs."""
import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from surfsym.diffgeo import CurveParam, SurfaceParam, gauss_curvature, mean_curvature_pn, mean_curvature_squared
from surfsym.isometry import Isometry, compose, group_closure_check, is_orthogonal, rotation_from_quaternion
from surfsym.pipeline import general_symmetries
from surfsym.polyalg import MultiPoly, RationalFunction
from surfsym.ruled import RuledSurface, striction_line, striction_residual

from conftest import curve, surf_file, surface

TS = ("t", "s")
T = RationalFunction(MultiPoly.var("t", TS))
S = RationalFunction(MultiPoly.var("s", TS))

LOW_DEGREE = [
    "(t, s, t^2 + s^2)",
    "(t, s, t*s)",
    "(t + s^2, s - t^2, t*s + 1)",
    "(t, s, t^3 - 3*t*s^2)",
    "(t^2, t/s, s)",
    "(2*t/(1 + t^2 + s^2), 2*s/(1 + t^2 + s^2), (t^2 + s^2 - 1)/(1 + t^2 + s^2))",
]
_parsed = {}


def low_degree(i):
    if i not in _parsed:
        _parsed[i] = surface(LOW_DEGREE[i])
    return _parsed[i]


quaternions = st.tuples(*[st.integers(-6, 6)] * 4).filter(any)
translations = st.tuples(*[st.fractions(min_value=-10, max_value=10, max_denominator=7)] * 3)


@st.composite
def isometries(draw):
    A = rotation_from_quaternion(*draw(quaternions))
    if draw(st.booleans()):
        A = tuple(tuple(-x for x in row) for row in A)
    return Isometry(A, draw(translations))


@st.composite
def affine_maps(draw):
    a, b, c, d = draw(st.tuples(*[st.integers(-4, 4)] * 4).filter(lambda m: m[0] * m[3] - m[1] * m[2] != 0))
    e, f = draw(st.tuples(*[st.fractions(min_value=-5, max_value=5, max_denominator=4)] * 2))
    return (T * a + S * b + e, T * c + S * d + f)


# -- invariance under isometries ------------------------------------------------

@settings(max_examples=50, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.integers(0, len(LOW_DEGREE) - 1), isometries())
def test_curvatures_invariant_under_isometries(i, f):
    x = low_degree(i)
    y = x.transform(f.A, f.b)
    assert is_orthogonal(f.A)
    assert gauss_curvature(y) == gauss_curvature(x)
    assert mean_curvature_squared(y) == mean_curvature_squared(x)


_pnq = []


@settings(max_examples=20, deadline=None)
@given(isometries())
def test_signed_mean_curvature_follows_det(f):
    # with a rational unit normal, H itself changes sign with orientation
    if not _pnq:
        _pnq.append(surf_file("pn_quartic").surface())
    x = _pnq[0]
    y = x.transform(f.A, f.b)
    assert mean_curvature_pn(y) == mean_curvature_pn(x) * f.det_sign


# -- covariance under reparametrization ---------------------------------------------

@settings(max_examples=50, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.integers(0, len(LOW_DEGREE) - 1), affine_maps())
def test_curvatures_covariant_under_affine_reparametrization(i, psi):
    x = low_degree(i)
    y = x.compose(*psi)
    sub = {"t": psi[0], "s": psi[1]}
    assert gauss_curvature(y) == gauss_curvature(x).subs(sub)
    assert mean_curvature_squared(y) == mean_curvature_squared(x).subs(sub)


# -- line of striction ------------------------------------------------------------

def _poly_t(rng, deg, span=3):
    return " + ".join(f"({rng.randint(-span, span)})*t^{k}" for k in range(deg + 1))


def _unit_direction(rng):
    # inverse stereographic image of a random rational curve: |v| = 1
    a, b = _poly_t(rng, 1), _poly_t(rng, rng.choice([1, 2]))
    n = f"(({a})^2 + ({b})^2 + 1)"
    return f"2*({a})/{n}", f"2*({b})/{n}", f"(({a})^2 + ({b})^2 - 1)/{n}"


def _random_ruled(rng, unit):
    while True:
        u = tuple(_poly_t(rng, rng.choice([1, 2, 3])) for _ in range(3))
        v = _unit_direction(rng) if unit else tuple(_poly_t(rng, rng.choice([1, 2])) for _ in range(3))
        r = RuledSurface(curve("(" + ", ".join(u) + ")"), curve("(" + ", ".join(v) + ")"))
        try:
            return r, striction_line(r)
        except ValueError:  # cylindrical: no striction line
            continue


def _dot(a, b):
    return sum((x * y for x, y in zip(a, b)), RationalFunction.const(0))


def _d(c):
    return [x.diff("t") for x in c.comps]


def test_striction_orthogonal_for_unit_directions():
    rng = random.Random(7)
    for _ in range(20):
        r, c = _random_ruled(rng, unit=True)
        assert _dot(r.v.comps, r.v.comps) == RationalFunction.const(1)
        assert _dot(_d(c), _d(r.v)).is_zero()


def test_striction_residual_vanishes_for_general_directions():
    rng = random.Random(8)
    for _ in range(20):
        r, c = _random_ruled(rng, unit=False)
        assert striction_residual(c, r.v).is_zero()


def test_striction_independent_of_directrix():
    rng = random.Random(9)
    for _ in range(20):
        r, c = _random_ruled(rng, unit=rng.random() < 0.5)
        lam = curve(f"({_poly_t(rng, 2)}, 0, 0)").comps[0]
        u2 = CurveParam(*(a + lam * b for a, b in zip(r.u.comps, r.v.comps)))
        assert striction_line(RuledSurface(u2, r.v)).comps == c.comps


# -- planted symmetries -------------------------------------------------------------

def _rpoly(rng, deg):
    acc = RationalFunction.const(0)
    for i in range(deg + 1):
        for j in range(deg + 1 - i):
            if rng.random() < 0.6:
                acc = acc + T ** i * S ** j * rng.randint(-3, 3)
    return acc


def _involutive_isometry(rng):
    # reflection in a plane with normal n, or the half-turn about n
    n = [0, 0, 0]
    while not any(n):
        n = [rng.randint(-2, 2) for _ in range(3)]
    nn = sum(x * x for x in n)
    R = [[Fraction(int(i == j)) - Fraction(2 * n[i] * n[j], nn) for j in range(3)] for i in range(3)]
    k = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
    if rng.random() < 0.5:
        R = [[-x for x in row] for row in R]
        m = [n[1], -n[0], 0] if (n[0] or n[1]) else [1, 0, 0]
        b = [k * x for x in m]
    else:
        b = [k * x for x in n]
    return Isometry(R, b)


def _involutive_affine(rng):
    while True:
        P = [[rng.randint(-2, 2) for _ in range(2)] for _ in range(2)]
        d = P[0][0] * P[1][1] - P[0][1] * P[1][0]
        if d:
            break
    Pi = [[Fraction(P[1][1], d), Fraction(-P[0][1], d)], [Fraction(-P[1][0], d), Fraction(P[0][0], d)]]
    D = [1, -1] if rng.random() < 0.7 else [-1, -1]
    M = [[sum(P[i][k] * D[k] * Pi[k][j] for k in range(2)) for j in range(2)] for i in range(2)]
    k = Fraction(rng.randint(-3, 3), rng.randint(1, 2))
    c = [k * P[0][1], k * P[1][1]] if D == [1, -1] else [k, Fraction(rng.randint(-3, 3))]
    return (T * M[0][0] + S * M[0][1] + c[0], T * M[1][0] + S * M[1][1] + c[1])


def planted_surface(rng, deg):
    """x = (g + f o g o psi)/2 for involutions f, psi; then f o x = x o psi."""
    while True:
        g = SurfaceParam(*(_rpoly(rng, deg) for _ in range(3)))
        f, psi = _involutive_isometry(rng), _involutive_affine(rng)
        gp = g.compose(*psi).transform(f.A, f.b)
        x = SurfaceParam(*((a + b) * Fraction(1, 2) for a, b in zip(g.comps, gp.comps)))
        try:
            if gauss_curvature(x).is_constant():
                continue
        except ValueError:
            continue
        return x, f, psi


def test_planted_construction():
    rng = random.Random(3)
    x, f, psi = planted_surface(rng, 2)
    assert x.transform(f.A, f.b).comps == x.compose(*psi).comps


@pytest.mark.parametrize("seed", range(20))
def test_planted_symmetry_recovered(seed):
    rng = random.Random(1000 + seed)
    x, f, psi = planted_surface(rng, rng.choice([2, 3]))
    res = general_symmetries(x)
    assert f in res.isometries
    # every report is a group of isometries
    assert all(is_orthogonal(g.A) for g in res.isometries)
    assert group_closure_check(res.isometries).closed


def test_closure_detects_missing_element():
    a = _involutive_isometry(random.Random(5))
    b = _involutive_isometry(random.Random(6))
    rep = group_closure_check([Isometry.identity(), a, b])
    if compose(a, b) not in (Isometry.identity(), a, b):
        assert not rep.closed
