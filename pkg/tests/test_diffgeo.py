import pytest
import sympy as sp

from surfsym.diffgeo import (
    CurveIsLine,
    curve_curvature_sq,
    curve_torsion,
    fiber_degree,
    fundamental_forms,
    gauss_curvature,
    mean_curvature_pn,
    mean_curvature_squared,
    normal_unnormalized,
    pn_check,
)
from surfsym.polyalg import RationalFunction

from conftest import curve, s_, surf_file, surface, sym_equal, t_, to_sympy

SPHERE = "((1 - t^2 - s^2)/(1 + t^2 + s^2), 2*t/(1 + t^2 + s^2), 2*s/(1 + t^2 + s^2))"
ELLIPSOID = "(2*(1 - s^2 - t^2)/(s^2 + t^2 + 1), -2*t/(s^2 + t^2 + 1), 8*s/(s^2 + t^2 + 1))"


def sympy_invariants(x):
    """K and H^2 computed independently with sympy."""
    X = sp.Matrix([to_sympy(c) for c in x.comps])
    Xt, Xs = X.diff(t_), X.diff(s_)
    E, F, G = Xt.dot(Xt), Xt.dot(Xs), Xs.dot(Xs)
    n = Xt.cross(Xs)
    L, M, N = X.diff(t_, 2).dot(n), X.diff(t_).diff(s_).dot(n), X.diff(s_, 2).dot(n)
    W2 = E * G - F ** 2
    # L, M, N here carry one factor W
    K = (L * N - M ** 2) / W2 ** 2
    H2 = (E * N + G * L - 2 * F * M) ** 2 / (4 * W2 ** 3)
    return K, H2


def test_normal_plane_and_paraboloid():
    n = normal_unnormalized(surface("(t, s, 0)"))
    assert n == (RationalFunction.const(0), RationalFunction.const(0), RationalFunction.const(1))
    n = normal_unnormalized(surface("(t, s, t^2 + s^2)"))
    assert [to_sympy(c) for c in n] == [-2 * t_, -2 * s_, 1]


def test_normal_ellipsoid_orthogonal():
    x = surface(ELLIPSOID)
    n = normal_unnormalized(x)
    for var in ("t", "s"):
        assert sum((a * c.diff(var) for a, c in zip(n, x.comps)), RationalFunction.const(0)).is_zero()
    # the common denominator is (s^2 + t^2 + 1)^3 after clearing
    for c in n:
        assert sp.degree(sp.factor(to_sympy(c.den)), s_) <= 6


def test_forms_plane():
    ff = fundamental_forms(surface("(t, s, 0)"))
    assert (ff.E, ff.F, ff.G) == (RationalFunction.const(1), RationalFunction.const(0), RationalFunction.const(1))
    assert ff.L2.is_zero() and ff.M2.is_zero() and ff.N2.is_zero()


def test_forms_sphere_conformal():
    ff = fundamental_forms(surface(SPHERE))
    assert sym_equal(to_sympy(ff.E), 4 / (1 + t_ ** 2 + s_ ** 2) ** 2)
    assert ff.F.is_zero()
    assert ff.E == ff.G


def test_forms_saddle():
    ff = fundamental_forms(surface("(t, s, t*s)"))
    assert to_sympy(ff.E) == 1 + s_ ** 2
    assert to_sympy(ff.F) == t_ * s_
    assert to_sympy(ff.G) == 1 + t_ ** 2
    assert ff.L2.is_zero() and ff.N2.is_zero()
    assert ff.M2 == RationalFunction.const(1)


def test_curvatures_sphere_and_plane():
    x = surface(SPHERE)
    assert gauss_curvature(x) == RationalFunction.const(1)
    assert mean_curvature_squared(x) == RationalFunction.const(1)
    p = surface("(t, s, 0)")
    assert gauss_curvature(p).is_zero()
    assert mean_curvature_squared(p).is_zero()


def test_tangential_developable_is_flat():
    assert gauss_curvature(surface("(t + s, t^2 + 2*s*t, t^3 + 3*s*t^2)")).is_zero()


def test_saddle_mean_curvature():
    x = surface("(t, s, t*s)")
    assert sym_equal(to_sympy(mean_curvature_squared(x)), t_ ** 2 * s_ ** 2 / (1 + t_ ** 2 + s_ ** 2) ** 3)
    assert sym_equal(to_sympy(gauss_curvature(x)), -1 / (1 + t_ ** 2 + s_ ** 2) ** 2)


@pytest.mark.parametrize("text", [
    ELLIPSOID,
    "(t^2, t/s, s)",
    "(t, s, t^3 - 3*t*s^2)",
    "(t + s^2, s - t^2, t*s + 1)",
    "((1 - t^2)*s/(1 + t^2), 2*t*s/(1 + t^2), 2*t/(1 + t^2)*2*(1 - t^2)/(1 + t^2))",
])
def test_curvatures_match_sympy(text):
    x = surface(text)
    K, H2 = sympy_invariants(x)
    assert sym_equal(to_sympy(gauss_curvature(x)), K)
    assert sym_equal(to_sympy(mean_curvature_squared(x)), H2)


def test_pn_detection():
    assert pn_check(surface("(t, s, 0)")) == RationalFunction.const(1)
    assert pn_check(surface("(t, s, t^2 + s^2)")) is None
    x = surf_file("pn_cubic").surface()
    w = pn_check(x)
    assert w is not None
    assert w * w == fundamental_forms(x).Wsq
    H = mean_curvature_pn(x, w)
    assert H * H == mean_curvature_squared(x)


def test_fibre_degrees():
    assert fiber_degree(surface(ELLIPSOID)) == 1
    assert fiber_degree(surface("(t^3*s, t^3/s, s)")) == 3
    assert fiber_degree(surf_file("plucker_4").surface()) == 2


def test_twisted_cubic():
    c = curve("(t, t^2, t^3)")
    k2 = 4 * (9 * t_ ** 4 + 9 * t_ ** 2 + 1) / (9 * t_ ** 4 + 4 * t_ ** 2 + 1) ** 3
    assert sym_equal(to_sympy(curve_curvature_sq(c)), k2)
    assert sym_equal(to_sympy(curve_torsion(c)), 3 / (9 * t_ ** 4 + 9 * t_ ** 2 + 1))
    # kappa^2 |c'|^6 = |c' x c''|^2
    d1 = sp.Matrix([1, 2 * t_, 3 * t_ ** 2])
    d2 = d1.diff(t_)
    assert sp.expand(k2 * d1.dot(d1) ** 3 - d1.cross(d2).dot(d1.cross(d2))) == 0


def test_circle_and_line():
    c = curve("((1 - t^2)/(1 + t^2), 2*t/(1 + t^2), 0)")
    assert curve_curvature_sq(c) == RationalFunction.const(1)
    assert curve_torsion(c).is_zero()
    with pytest.raises(CurveIsLine, match="curve is a line"):
        curve_curvature_sq(curve("(t, 2*t, 3*t)"))
