from fractions import Fraction

import pytest
import sympy as sp
from sympy.polys.subresultants_qq_zz import sylvester
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from surfsym.polyalg import (
    MultiPoly,
    NoConsistentBranch,
    RationalFunction,
    gcd_poly,
    rational_roots_univar,
    reconstruct_rational_function,
    resultant,
    resultant_bareiss,
    resultant_modular,
    squarefree_part,
)

from conftest import poly, rf, s_, sym_equal, t_, to_sympy, u_, v_

TSUV = ("t", "s", "u", "v")


def same_up_to_unit(a, b):
    # equal up to a nonzero rational constant
    q = sp.cancel(to_sympy(a) / to_sympy(b))
    return q.is_number and q != 0


# -- gcd ----------------------------------------------------------------------

def test_gcd_common_factor():
    assert gcd_poly(poly("t^2 - s^2"), poly("t - s")) == poly("t - s")


def test_gcd_with_zero_is_primitive_part():
    p = poly("6*t^2 + 4*s")
    assert gcd_poly(p, MultiPoly.const(0, ("t", "s"))) == poly("3*t^2 + 2*s")


def test_gcd_shared_quadratic():
    g = gcd_poly(poly("(t^2 + 1)*(t + s)"), poly("(t^2 + 1)*(t - s)"))
    assert g == poly("t^2 + 1")
    # oracle
    assert sp.expand(sp.gcd(sp.expand((t_**2 + 1) * (t_ + s_)), sp.expand((t_**2 + 1) * (t_ - s_))) - to_sympy(g)) == 0


small = st.integers(-4, 4)


@st.composite
def bivariate(draw, max_deg=3):
    terms = draw(st.dictionaries(st.tuples(st.integers(0, max_deg), st.integers(0, max_deg)), small, max_size=5))
    return MultiPoly({e: c for e, c in terms.items() if c}, ("t", "s"))


@settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(bivariate(), bivariate(), bivariate())
def test_gcd_matches_sympy(a, b, c):
    p, q = a * c, b * c
    g = gcd_poly(p, q)
    if not p and not q:
        return
    if p:
        assert g.divides(p)
    if q:
        assert g.divides(q)
    oracle = sp.gcd(sp.expand(to_sympy(p)), sp.expand(to_sympy(q)))
    if oracle == 0:
        assert not g
    else:
        assert same_up_to_unit(g, MultiPoly.const(1, ("t", "s")) if oracle.is_number else poly(str(oracle).replace("**", "^")))


# -- resultants ---------------------------------------------------------------

def test_resultant_linear():
    r = resultant(poly("v - t", TSUV), poly("v - s", TSUV), "v")
    assert same_up_to_unit(r, poly("t - s", TSUV))


def test_resultant_with_root_at_zero():
    r = resultant(poly("v^2 - t", TSUV), poly("v", TSUV), "v")
    assert same_up_to_unit(r, poly("t", TSUV))


def test_resultant_product_formula():
    r = resultant(poly("(v - t)*(v - 1)", TSUV), poly("(v - s)*(v - 2)", TSUV), "v")
    assert same_up_to_unit(r, poly("(t - s)*(t - 2)*(1 - s)", TSUV))


@settings(max_examples=30, deadline=None)
@given(st.lists(small, min_size=2, max_size=4), st.lists(small, min_size=2, max_size=4), st.integers(0, 6))
def test_resultant_methods_agree_with_sympy(ca, cb, k):
    # coefficients in v are linear polynomials in t
    a = sum((MultiPoly.var("v", TSUV) ** i * (MultiPoly.var("t", TSUV) * c + (i + k)) for i, c in enumerate(ca)),
            MultiPoly.const(0, TSUV))
    b = sum((MultiPoly.var("v", TSUV) ** i * (MultiPoly.var("t", TSUV) - c * k + 1) for i, c in enumerate(cb)),
            MultiPoly.const(0, TSUV))
    if a.degree("v") < 1 or b.degree("v") < 1:
        return
    # determinant of the Sylvester matrix (sympy's PRS resultant can differ in sign)
    oracle = sylvester(to_sympy(a), to_sympy(b), v_).det()
    r1 = resultant_bareiss(a, b, "v")
    r2 = resultant_modular(a, b, "v")
    assert r1 == r2
    assert sp.expand(to_sympy(r1) - oracle) == 0


# -- squarefree parts -----------------------------------------------------------

def test_squarefree_cube():
    assert squarefree_part(poly("(t - 1)^3"), "t") == poly("t - 1")


def test_squarefree_already():
    assert squarefree_part(poly("t^2 + 1"), "t") == poly("t^2 + 1")


def test_squarefree_mixed():
    vs = ("t", "s", "u")
    got = squarefree_part(poly("(u - t)^2*(u + s)", vs), "u")
    assert same_up_to_unit(got, poly("(u - t)*(u + s)", vs))


def test_squarefree_zero_rejected():
    with pytest.raises(ValueError):
        squarefree_part(MultiPoly.const(0, ("t",)), "t")


# -- rational roots -----------------------------------------------------------

def test_rational_roots_examples():
    u = ("u",)
    assert sorted(rational_roots_univar(poly("2*u^2 - u - 1", u))) == [Fraction(-1, 2), 1]
    assert rational_roots_univar(poly("u^2 + 1", u)) == []
    assert sorted(rational_roots_univar(poly("6*u^3 - 5*u^2 - 2*u + 1", u))) == [Fraction(-1, 2), Fraction(1, 3), 1]


@settings(max_examples=50, deadline=None)
@given(st.lists(st.fractions(min_value=-20, max_value=20, max_denominator=9), min_size=1, max_size=5),
       st.integers(0, 3))
def test_planted_roots_recovered(roots, extra):
    p = MultiPoly.const(1, ("u",))
    for r in roots:
        p = p * (MultiPoly.var("u", ("u",)) - r)
    # an irreducible quadratic contributes no rational roots
    p = p * (MultiPoly.var("u", ("u",)) ** 2 + (extra + 1))
    assert sorted(rational_roots_univar(p)) == sorted(set(roots))


# -- reconstruction -----------------------------------------------------------

def _samples(f, n, rng):
    out = []
    while len(out) < n:
        pt = (Fraction(rng.randint(-30, 30), rng.randint(1, 5)), Fraction(rng.randint(-30, 30), rng.randint(1, 5)))
        try:
            out.append((pt, f.eval({"t": pt[0], "s": pt[1]})))
        except ZeroDivisionError:
            pass
    return out


def test_reconstruct_known_function(rng):
    f = rf("t/(t^2 + s^2)")
    assert reconstruct_rational_function(_samples(f, 24, rng), 2) == f


def test_reconstruct_linear(rng):
    f = rf("-t")
    assert reconstruct_rational_function(_samples(f, 16, rng), 1) == f


def test_reconstruct_inconsistent(rng):
    # values of sqrt(t^2 + s^2) on Pythagorean points, one perturbed
    pts = [((3, 4), 5), ((5, 12), 13), ((8, 15), 17), ((7, 24), 25), ((20, 21), 29), ((12, 35), 37),
           ((9, 40), 41), ((28, 45), 53), ((11, 60), 61), ((33, 56), 65), ((16, 63), 65), ((48, 55), 73),
           ((13, 84), 85), ((36, 77), 85), ((39, 80), 89), ((65, 72), 97), ((6, 8), 11)]
    samples = [((Fraction(a), Fraction(b)), Fraction(c)) for (a, b), c in pts]
    with pytest.raises(NoConsistentBranch, match="no consistent branch"):
        reconstruct_rational_function(samples, 1)


# -- rational functions ----------------------------------------------------------

def test_rational_function_is_reduced():
    f = rf("(t^2 - s^2)/(t - s)")
    assert f == rf("t + s")
    assert f.den.is_constant()


def test_rational_function_arithmetic_matches_sympy():
    a, b = rf("t/(t^2 + s^2)"), rf("(s - 1)/(t + 2*s)")
    for got, want in [(a + b, to_sympy(a) + to_sympy(b)), (a * b, to_sympy(a) * to_sympy(b)),
                      (a / b, to_sympy(a) / to_sympy(b)), (a.diff("t"), sp.diff(to_sympy(a), t_))]:
        assert sym_equal(to_sympy(got), want)


def test_rational_function_zero_division():
    with pytest.raises(ZeroDivisionError):
        rf("t") / RationalFunction.const(0)
