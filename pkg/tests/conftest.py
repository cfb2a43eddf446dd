import os
import random
from fractions import Fraction

import pytest
import sympy as sp

from surfsym.diffgeo import CurveParam, SurfaceParam
from surfsym.parser import load_surface, parse_expr, parse_tuple
from surfsym.polyalg import MultiPoly, RationalFunction

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
SURFACES = os.path.join(ROOT, "surfaces")

t_, s_, u_, v_, w_ = sp.symbols("t s u v w")
SYMS = {"t": t_, "s": s_, "u": u_, "v": v_, "w": w_}

# criterion id -> (passed, detail); filled by test_acceptance
ACCEPTANCE = {}


def poly(text, vars=("t", "s")):
    """A MultiPoly from an expression string (must be polynomial)."""
    f = parse_expr(text, vars)
    assert f.den.is_constant()
    return f.num.scale(Fraction(1) / f.den.constant_value())


def rf(text, vars=("t", "s")):
    return parse_expr(text, vars)


def surface(text):
    return SurfaceParam.of(parse_tuple(text))


def curve(text):
    return CurveParam.of(parse_tuple(text, ("t",)))


def surf_file(name):
    return load_surface(os.path.join(SURFACES, name + ".surf"))


def to_sympy(obj):
    """Independent view of a MultiPoly / RationalFunction as a sympy expression."""
    if isinstance(obj, RationalFunction):
        return to_sympy(obj.num) / to_sympy(obj.den)
    if isinstance(obj, MultiPoly):
        syms = [SYMS.get(v) or sp.Symbol(v) for v in obj.vars]
        acc = sp.Integer(0)
        for e, c in obj.terms.items():
            m = sp.Rational(Fraction(c).numerator, Fraction(c).denominator)
            for x, k in zip(syms, e):
                m *= x ** k
            acc += m
        return acc
    return sp.nsimplify(obj)


def sym_equal(a, b):
    # cross-multiplied numerators; exact and much cheaper than simplify
    na, da = sp.fraction(sp.together(sp.sympify(a)))
    nb, db = sp.fraction(sp.together(sp.sympify(b)))
    return sp.expand(na * db - nb * da) == 0


@pytest.fixture
def rng():
    return random.Random(12345)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: (int(k.split(".")[0]), k)):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'}  {detail}")
