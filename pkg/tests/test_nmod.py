from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from surfsym import _nmod_py, nmod

try:
    from surfsym import _nmod
except ImportError:  # pragma: no cover
    _nmod = None

P = nmod.P61
coeffs = st.lists(st.integers(0, P - 1), min_size=1, max_size=25)
compiled = pytest.mark.skipif(_nmod is None, reason="extension not built")


def test_working_primes_are_prime():
    for i in range(12):
        assert sympy.isprime(nmod.prime(i))
    assert len(set(nmod.PRIMES)) == len(nmod.PRIMES)


def test_ratrec_roundtrip():
    for q in [Fraction(3, 7), Fraction(-22, 9), Fraction(0), Fraction(1000, 1)]:
        a = q.numerator * pow(q.denominator, -1, P) % P
        assert nmod.ratrec(a, P) == q


def test_roots_mod_p():
    x = sympy.Symbol("x")
    f = [int(c) % P for c in sympy.Poly((x - 3) * (x + 5), x).all_coeffs()[::-1]]
    assert nmod.roots(f, P) == sorted([3, P - 5])


@compiled
@settings(max_examples=80, deadline=None)
@given(coeffs, coeffs)
def test_backends_agree_on_arithmetic(a, b):
    a, b = _nmod_py.trim(a), _nmod_py.trim(b)
    assert _nmod.mul(a, b, P) == _nmod_py.mul(a, b, P)
    assert _nmod.mul_trunc(a, b, 7, P) == _nmod_py.mul_trunc(a, b, 7, P)
    if b:
        assert _nmod.divmod_(a, b, P) == _nmod_py.divmod_(a, b, P)
        assert _nmod.gcd(a, b, P) == _nmod_py.gcd(a, b, P)
    if a and b and len(a) > 1 and len(b) > 1:
        assert _nmod.resultant(a, b, P) == _nmod_py.resultant(a, b, P)


@compiled
@settings(max_examples=40, deadline=None)
@given(coeffs, st.lists(st.integers(0, P - 1), min_size=1, max_size=10, unique=True))
def test_backends_agree_on_evaluation(a, xs):
    assert _nmod.eval_many(a, xs, P) == _nmod_py.eval_many(a, xs, P)
    ys = _nmod_py.eval_many(a, xs, P)
    assert _nmod.interpolate(xs, ys, P) == _nmod_py.interpolate(xs, ys, P)


@compiled
@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(0, P - 1), min_size=1, max_size=5), min_size=1, max_size=5),
       st.lists(st.integers(0, P - 1), min_size=1, max_size=6), st.lists(st.integers(0, P - 1), min_size=1, max_size=6))
def test_backends_agree_on_series(rows, u, v):
    n = 6
    assert _nmod.eval2_series(rows, u, v, n, P) == _nmod_py.eval2_series(rows, u, v, n, P)
    if u[0]:
        assert _nmod.series_inv(u, n, P) == _nmod_py.series_inv(u, n, P)


@compiled
def test_backends_agree_on_nullspace():
    rows = [[1, 2, 3, 4], [2, 4, 6, 8], [0, 1, 1, 1]]
    assert _nmod.nullspace([r[:] for r in rows], 4, P) == _nmod_py.nullspace([r[:] for r in rows], 4, P)


def test_interpolation_inverts_evaluation():
    a = [5, 0, 7, 1]
    xs = [1, 2, 3, 4]
    assert nmod.interpolate(xs, nmod.eval_many(a, xs, P), P) == a
