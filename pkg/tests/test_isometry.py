import random
from fractions import Fraction as Fr

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from surfsym.isometry import (
    Isometry,
    Underdetermined,
    compose,
    group_closure_check,
    invert,
    random_isometry,
    rotation_from_quaternion,
    solve_affine,
    solve_curve_isometry,
    solve_isometry,
)

from conftest import curve, rf, surf_file


def diag(*d):
    return Isometry(tuple(tuple(Fr(d[i]) if i == j else Fr(0) for j in range(3)) for i in range(3)))


def test_identity_psi_gives_identity():
    x = surf_file("toric_2").surface()
    assert solve_isometry(x, (rf("t"), rf("s"))).is_identity()


def test_ellipsoid_isometry():
    x = surf_file("ellipsoid").surface()
    f = solve_isometry(x, (rf("t/(t^2 + s^2)"), rf("-s/(t^2 + s^2)")))
    assert f == diag(-1, 1, -1)
    assert f.b == (0, 0, 0)


def test_pn_cubic_isometry():
    x = surf_file("pn_cubic").surface()
    f = solve_isometry(x, (rf("4*t/5 + 3*s/5 + 1/5"), rf("3*t/5 - 4*s/5 - 3/5")))
    assert f.A == ((Fr(24, 25), Fr(7, 25), 0), (Fr(7, 25), Fr(-24, 25), 0), (0, 0, 1))
    assert f.b == (Fr(-98, 75), Fr(686, 75), 0)


def test_singular_affine_map_is_not_a_symmetry():
    # (3t/5 - 4s/5 + 1/5, 3t/5 - 4s/5 - 3/5) has zero Jacobian
    x = surf_file("pn_cubic").surface()
    try:
        f = solve_isometry(x, (rf("3*t/5 - 4*s/5 + 1/5"), rf("3*t/5 - 4*s/5 - 3/5")))
    except Underdetermined:
        f = None
    assert f is None


def test_wrong_psi_rejected():
    x = surf_file("ellipsoid").surface()
    assert solve_isometry(x, (rf("t"), rf("2*s"))) is None


def test_collinear_data_underdetermined():
    pts = [(Fr(i), Fr(2 * i), Fr(3 * i)) for i in range(5)]
    with pytest.raises(Underdetermined, match="underdetermined"):
        solve_affine(pts, pts)


def test_coplanar_data_gives_both_reflections():
    pts = [(Fr(1), Fr(0), Fr(0)), (Fr(0), Fr(1), Fr(0)), (Fr(2), Fr(3), Fr(0)), (Fr(0), Fr(0), Fr(0))]
    sols = solve_affine(pts, pts)
    assert len(sols) == 2


def test_curve_isometry_twisted_cubic():
    fs = solve_curve_isometry(curve("(t, t^2, t^3)"), rf("-t"))
    assert fs == [diag(-1, 1, -1)]


def test_validation():
    with pytest.raises(ValueError, match="not orthogonal"):
        Isometry(((1, 1, 0), (0, 1, 0), (0, 0, 1)))
    assert diag(1, -1, 1).det_sign == -1


def test_compose_examples():
    f = random_isometry(random.Random(3))
    assert compose(f, invert(f)).is_identity()
    assert compose(Isometry.identity(), f) == f
    assert compose(diag(-1, 1, -1), diag(1, -1, -1)) == diag(-1, -1, 1)


def test_closure_examples():
    assert group_closure_check([Isometry.identity()]).closed
    eight = [diag(a, b, c) for a in (1, -1) for b in (1, -1) for c in (1, -1)]
    rep = group_closure_check(eight)
    assert rep.closed and rep.order == 8
    # the rational rotation matrices of order 3 permute the axes
    r3 = Isometry(((0, 0, 1), (1, 0, 0), (0, 1, 0)))
    rep = group_closure_check([Isometry.identity(), r3])
    assert not rep.closed
    assert invert(r3) in rep.missing


quats = st.tuples(*[st.integers(-6, 6)] * 4).filter(any)


@settings(max_examples=60, deadline=None)
@given(quats, quats)
def test_rotations_orthogonal_and_compose(q1, q2):
    A, B = rotation_from_quaternion(*q1), rotation_from_quaternion(*q2)
    f, g = Isometry(A, (1, 2, 3)), Isometry(B, (Fr(1, 2), 0, -1))
    h = compose(f, g)
    M = sp.Matrix(h.A)
    assert (M.T * M - sp.eye(3)).is_zero_matrix
    assert h.det_sign == 1
    p = (Fr(3), Fr(-5, 7), Fr(2))
    assert h(p) == f(g(p))
    assert compose(invert(h), h).is_identity()
