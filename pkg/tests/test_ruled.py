import pytest

from surfsym.diffgeo import CurveParam
from surfsym.isometry import Isometry
from surfsym.polyalg import RationalFunction
from surfsym.ruled import (
    InfiniteSymmetries,
    MobiusTransform,
    RuledFallback,
    RuledSurface,
    StrictionUndefined,
    classify_developable,
    curve_symmetries,
    detect_standard_form,
    lift_to_surface,
    ruled_symmetries,
    striction_line,
    striction_residual,
)

from conftest import curve, rf, surf_file, surface

X5 = "(4 + s*(t + 1)^2, 1 + s*(t + 1), t + s)"
CYLINDER = "((1 - t^2)/(1 + t^2), 2*t/(1 + t^2), s)"
TANGENTIAL = "(t + s, t^2 + 2*s*t, t^3 + 3*s*t^2)"


def diag(*d):
    return Isometry(tuple(tuple(d[i] if i == j else 0 for j in range(3)) for i in range(3)))


def ruled(text):
    r = detect_standard_form(surface(text))
    assert r is not None
    return r


def test_standard_form_x5():
    r = ruled(X5)
    assert r.u == curve("(4, 1, t)")
    assert r.v == curve("((t + 1)^2, t + 1, 1)")


def test_standard_form_saddle():
    r = ruled("(t, s, t*s)")
    assert r.u == curve("(t, 0, 0)") and r.v == curve("(0, 1, t)")


def test_standard_form_absent():
    assert detect_standard_form(surf_file("ellipsoid").surface()) is None


def test_classification():
    assert classify_developable(ruled(X5)).tag == "not_developable"
    cyl = classify_developable(ruled(CYLINDER))
    assert cyl.tag == "cylindrical" and cyl.direction == (0, 0, 1)
    assert classify_developable(ruled(TANGENTIAL)).tag == "tangential"
    cone = classify_developable(ruled("(s*(1 - t^2)/(1 + t^2), 2*s*t/(1 + t^2), s)"))
    assert cone.tag == "conical" and cone.vertex == (0, 0, 0)
    assert classify_developable(ruled("(t, s, 0)")).tag == "planar"


def test_striction_of_tangential_is_directrix():
    assert striction_line(ruled(TANGENTIAL)) == curve("(t, t^2, t^3)")


def test_striction_undefined_for_cylinder():
    with pytest.raises(StrictionUndefined):
        striction_line(ruled(CYLINDER))


def test_striction_x5_orthogonality():
    r = ruled(X5)
    c = striction_line(r)
    assert striction_residual(c, r.v).is_zero()
    assert not c.is_constant()


def test_curve_symmetries_twisted_cubic():
    pairs = curve_symmetries(curve("(t, t^2, t^3)"))
    got = {(str(m), f.key()) for m, f in pairs}
    assert (str(rf("-t")), diag(-1, 1, -1).key()) in got
    assert (str(rf("t")), Isometry.identity().key()) in got


def test_curve_symmetries_circle_infinite():
    with pytest.raises(InfiniteSymmetries):
        curve_symmetries(curve("((1 - t^2)/(1 + t^2), 2*t/(1 + t^2), 0)"))


def test_x5_striction_symmetries_lift():
    r = ruled(X5)
    pairs = curve_symmetries(striction_line(r))
    lifted = [(m, f) for m, f in pairs if lift_to_surface(r, m, f)]
    assert len(lifted) == 2


def test_lift_examples():
    r = ruled(TANGENTIAL)
    assert lift_to_surface(r, MobiusTransform.from_rf(rf("-t")), diag(-1, 1, -1))
    assert lift_to_surface(ruled(X5), MobiusTransform.identity(), Isometry.identity())


def test_lift_planted_counterexample():
    r = ruled(X5)
    c = striction_line(r)
    pairs = [(m, f) for m, f in curve_symmetries(c) if not m.is_identity()]
    assert pairs
    m, f = pairs[0]
    # same curve, rulings that ignore its symmetry
    bad = RuledSurface(c, curve("(1, t, t^3 + 2)"))
    assert not lift_to_surface(bad, m, f, tangential=False)


def test_ruled_symmetries_x5():
    res = ruled_symmetries(ruled(X5))
    assert res.group_order == 2
    assert all(r.provenance == "ruled_pipeline" for r in res.records)


def test_ruled_symmetries_tangential():
    res = ruled_symmetries(ruled(TANGENTIAL))
    assert res.group_order == 2
    x = ruled(TANGENTIAL).surface()
    for rec in res.records:
        f, c = rec.isometry, rec.reparam
        assert x.transform(f.A, f.b).comps == x.compose(c.psi1, c.psi2).comps


def test_plucker_falls_back():
    r = detect_standard_form(surf_file("plucker_4").surface())
    with pytest.raises(RuledFallback, match="straight line|line"):
        ruled_symmetries(r)


def test_cylinder_falls_back():
    with pytest.raises(RuledFallback, match="cylindrical"):
        ruled_symmetries(ruled(CYLINDER))


def test_mobius_validation():
    with pytest.raises(ValueError):
        MobiusTransform(1, 2, 2, 4)
    assert MobiusTransform.from_rf(rf("t^2")) is None
    assert MobiusTransform.from_rf(rf("(2*t + 1)/(t - 3)")) == MobiusTransform(2, 1, 1, -3)
