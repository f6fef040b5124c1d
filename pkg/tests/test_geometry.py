import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rectdist.geometry import (
    TWO_PI, Point2, Point3, RectScenario, beta, cart_to_polar,
    cart_to_spherical, f_op, normalize_angle, offsets, polar_to_cart, positive_part,
    quadrant, spherical_to_cart,
)
from rectdist.scenarios import preset

from conftest import centered_square, scenarios


def test_cart_to_polar_axes():
    c = cart_to_polar(Point2(1.0, 0.0))
    assert (c.r, c.theta) == (1.0, 0.0)
    c = cart_to_polar(Point2(0.0, -1.0))
    assert c.r == 1.0
    assert c.theta == pytest.approx(1.5 * math.pi, abs=1e-15)


def test_cart_to_polar_offset_point():
    c = cart_to_polar(Point2(30.0, 25.0))
    assert c.r == pytest.approx(math.sqrt(1525.0), rel=1e-15)
    assert c.theta == pytest.approx(math.atan(25.0 / 30.0), rel=1e-15)


def test_cart_to_polar_about_origin():
    c = cart_to_polar(Point2(2.0, 3.0), origin=Point2(1.0, 3.0))
    assert (c.r, c.theta) == (1.0, 0.0)


def test_cart_to_spherical_coincident_is_zero():
    c = cart_to_spherical(Point3(1.0, 2.0, 3.0), Point3(1.0, 2.0, 3.0))
    assert (c.d, c.theta, c.psi) == (0.0, 0.0, 0.0)


def test_cart_to_spherical_straight_down():
    c = cart_to_spherical(Point3(0.0, 0.0, 1.5), Point3(0.0, 0.0, 10.0))
    assert c.d == pytest.approx(8.5)
    assert c.psi == pytest.approx(math.pi)


coord = st.floats(-1e3, 1e3)


@given(coord, coord)
def test_polar_round_trip(x, y):
    back = polar_to_cart(cart_to_polar(Point2(x, y)))
    scale = max(1.0, math.hypot(x, y))
    assert abs(back.x - x) <= 1e-12 * scale
    assert abs(back.y - y) <= 1e-12 * scale


@given(coord, coord, coord)
def test_spherical_round_trip(x, y, z):
    back = spherical_to_cart(cart_to_spherical(Point3(x, y, z)))
    scale = max(1.0, math.sqrt(x * x + y * y + z * z))
    for a, b in ((back.x, x), (back.y, y), (back.z, z)):
        assert abs(a - b) <= 1e-12 * scale


@given(st.floats(-100.0, 100.0))
def test_normalize_angle_range(phi):
    out = normalize_angle(phi)
    assert 0.0 <= out < TWO_PI
    assert math.isclose(math.cos(out), math.cos(phi), abs_tol=1e-9)


def test_offsets_examples():
    off = offsets(centered_square())
    assert (off.hx_plus, off.hx_minus, off.hy_plus, off.hy_minus) == (1.0, -1.0, 1.0, -1.0)
    off = offsets(preset("A"))
    assert off.hy_plus == 0.0 and off.hy_minus == -9.75
    off = offsets(preset("O"))
    assert (off.hx_plus, off.hx_minus, off.hy_plus, off.hy_minus) == (70.0, -130.0, 25.0, -75.0)


def test_offset_vector_ordering():
    off = offsets(preset("O"))
    assert off.h == (70.0, 70.0, 130.0, 130.0, 25.0, 25.0, 75.0, 75.0)


def test_corners_stay_in_their_quadrants_on_a_wall():
    c = offsets(preset("A")).corners
    assert c[0] == 0.0
    assert c[1] == pytest.approx(math.pi)
    assert math.pi < c[2] < 1.5 * math.pi < c[3] < TWO_PI


def test_beta_examples():
    off = offsets(centered_square())
    assert beta(0.0, off) == 1.0
    assert beta(math.pi / 4, off) == pytest.approx(math.sqrt(2.0), rel=1e-15)
    assert beta(math.pi / 2, offsets(preset("A"))) == 0.0


@settings(max_examples=300)
@given(scenarios(), st.floats(0.0, 1.0), st.floats(0.0, TWO_PI, exclude_max=True))
def test_beta_membership_equivalence(s, frac, phi):
    off = offsets(s)
    rho = frac * s.r_max
    b = beta(phi, off)
    x = s.u.x + rho * math.cos(phi)
    y = s.u.y + rho * math.sin(phi)
    # skip the boundary band where rounding decides either way
    if abs(rho - b) <= 1e-9 * max(1.0, s.r_max):
        return
    assert (rho <= b) == s.contains(x, y)


@given(scenarios(allow_boundary=False), st.floats(0.0, TWO_PI, exclude_max=True))
def test_beta_positive_for_interior_reference(s, phi):
    if min(abs(abs(s.u.x) - s.lx / 2), abs(abs(s.u.y) - s.ly / 2)) == 0.0:
        return
    assert beta(phi, offsets(s)) > 0.0


def test_quadrant_examples():
    assert quadrant(0.0) == 1
    assert quadrant(math.pi / 2) == 2
    assert quadrant(7 * math.pi / 4) == 4


def test_positive_part_examples():
    assert positive_part(-3.0) == 0.0
    assert positive_part(0.0) == 0.0
    assert positive_part(2.5) == 2.5


def test_f_op_examples():
    assert f_op(math.tan, 0.0, math.pi / 4) == pytest.approx(1.0)
    assert f_op(math.tan, math.pi / 4, 0.0) == 0.0
    assert f_op(lambda x: x, 1.0, 3.0) == 2.0


@given(st.lists(st.floats(-1.4, 1.4), min_size=3, max_size=3))
def test_f_op_additive(points):
    a, b, c = sorted(points)
    lhs = f_op(math.tan, a, b) + f_op(math.tan, b, c)
    assert lhs == pytest.approx(f_op(math.tan, a, c), abs=1e-9)


@pytest.mark.parametrize("kwargs, field", [
    (dict(lx=0.0, ly=1.0, u=Point3(0, 0, 0)), "lx"),
    (dict(lx=1.0, ly=-2.0, u=Point3(0, 0, 0)), "ly"),
    (dict(lx=1.0, ly=1.0, u=Point3(0, 0, 0), vz=-1.0), "vz"),
])
def test_scenario_rejects_bad_fields(kwargs, field):
    with pytest.raises(ValueError, match=field):
        RectScenario(**kwargs)


def test_scenario_rejects_outside_reference():
    with pytest.raises(ValueError, match="reference point"):
        RectScenario(2.0, 2.0, Point3(1.5, 0.0, 0.0))


def test_r_max_scenario_o():
    assert preset("O").r_max == pytest.approx(math.hypot(130.0, 75.0))
