import math

import numpy as np
import pytest
from hypothesis import strategies as st

from rectdist.geometry import Point3, RectScenario
from rectdist.scenarios import preset


def centered_square(side: float = 2.0) -> RectScenario:
    return RectScenario(side, side, Point3(0.0, 0.0, 0.0))


@st.composite
def scenarios(draw, allow_boundary: bool = True):
    """Random rectangles with the reference point anywhere in the closed region."""
    lx = draw(st.floats(0.5, 300.0))
    ly = draw(st.floats(0.5, 300.0))
    fx = draw(st.floats(-0.5, 0.5))
    fy = draw(st.floats(-0.5, 0.5))
    if allow_boundary:
        fx = draw(st.sampled_from([fx, fx, fx, -0.5, 0.5]))
        fy = draw(st.sampled_from([fy, fy, fy, -0.5, 0.5]))
    return RectScenario(lx, ly, Point3(fx * lx, fy * ly, 0.0))


def random_scenario(rng: np.random.Generator, boundary_prob: float = 0.15) -> RectScenario:
    lx, ly = rng.uniform(0.5, 300.0, 2)
    f = rng.uniform(-0.5, 0.5, 2)
    for k in range(2):
        if rng.random() < boundary_prob:
            f[k] = rng.choice([-0.5, 0.5])
    return RectScenario(float(lx), float(ly), Point3(float(f[0] * lx), float(f[1] * ly), 0.0))


def vertex_angles(s):
    """Azimuths of the four rectangle vertices seen from the reference point."""
    return [math.atan2(sy * s.ly / 2 - s.u.y, sx * s.lx / 2 - s.u.x) % (2 * math.pi)
            for sx in (-1, 1) for sy in (-1, 1)]


@pytest.fixture(params=["O", "A", "B", "C"])
def any_preset(request):
    return preset(request.param)


@pytest.fixture
def square():
    return centered_square()


__all__ = ["centered_square", "scenarios", "random_scenario", "vertex_angles"]
