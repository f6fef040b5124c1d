import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rectdist.geometry import HALF_PI, TWO_PI, beta, offsets
from rectdist.partition import (
    QUADRANT_OF, AngularInterval, IntervalSet, chi_intervals, measure, mu_intervals,
)
from rectdist.scenarios import preset

from conftest import centered_square, random_scenario, scenarios

GUARD = 1e-9


def _phi_grid(n):
    return np.linspace(0.0, TWO_PI, n, endpoint=False)


def test_measure_examples():
    assert measure(IntervalSet(())) == 0.0
    two = IntervalSet((AngularInterval(0.0, HALF_PI), AngularInterval(math.pi, 1.5 * math.pi)))
    assert measure(two) == pytest.approx(math.pi)


def test_make_canonicalizes_slivers():
    iv = AngularInterval.make(1.0, 1.0 + 1e-16, "X", 1)
    assert iv.empty and iv.width == 0.0


def test_interval_half_open():
    iv = AngularInterval(0.0, 1.0)
    assert 0.0 in iv and 1.0 not in iv


def test_chi_tiles_circle_when_disk_inside():
    chi = chi_intervals(0.5, offsets(centered_square()))
    assert len(chi) == 8
    assert chi.measure() == pytest.approx(TWO_PI, abs=1e-12)
    for phi in _phi_grid(997):
        assert phi in chi


def test_chi_empty_at_circumradius():
    off = offsets(centered_square())
    r = math.sqrt(2.0)
    chi = chi_intervals(r, off)
    assert chi.measure() == pytest.approx(0.0, abs=1e-7)
    # brute-force scan: no direction has beta >= sqrt(2) except the corners themselves
    hits = sum(beta(float(p), off) >= r for p in _phi_grid(100_000))
    assert hits <= 4
    assert mu_intervals(r, off).measure() == pytest.approx(TWO_PI, abs=1e-7)


def test_chi_measure_matches_beta_scan_scenario_o():
    off = offsets(preset("O"))
    phis = _phi_grid(2_000_000)
    c, s = np.cos(phis), np.sin(phis)
    with np.errstate(divide="ignore"):
        bx = np.where(c > 0, off.hx_plus / c, np.where(c < 0, off.hx_minus / c, np.inf))
        by = np.where(s > 0, off.hy_plus / s, np.where(s < 0, off.hy_minus / s, np.inf))
    scan = TWO_PI * np.mean(np.minimum(bx, by) >= 50.0)
    assert chi_intervals(50.0, off).measure() == pytest.approx(scan, abs=1e-5)


def test_mu_empty_at_zero_radius():
    mu = mu_intervals(0.0, offsets(preset("O")))
    assert all(iv.empty for iv in mu)


def test_complementarity_scenario_b():
    off = offsets(preset("B"))
    total = chi_intervals(2.0, off).measure() + mu_intervals(2.0, off).measure()
    assert total == pytest.approx(TWO_PI, abs=1e-9)


def test_negative_radius_rejected():
    with pytest.raises(ValueError):
        chi_intervals(-1.0, offsets(centered_square()))


def _check_family(family):
    live = [iv for iv in family if not iv.empty]
    for a, b in itertools.combinations(live, 2):
        assert a.hi <= b.lo + 1e-12 or b.hi <= a.lo + 1e-12, (a, b)
    for iv in live:
        q = QUADRANT_OF[iv.index]
        assert (q - 1) * HALF_PI - 1e-12 <= iv.lo and iv.hi <= q * HALF_PI + 1e-12, iv


@settings(max_examples=400)
@given(scenarios(), st.floats(0.0, 1.05))
def test_families_disjoint_and_confined(s, frac):
    off = offsets(s)
    r = frac * s.r_max
    _check_family(chi_intervals(r, off))
    _check_family(mu_intervals(r, off))


@settings(max_examples=400)
@given(scenarios(), st.floats(0.0, 1.05))
def test_complementarity(s, frac):
    off = offsets(s)
    r = frac * s.r_max
    total = chi_intervals(r, off).measure() + mu_intervals(r, off).measure()
    assert total == pytest.approx(TWO_PI, abs=1e-9)


def test_tie_radius_uses_beyond_branch():
    off = offsets(preset("O"))
    chi = chi_intervals(70.0, off)  # r == h_1
    assert chi[0].lo == pytest.approx(0.0, abs=1e-15)
    assert chi[0].hi == pytest.approx(off.corners[0])


def test_pointwise_membership_random_draws():
    rng = np.random.default_rng(20240611)
    checked = 0
    for _ in range(10_000):
        s = random_scenario(rng)
        off = offsets(s)
        r = float(rng.uniform(0.0, 1.05 * s.r_max))
        phi = float(rng.uniform(0.0, TWO_PI))
        b = beta(phi, off)
        if abs(r - b) <= GUARD * max(1.0, s.r_max):
            continue
        if any(abs(phi - c) <= GUARD for c in (*off.corners, 0.0, HALF_PI, math.pi, 1.5 * math.pi)):
            continue
        assert (phi in chi_intervals(r, off)) == (r <= b)
        assert (phi in mu_intervals(r, off)) == (r > b)
        checked += 1
    assert checked > 9_000
