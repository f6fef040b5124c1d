"""Planar distance/azimuth distributions for a uniform node in a rectangle.

``DistributionEval2D`` evaluates the closed forms for one scenario.
``generic_joint_cdf`` is the quadrature route for any convex region given its
boundary function, used to cross-check the closed forms.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy import integrate, optimize

from .geometry import HALF_PI, TWO_PI, OffsetSet, RectScenario, beta, f_op, offsets
from .partition import chi_intervals, mu_intervals

PI = math.pi
CLAMP_SLACK = 1e-9


class QuadratureError(RuntimeError):
    """Adaptive quadrature did not reach the requested tolerance."""

    def __init__(self, message: str, abserr: float):
        super().__init__(f"{message} (error estimate {abserr:.3e})")
        self.abserr = abserr


def _cot(x: float) -> float:
    return math.cos(x) / math.sin(x)


def _clamp_probability(p: float) -> float:
    assert -CLAMP_SLACK <= p <= 1.0 + CLAMP_SLACK, f"probability {p} out of range"
    return min(1.0, max(0.0, p))


def _check_theta(theta: float, name: str = "theta") -> None:
    if not (0.0 <= theta <= TWO_PI):
        raise ValueError(f"{name} must lie in [0, 2*pi], got {theta}")


def _check_radius(r: float) -> None:
    if not r >= 0.0:
        raise ValueError(f"radius must be nonnegative, got {r}")


def _density_angle(theta: float) -> float:
    _check_theta(theta)
    return 0.0 if theta == TWO_PI else theta


@dataclass(frozen=True)
class DistributionEval2D:
    """Closed-form distributions of (R, Theta) about ``scenario.u``."""

    scenario: RectScenario
    off: OffsetSet = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "off", offsets(self.scenario))

    @property
    def area(self) -> float:
        return self.scenario.area

    @property
    def r_max(self) -> float:
        return self.scenario.r_max

    def beta(self, phi: float) -> float:
        return beta(phi, self.off)

    def joint_cdf(self, r: float, theta: float) -> float:
        """P(R <= r, Theta <= theta)."""
        _check_radius(r)
        _check_theta(theta)
        if r == 0.0 or theta == 0.0:
            return 0.0
        r = min(r, self.r_max)
        inner = math.fsum(
            max(0.0, min(theta, iv.hi) - iv.lo) for iv in chi_intervals(r, self.off) if not iv.empty
        )
        total = 0.5 * r * r * inner
        h = self.off.h
        for iv in mu_intervals(r, self.off):
            if iv.empty or h[iv.index - 1] == 0.0:
                continue
            upper = min(theta, iv.hi)
            h2 = h[iv.index - 1] ** 2
            if iv.index <= 4:
                total += 0.5 * h2 * f_op(math.tan, iv.lo, upper)
            else:
                # 1/sin^2 integrates to -cot
                total -= 0.5 * h2 * f_op(_cot, iv.lo, upper)
        return _clamp_probability(total / self.area)

    def joint_pdf(self, r: float, theta: float) -> float:
        """Density of (R, Theta) w.r.t. ``dr dtheta`` (1/(m rad))."""
        _check_radius(r)
        theta = _density_angle(theta)
        if r == 0.0 or r > self.r_max:
            return 0.0
        active = sum(1 for iv in chi_intervals(r, self.off) if theta in iv)
        return r * active / self.area

    def marginal_azimuth_cdf(self, theta: float) -> float:
        _check_theta(theta)
        if theta == 0.0:
            return 0.0
        c1, c2, c3, c4 = self.off.corners
        limits = (
            (0.0, min(theta, c1)),
            (c4, theta),
            (PI, min(theta, c3)),
            (c2, min(theta, PI)),
            (c1, min(theta, HALF_PI)),
            (HALF_PI, min(theta, c2)),
            (c3, min(theta, 1.5 * PI)),
            (1.5 * PI, min(theta, c4)),
        )
        total = 0.0
        for i, (h, (a, b)) in enumerate(zip(self.off.h, limits)):
            if h == 0.0:
                continue
            if i < 4:
                total += h * h * f_op(math.tan, a, b)
            else:
                total -= h * h * f_op(_cot, a, b)
        return _clamp_probability(total / (2.0 * self.area))

    def marginal_azimuth_pdf(self, theta: float) -> float:
        theta = _density_angle(theta)
        c1, c2, c3, c4 = self.off.corners
        spans = (
            (0.0, c1), (c4, TWO_PI), (PI, c3), (c2, PI),
            (c1, HALF_PI), (HALF_PI, c2), (c3, 1.5 * PI), (1.5 * PI, c4),
        )
        total = 0.0
        for i, (h, (a, b)) in enumerate(zip(self.off.h, spans)):
            if h == 0.0 or not (a <= theta < b):
                continue
            trig = math.cos(theta) if i < 4 else math.sin(theta)
            total += h * h / (trig * trig)
        value = total / (2.0 * self.area)
        assert value >= 0.0
        return value

    def marginal_distance_cdf(self, r: float) -> float:
        return self.joint_cdf(r, TWO_PI)

    def azimuth_quantile(self, p: float) -> float:
        """Smallest azimuth whose CDF reaches ``p`` (left edge of any flat span)."""
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"probability must lie in [0, 1], got {p}")
        if p == 0.0:
            return 0.0
        lo, hi = 0.0, TWO_PI
        if self.marginal_azimuth_cdf(hi) < p:
            return TWO_PI
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if mid <= lo or mid >= hi:
                break
            if self.marginal_azimuth_cdf(mid) >= p:
                hi = mid
            else:
                lo = mid
        return hi


def _branch_switches(beta_fn: Callable[[float], float], r: float, a: float, b: float,
                     samples: int = 64) -> list[float]:
    """Angles in (a, b) where ``r - beta_fn`` changes sign."""
    grid = np.linspace(a, b, samples + 1)
    vals = [r - beta_fn(float(x)) for x in grid]
    roots = []
    for x0, x1, v0, v1 in zip(grid[:-1], grid[1:], vals[:-1], vals[1:]):
        if v0 == 0.0:
            roots.append(float(x0))
        elif v0 * v1 < 0.0:
            roots.append(optimize.bisect(lambda x: r - beta_fn(x), x0, x1, xtol=1e-14))
    return [x for x in roots if a < x < b]


def generic_joint_cdf(beta_fn: Callable[[float], float], area: float, r: float, theta: float,
                      epsabs: float = 1e-10, breakpoints: Sequence[float] = ()) -> float:
    """P(R <= r, Theta <= theta) for a convex region by direct quadrature.

    Integrates ``0.5 * min(r, beta(phi))**2 / area`` over ``[0, theta]``. The
    range is split at the quadrant boundaries, at ``breakpoints`` and wherever
    ``min(r, beta)`` switches branch.

    Args:
        breakpoints: azimuths where ``beta_fn`` has a kink (polygon vertices).
            QUADPACK can underestimate its error across an unflagged kink, so
            pass them whenever they are known.

    Raises:
        QuadratureError: if any piece fails to converge to ``epsabs``.
    """
    _check_radius(r)
    _check_theta(theta)
    if theta == 0.0 or r == 0.0:
        return 0.0
    inner = {k * HALF_PI for k in (1, 2, 3)} | {float(p) for p in breakpoints}
    edges = [0.0] + sorted(p for p in inner if 0.0 < p < theta) + [theta]
    cuts = []
    for a, b in zip(edges[:-1], edges[1:]):
        cuts.append(a)
        cuts.extend(_branch_switches(beta_fn, r, a, b))
    cuts.append(theta)

    # scaled to probability density so epsabs is a probability tolerance
    def integrand(phi: float) -> float:
        m = min(r, beta_fn(phi))
        return 0.5 * m * m / area

    total = 0.0
    for a, b in zip(cuts[:-1], cuts[1:]):
        if b <= a:
            continue
        if b - a < 1e-9:
            # slivers left by root bracketing; QUADPACK misreports on these
            total += (b - a) * integrand(0.5 * (a + b))
            continue
        with warnings.catch_warnings():
            warnings.simplefilter("error", integrate.IntegrationWarning)
            try:
                val, err = integrate.quad(integrand, a, b, epsabs=epsabs, epsrel=0.0, limit=400)
            except integrate.IntegrationWarning as exc:
                raise QuadratureError(f"quadrature failed on [{a}, {b}]: {exc}", math.nan) from exc
        if err > epsabs:
            raise QuadratureError(f"quadrature did not converge on [{a}, {b}]", err)
        total += val
    return _clamp_probability(total)
