"""Distance, azimuth and zenith distributions with antenna heights.

The random nodes sit at a fixed height ``vz`` above a uniform planar position;
the reference node is at height ``u.z``. Everything follows from the planar
(R, Theta) law through D = sqrt(R^2 + dz^2) and a monotone map R -> Psi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .dist2d import DistributionEval2D, _check_theta, _clamp_probability, _density_angle
from .geometry import HALF_PI, RectScenario, SphericalCoord

PI = math.pi


def _planar_to_zenith(r, uz: float, vz: float):
    dz = uz - vz
    if dz >= 0.0:
        if dz == 0.0:
            # coincident points (d = 0) follow the all-zero convention
            return np.where(np.asarray(r) > 0.0, HALF_PI, 0.0)
        with np.errstate(over="ignore"):
            return PI - np.arctan(np.asarray(r, dtype=float) / dz)
    with np.errstate(over="ignore"):
        return np.arctan(np.asarray(r, dtype=float) / -dz)


def spherical_from_planar(r: float, theta: float, uz: float, vz: float) -> SphericalCoord:
    """Map a planar offset (r, theta) to (d, theta, psi) given both heights."""
    if r < 0.0:
        raise ValueError(f"radius must be nonnegative, got {r}")
    d = math.hypot(r, uz - vz)
    return SphericalCoord(d, theta, float(_planar_to_zenith(r, uz, vz)))


def spherical_from_planar_array(r: np.ndarray, theta: np.ndarray, uz: float, vz: float):
    """Vectorized ``spherical_from_planar``; returns ``(d, theta, psi)`` arrays."""
    r = np.asarray(r, dtype=float)
    return np.hypot(r, uz - vz), np.asarray(theta, dtype=float), _planar_to_zenith(r, uz, vz)


@dataclass(frozen=True)
class ZenithRange:
    psi_min: float
    psi_max: float


@dataclass(frozen=True)
class DistributionEval3D:
    """Closed-form distributions of (D, Theta, Psi) for one scenario.

    ``uz`` and ``vz`` default to the scenario's reference height and node height.
    """

    scenario: RectScenario
    uz: Optional[float] = None
    vz: Optional[float] = None
    eval2d: DistributionEval2D = field(init=False)

    def __post_init__(self):
        uz = self.scenario.u.z if self.uz is None else self.uz
        vz = self.scenario.vz if self.vz is None else self.vz
        if vz is None:
            raise ValueError("vz (node antenna height) is required for 3D queries")
        if uz < 0.0 or vz < 0.0:
            raise ValueError("antenna heights must be nonnegative")
        object.__setattr__(self, "uz", float(uz))
        object.__setattr__(self, "vz", float(vz))
        object.__setattr__(self, "eval2d", DistributionEval2D(self.scenario))

    @property
    def dz(self) -> float:
        return self.uz - self.vz

    @property
    def d_max(self) -> float:
        return math.hypot(self.eval2d.r_max, self.dz)

    def zenith_range(self) -> ZenithRange:
        """Support of Psi: ``[psi_min, pi]`` from above, ``[0, psi_max]`` from below."""
        dz = self.dz
        if dz == 0.0:
            return ZenithRange(HALF_PI, HALF_PI)
        r_max = self.eval2d.r_max
        if dz > 0.0:
            return ZenithRange(PI - math.atan(r_max / dz), PI)
        return ZenithRange(0.0, math.atan(r_max / -dz))

    def _radius_for_zenith(self, psi: float) -> float:
        """Planar radius at which Psi equals ``psi`` (capped at r_max)."""
        dz = self.dz
        r_max = self.eval2d.r_max
        if dz > 0.0:
            if psi <= HALF_PI:
                return r_max
            return min(dz * math.tan(PI - psi), r_max)
        if psi >= HALF_PI:
            return r_max
        return min(-dz * math.tan(psi), r_max)

    def joint_cdf_3d(self, d: float, theta: float, psi: float) -> float:
        """P(D <= d, Theta <= theta, Psi <= psi)."""
        if not d >= 0.0:
            raise ValueError(f"distance must be nonnegative, got {d}")
        _check_theta(theta)
        if not 0.0 <= psi <= PI:
            raise ValueError(f"psi must lie in [0, pi], got {psi}")
        dz = self.dz
        if d <= abs(dz):
            return 0.0
        f = self.eval2d.joint_cdf
        r_d = min(math.sqrt(d * d - dz * dz), self.eval2d.r_max)
        if dz > 0.0:
            # Psi = pi - atan(R / dz) decreases in R: Psi <= psi iff R >= dz tan(pi - psi)
            if psi <= HALF_PI:
                return 0.0
            r_lo = self._radius_for_zenith(psi)
            return _clamp_probability(max(0.0, f(r_d, theta) - f(r_lo, theta)))
        if dz == 0.0:
            return f(r_d, theta) if psi >= HALF_PI else 0.0
        return f(min(r_d, self._radius_for_zenith(psi)), theta)

    def angular_cdf(self, theta: float, psi: float) -> float:
        """P(Theta <= theta, Psi <= psi)."""
        _check_theta(theta)
        if not 0.0 <= psi <= PI:
            raise ValueError(f"psi must lie in [0, pi], got {psi}")
        dz = self.dz
        marginal = self.eval2d.marginal_azimuth_cdf(theta)
        if dz > 0.0:
            if psi <= HALF_PI:
                return 0.0
            r_lo = self._radius_for_zenith(psi)
            return _clamp_probability(max(0.0, marginal - self.eval2d.joint_cdf(r_lo, theta)))
        if dz == 0.0:
            return marginal if psi >= HALF_PI else 0.0
        if psi >= HALF_PI:
            return marginal
        return self.eval2d.joint_cdf(self._radius_for_zenith(psi), theta)

    def angular_pdf(self, theta: float, psi: float) -> float:
        """Density of (Theta, Psi) w.r.t. ``dtheta dpsi`` (1/rad^2)."""
        dz = self.dz
        if dz == 0.0:
            raise ValueError("angular density is undefined when uz == vz (zenith is deterministic)")
        theta = _density_angle(theta)
        if not 0.0 <= psi <= PI:
            raise ValueError(f"psi must lie in [0, pi], got {psi}")
        if dz > 0.0:
            if psi <= HALF_PI:
                return 0.0
            r = dz * math.tan(PI - psi)
        else:
            if psi >= HALF_PI:
                return 0.0
            r = -dz * math.tan(psi)
        if r > self.eval2d.r_max:
            return 0.0
        c = math.cos(psi)
        return abs(dz) / (c * c) * self.eval2d.joint_pdf(r, theta)
