"""Uses of the distributions: SNR draws, equal-mass codebooks, routing direction."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .dist2d import DistributionEval2D
from .dist3d import DistributionEval3D
from .geometry import TWO_PI
from .montecarlo import sample_points

PI = math.pi

# (azimuth array, zenith array) -> nonnegative gain array
GainFn = Callable[[np.ndarray, np.ndarray], np.ndarray]


@dataclass(frozen=True)
class LinkBudget:
    """Path loss ``(tau * D) ** (exponent_sign * alpha)`` and PSD ratio ``rho_t / n0``.

    ``exponent_sign`` defaults to -1 (loss grows with distance); +1 reproduces
    a literal ``(tau D)^alpha`` factor.
    """

    tau: float
    alpha: float
    rho_t: float
    n0: float
    exponent_sign: int = -1

    def __post_init__(self):
        for name in ("tau", "alpha", "rho_t", "n0"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0.0):
                raise ValueError(f"{name} must be positive and finite, got {value!r}")
        if self.exponent_sign not in (1, -1):
            raise ValueError("exponent_sign must be +1 or -1")


class FadingSampler:
    """Seeded source of power gains ``|beta|^2``; the default is the constant 1."""

    def __init__(self, draw: Optional[Callable[[np.random.Generator, int], np.ndarray]] = None):
        self._draw = draw

    @classmethod
    def rayleigh(cls) -> "FadingSampler":
        """Unit-mean exponential power gain."""
        return cls(lambda rng, n: rng.exponential(1.0, n))

    def __call__(self, rng: np.random.Generator, n: int) -> np.ndarray:
        if self._draw is None:
            return np.ones(n)
        out = np.asarray(self._draw(rng, n), dtype=float)
        if out.shape != (n,) or np.any(out < 0.0):
            raise ValueError("fading draws must be n nonnegative values")
        return out


def isotropic(theta, psi):
    return np.ones(np.shape(theta))


def sector_gain(center: float, width: float, main: float, side: float) -> GainFn:
    """Azimuth-only sector pattern: ``main`` within ``width`` around ``center``."""

    def gain(theta, psi):
        offset = np.abs(np.mod(np.asarray(theta) - center + PI, TWO_PI) - PI)
        return np.where(offset <= 0.5 * width, main, side)

    return gain


def _gain(fn: GainFn, theta: np.ndarray, psi: np.ndarray) -> np.ndarray:
    g = np.broadcast_to(np.asarray(fn(theta, psi), dtype=float), theta.shape)
    if np.any(g < 0.0) or not np.all(np.isfinite(g)):
        raise ValueError("gain functions must be nonnegative and finite")
    return g


def snr_samples(ev: DistributionEval3D, budget: LinkBudget, gt: GainFn = isotropic,
                gr: GainFn = isotropic, fading: Optional[FadingSampler] = None,
                n: int = 1, seed: int = 0) -> np.ndarray:
    """Draw ``n`` SNR values for links from the reference node to random nodes.

    Link geometry comes from the same seeded stream as ``sample_points``;
    fading uses an independent stream (Philox jumped once) so changing the
    fading model never moves the node positions. Receive angles are the
    reciprocal bearing: ``theta + pi`` and ``pi - psi``.
    """
    samples = sample_points(ev.scenario, n, seed)
    d, theta_t, psi_t = samples.spherical(ev.uz, ev.vz)
    theta_r = np.mod(theta_t + PI, TWO_PI)
    psi_r = PI - psi_t
    fade_rng = np.random.Generator(np.random.Philox(seed).jumped())
    power = (fading or FadingSampler())(fade_rng, n)
    loss = (budget.tau * d) ** (budget.exponent_sign * budget.alpha)
    return _gain(gt, theta_t, psi_t) * _gain(gr, theta_r, psi_r) * loss * power * (budget.rho_t / budget.n0)


@dataclass(frozen=True)
class Codebook:
    """Beam ``k`` covers azimuths ``[boundaries[k], boundaries[k+1])``."""

    boundaries: tuple[float, ...]

    def __post_init__(self):
        b = self.boundaries
        if len(b) < 2 or b[0] != 0.0 or b[-1] != TWO_PI:
            raise ValueError("codebook boundaries must run from 0 to 2*pi")
        if any(y <= x for x, y in zip(b[:-1], b[1:])):
            raise ValueError("codebook boundaries must be strictly ascending")

    @property
    def m(self) -> int:
        return len(self.boundaries) - 1

    def masses(self, ev: DistributionEval2D) -> list[float]:
        cdf = [ev.marginal_azimuth_cdf(b) for b in self.boundaries]
        return [b - a for a, b in zip(cdf[:-1], cdf[1:])]

    def beam_of(self, theta) -> np.ndarray:
        """Beam index for each azimuth in ``[0, 2*pi)``."""
        return np.searchsorted(np.asarray(self.boundaries[1:-1]), theta, side="right")


def design_codebook(ev: DistributionEval2D, m: int) -> Codebook:
    """Split the azimuth into ``m`` beams of equal node probability."""
    if m < 1:
        raise ValueError(f"beam count must be at least 1, got {m}")
    inner = [ev.azimuth_quantile(k / m) for k in range(1, m)]
    return Codebook((0.0, *inner, TWO_PI))


@dataclass(frozen=True)
class RouteChoice:
    theta: float
    mass: float
    reachable: bool


def window_mass(ev: DistributionEval2D, r_max: float, start: float, width: float) -> float:
    """P(R <= r_max, Theta in [start, start + width)) with wrap-around past 2*pi."""
    f = ev.joint_cdf
    end = start + width
    if end <= TWO_PI:
        return f(r_max, end) - f(r_max, start)
    return f(r_max, TWO_PI) - f(r_max, start) + f(r_max, end - TWO_PI)


def routing_direction(ev: DistributionEval2D, r_max: float, beamwidth: float) -> RouteChoice:
    """Beam start angle capturing the most nodes within range ``r_max``.

    Searches start angles on a grid of step ``beamwidth / 100``; the smallest
    angle wins ties (masses within 1e-12 count as tied).
    """
    if not r_max > 0.0:
        raise ValueError(f"r_max must be positive, got {r_max}")
    if not 0.0 < beamwidth <= TWO_PI:
        raise ValueError(f"beamwidth must lie in (0, 2*pi], got {beamwidth}")
    step = beamwidth / 100.0
    count = max(1, math.ceil(TWO_PI / step - 1e-9))
    starts = [k * step for k in range(count)]
    masses = [window_mass(ev, r_max, s, beamwidth) for s in starts]
    best = max(masses)
    k = next(i for i, mass in enumerate(masses) if mass >= best - 1e-12)
    reachable = best > 0.0
    if not reachable:
        warnings.warn(f"no nodes within r_max={r_max}; direction is arbitrary", RuntimeWarning)
    return RouteChoice(starts[k], max(0.0, masses[k]), reachable)
