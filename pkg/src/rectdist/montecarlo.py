"""Seeded uniform sampling in the rectangle and empirical CDFs.

Draws come from numpy's Philox4x64 counter-based generator; each coordinate is
``k / 2**53`` for a 53-bit integer ``k``, mapped affinely onto the side.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, TextIO

import numpy as np

from .dist3d import DistributionEval3D, spherical_from_planar_array
from .dist2d import DistributionEval2D
from .geometry import TWO_PI, RectScenario

CSV_COLUMNS = ("kind", "r", "theta", "psi", "analytic", "empirical", "abs_dev")


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed))


@dataclass(eq=False)
class SampleSet:
    """``n`` uniform points in the rectangle, stored as an ``(n, 2)`` array."""

    points: np.ndarray
    seed: int
    scenario: RectScenario

    def __len__(self) -> int:
        return len(self.points)

    @cached_property
    def polar(self) -> tuple[np.ndarray, np.ndarray]:
        """Planar distance and azimuth in ``[0, 2*pi)`` about the reference node."""
        dx = self.points[:, 0] - self.scenario.u.x
        dy = self.points[:, 1] - self.scenario.u.y
        theta = np.mod(np.arctan2(dy, dx), TWO_PI)
        # mod can round -tiny up to exactly 2*pi
        theta[theta >= TWO_PI] = 0.0
        return np.hypot(dx, dy), theta

    def spherical(self, uz: float, vz: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        r, theta = self.polar
        return spherical_from_planar_array(r, theta, uz, vz)


def sample_points(s: RectScenario, n: int, seed: int) -> SampleSet:
    if n < 1:
        raise ValueError(f"sample count must be at least 1, got {n}")
    rng = make_rng(seed)
    unit = rng.random((n, 2))
    pts = (unit - 0.5) * np.array([s.lx, s.ly])
    return SampleSet(points=pts, seed=seed, scenario=s)


def empirical_joint_cdf(samples: SampleSet, r: float, theta: float) -> float:
    """Fraction of samples with R <= r and Theta <= theta."""
    rs, ths = samples.polar
    return float(np.count_nonzero((rs <= r) & (ths <= theta))) / len(samples)


def empirical_joint_cdf_3d(samples: SampleSet, uz: float, vz: float,
                           d: float, theta: float, psi: float) -> float:
    ds, ths, psis = samples.spherical(uz, vz)
    hit = (ds <= d) & (ths <= theta) & (psis <= psi)
    return float(np.count_nonzero(hit)) / len(samples)


@dataclass(frozen=True)
class OracleGrid:
    """Query points: planar ``radii x thetas`` and 3D ``distances x thetas x psis``."""

    radii: tuple[float, ...]
    thetas: tuple[float, ...]
    distances: tuple[float, ...] = ()
    psis: tuple[float, ...] = ()

    def __post_init__(self):
        if not self.radii and not self.distances:
            raise ValueError("oracle grid has no query points")
        if not self.thetas:
            raise ValueError("oracle grid needs at least one azimuth")

    @classmethod
    def default(cls, s: RectScenario, size: int = 20, highlighted: bool = True) -> "OracleGrid":
        """``size`` radii in (0, R_max] by ``size`` azimuths in (0, 2pi].

        With ``highlighted`` three extra azimuths per quadrant are added
        (pi/8, pi/4 and 3pi/8 into each). When ``s.vz`` is set, 3D queries use
        ``size`` distances in (|dz|, D_max] and three zenith values: two
        equally spaced inside the support and its far end.
        """
        r_max = s.r_max
        radii = tuple(r_max * k / size for k in range(1, size + 1))
        thetas = [TWO_PI * k / size for k in range(1, size + 1)]
        if highlighted:
            thetas += [q * 0.5 * math.pi + k * math.pi / 8 for q in range(4) for k in (1, 2, 3)]
        thetas = tuple(sorted(set(thetas)))
        distances: tuple[float, ...] = ()
        psis: tuple[float, ...] = ()
        if s.vz is not None and s.u.z != s.vz:
            ev3 = DistributionEval3D(s)
            lo, hi = abs(ev3.dz), ev3.d_max
            distances = tuple(lo + (hi - lo) * k / size for k in range(1, size + 1))
            z = ev3.zenith_range()
            if ev3.dz > 0:
                psis = tuple(z.psi_min + (math.pi - z.psi_min) * k / 3 for k in (1, 2, 3))
            else:
                psis = tuple(z.psi_max * k / 3 for k in (1, 2, 3))
        return cls(radii, thetas, distances, psis)


@dataclass(frozen=True)
class ValidationRow:
    kind: str
    r: float
    theta: float
    psi: Optional[float]
    analytic: float
    empirical: float

    @property
    def abs_dev(self) -> float:
        return abs(self.analytic - self.empirical)


@dataclass(frozen=True)
class ValidationReport:
    rows: tuple[ValidationRow, ...]
    n_samples: int
    seed: int
    scenario: RectScenario

    @property
    def sup_deviation(self) -> float:
        return max((row.abs_dev for row in self.rows), default=0.0)

    def sup_by_kind(self) -> dict[str, float]:
        out: dict[str, float] = {}
        for row in self.rows:
            out[row.kind] = max(out.get(row.kind, 0.0), row.abs_dev)
        return out

    def write_csv(self, fh: TextIO) -> None:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for row in self.rows:
            writer.writerow([
                row.kind,
                fmt(row.r),
                fmt(row.theta),
                "" if row.psi is None else fmt(row.psi),
                fmt(row.analytic),
                fmt(row.empirical),
                fmt(row.abs_dev),
            ])

    def to_csv(self) -> str:
        buf = io.StringIO()
        self.write_csv(buf)
        return buf.getvalue()


def fmt(x: float) -> str:
    """Fixed 12-significant-digit formatting used for all CSV output."""
    return f"{x:.12g}"


def validate(s: RectScenario, n: int, seed: int, grid: Optional[OracleGrid] = None,
             samples: Optional[SampleSet] = None) -> ValidationReport:
    """Compare closed forms with empirical CDFs on every grid point.

    Planar rows have kind ``joint-cdf-2d``; 3D rows have kind ``joint-cdf-3d``
    and carry the 3D distance in the ``r`` column.
    """
    grid = grid or OracleGrid.default(s)
    samples = samples or sample_points(s, n, seed)
    ev = DistributionEval2D(s)
    rows: list[ValidationRow] = []
    rs, ths = samples.polar
    for r in grid.radii:
        near = ths[rs <= r]
        for theta in grid.thetas:
            emp = float(np.count_nonzero(near <= theta)) / len(samples)
            rows.append(ValidationRow("joint-cdf-2d", r, theta, None, ev.joint_cdf(r, theta), emp))
    if grid.distances and grid.psis:
        ev3 = DistributionEval3D(s)
        ds, ths3, ps = samples.spherical(ev3.uz, ev3.vz)
        for d in grid.distances:
            in_d = ds <= d
            for psi in grid.psis:
                sel = ths3[in_d & (ps <= psi)]
                for theta in grid.thetas:
                    emp = float(np.count_nonzero(sel <= theta)) / len(samples)
                    rows.append(ValidationRow(
                        "joint-cdf-3d", d, theta, psi, ev3.joint_cdf_3d(d, theta, psi), emp
                    ))
    return ValidationReport(tuple(rows), len(samples), samples.seed, s)
