"""Angular interval families for the disk/rectangle overlap.

For a radius ``r`` the azimuths split into directions where the circle of radius
``r`` is still inside the rectangle (``r <= beta(phi)``, the X family) and
directions where it has crossed a wall (``r > beta(phi)``, the M family). Each
family is a disjoint union of eight half-open intervals, two per quadrant: one
where an x-wall is the binding constraint and one where a y-wall is.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .geometry import HALF_PI, TWO_PI, OffsetSet

PI = math.pi
EMPTY_WIDTH = 1e-15
CLAMP_TOL = 1e-12

# quadrant (1..4) that holds interval i of either family, i = 1..8
QUADRANT_OF = {1: 1, 2: 4, 3: 3, 4: 2, 5: 1, 6: 2, 7: 3, 8: 4}


@dataclass(frozen=True)
class AngularInterval:
    """Half-open ``[lo, hi)``; ``family`` is ``"X"`` or ``"M"``, ``index`` 1..8."""

    lo: float
    hi: float
    family: str = "X"
    index: int = 0

    @classmethod
    def make(cls, lo: float, hi: float, family: str, index: int) -> "AngularInterval":
        if hi - lo <= EMPTY_WIDTH:
            hi = lo
        return cls(lo, hi, family, index)

    @property
    def empty(self) -> bool:
        return self.hi <= self.lo

    @property
    def width(self) -> float:
        return 0.0 if self.empty else self.hi - self.lo

    def __contains__(self, phi: float) -> bool:
        return self.lo <= phi < self.hi


@dataclass(frozen=True)
class IntervalSet:
    intervals: tuple[AngularInterval, ...]

    def __iter__(self):
        return iter(self.intervals)

    def __len__(self):
        return len(self.intervals)

    def __getitem__(self, i: int) -> AngularInterval:
        return self.intervals[i]

    def __contains__(self, phi: float) -> bool:
        return any(phi in iv for iv in self.intervals)

    def measure(self) -> float:
        return measure(self)


def measure(intervals) -> float:
    """Total width of the non-empty intervals."""
    return math.fsum(iv.width for iv in intervals)


def _clamp_unit(x: float) -> float:
    if x > 1.0:
        if x > 1.0 + CLAMP_TOL:
            raise ValueError(f"trigonometric argument {x} outside [-1, 1]")
        return 1.0
    if x < -1.0:
        if x < -1.0 - CLAMP_TOL:
            raise ValueError(f"trigonometric argument {x} outside [-1, 1]")
        return -1.0
    return x


def _acos(x: float) -> float:
    return math.acos(_clamp_unit(x))


def _asin(x: float) -> float:
    return math.asin(_clamp_unit(x))


def _wall_angles(r: float, off: OffsetSet) -> tuple[float, float, float, float]:
    """acos(hx+/r), acos(hx-/r), asin(hy+/r), asin(hy-/r); only read when r >= h_i."""
    if r <= 0.0:
        return (0.0, PI, HALF_PI, -HALF_PI)
    ax_p = _acos(off.hx_plus / r) if r >= off.hx_plus else 0.0
    ax_m = _acos(off.hx_minus / r) if r >= -off.hx_minus else PI
    as_p = _asin(off.hy_plus / r) if r >= off.hy_plus else HALF_PI
    as_m = _asin(off.hy_minus / r) if r >= -off.hy_minus else -HALF_PI
    return ax_p, ax_m, as_p, as_m


def _inside(r: float, off: OffsetSet) -> list[tuple[float, float]]:
    """Endpoints of X_1..X_8, switching on r < h_i versus r >= h_i."""
    c1, c2, c3, c4 = off.corners
    h = off.h
    ax_p, ax_m, as_p, as_m = _wall_angles(r, off)
    below = (
        (0.0, c1),
        (c4, TWO_PI),
        (PI, c3),
        (c2, PI),
        (c1, HALF_PI),
        (HALF_PI, c2),
        (c3, 1.5 * PI),
        (1.5 * PI, c4),
    )
    beyond = (
        (ax_p, c1),
        (c4, TWO_PI - ax_p),
        (TWO_PI - ax_m, c3),
        (c2, ax_m),
        (c1, as_p),
        (PI - as_p, c2),
        (c3, PI - as_m),
        (TWO_PI + as_m, c4),
    )
    # r = 0 takes the r < h_i rows everywhere: the ratios h_i / r are undefined
    # there, and the zero-radius disk is inside the closed rectangle
    return [beyond[i] if (r > 0.0 and r >= h[i]) else below[i] for i in range(8)]


def _outside(r: float, off: OffsetSet) -> list[tuple[float, float] | None]:
    """Endpoints of M_1..M_8; None where r < h_i (empty set)."""
    c1, c2, c3, c4 = off.corners
    h = off.h
    ax_p, ax_m, as_p, as_m = _wall_angles(r, off)
    rows = (
        (0.0, min(ax_p, c1)),
        (max(TWO_PI - ax_p, c4), TWO_PI),
        (PI, min(TWO_PI - ax_m, c3)),
        (max(c2, ax_m), PI),
        (max(c1, as_p), HALF_PI),
        (HALF_PI, min(PI - as_p, c2)),
        (max(c3, PI - as_m), 1.5 * PI),
        (1.5 * PI, min(TWO_PI + as_m, c4)),
    )
    return [rows[i] if (r > 0.0 and r >= h[i]) else None for i in range(8)]


def chi_intervals(r: float, off: OffsetSet) -> IntervalSet:
    """Azimuths where the radius-``r`` circle is inside the rectangle."""
    if r < 0.0:
        raise ValueError(f"radius must be nonnegative, got {r}")
    return IntervalSet(tuple(
        AngularInterval.make(lo, hi, "X", i + 1) for i, (lo, hi) in enumerate(_inside(r, off))
    ))


def mu_intervals(r: float, off: OffsetSet) -> IntervalSet:
    """Azimuths where the radius-``r`` circle has crossed a wall."""
    if r < 0.0:
        raise ValueError(f"radius must be nonnegative, got {r}")
    out = []
    for i, row in enumerate(_outside(r, off)):
        if row is None:
            out.append(AngularInterval(0.0, 0.0, "M", i + 1))
        else:
            out.append(AngularInterval.make(row[0], row[1], "M", i + 1))
    return IntervalSet(tuple(out))
