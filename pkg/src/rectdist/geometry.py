"""Coordinates, rectangle scenarios and the polar description of a rectangle.

All angles are radians. Azimuths live in ``[0, 2*pi)`` and zenith angles in
``[0, pi]`` (``pi/2`` is horizontal).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

TWO_PI = 2.0 * math.pi
HALF_PI = 0.5 * math.pi


def normalize_angle(phi: float) -> float:
    """Reduce an angle into ``[0, 2*pi)``."""
    out = math.fmod(phi, TWO_PI)
    if out < 0.0:
        out += TWO_PI
    # fmod of a tiny negative number can round up to exactly 2*pi
    if out >= TWO_PI:
        out = 0.0
    return out


@dataclass(frozen=True)
class Point2:
    x: float
    y: float


@dataclass(frozen=True)
class Point3:
    x: float
    y: float
    z: float = 0.0

    @property
    def xy(self) -> Point2:
        return Point2(self.x, self.y)


@dataclass(frozen=True)
class PolarCoord:
    r: float
    theta: float


@dataclass(frozen=True)
class SphericalCoord:
    d: float
    theta: float
    psi: float


def cart_to_polar(p: Point2, origin: Point2 = Point2(0.0, 0.0)) -> PolarCoord:
    """Polar coordinates of ``p`` about ``origin``; ``theta = 0`` when ``r = 0``."""
    dx = p.x - origin.x
    dy = p.y - origin.y
    r = math.hypot(dx, dy)
    if r == 0.0:
        return PolarCoord(0.0, 0.0)
    return PolarCoord(r, normalize_angle(math.atan2(dy, dx)))


def polar_to_cart(c: PolarCoord, origin: Point2 = Point2(0.0, 0.0)) -> Point2:
    return Point2(origin.x + c.r * math.cos(c.theta), origin.y + c.r * math.sin(c.theta))


def cart_to_spherical(p: Point3, origin: Point3 = Point3(0.0, 0.0, 0.0)) -> SphericalCoord:
    """Spherical coordinates of ``p`` about ``origin``; all zeros when ``d = 0``."""
    dz = p.z - origin.z
    planar = cart_to_polar(p.xy, origin.xy)
    d = math.hypot(planar.r, dz)
    if d == 0.0:
        return SphericalCoord(0.0, 0.0, 0.0)
    # atan2 keeps full precision near the poles, where acos(dz / d) does not
    return SphericalCoord(d, planar.theta, math.atan2(planar.r, dz))


def spherical_to_cart(c: SphericalCoord, origin: Point3 = Point3(0.0, 0.0, 0.0)) -> Point3:
    s = math.sin(c.psi)
    return Point3(
        origin.x + c.d * math.cos(c.theta) * s,
        origin.y + c.d * math.sin(c.theta) * s,
        origin.z + c.d * math.cos(c.psi),
    )


@dataclass(frozen=True)
class RectScenario:
    """Rectangle ``[-lx/2, lx/2] x [-ly/2, ly/2]`` seen from a reference node.

    Attributes:
        lx, ly: side lengths (m).
        u: reference node; ``u.z`` is its antenna height.
        vz: antenna height of the random nodes, or None for planar-only use.
        name: optional label (presets use the scenario letter).
    """

    lx: float
    ly: float
    u: Point3
    vz: Optional[float] = None
    name: str = ""

    def __post_init__(self):
        for field_name in ("lx", "ly"):
            value = getattr(self, field_name)
            if not (math.isfinite(value) and value > 0.0):
                raise ValueError(f"{field_name} must be a positive finite length, got {value!r}")
        if not all(math.isfinite(c) for c in (self.u.x, self.u.y, self.u.z)):
            raise ValueError("reference point coordinates must be finite")
        if abs(self.u.x) > 0.5 * self.lx or abs(self.u.y) > 0.5 * self.ly:
            raise ValueError(
                f"reference point ({self.u.x}, {self.u.y}) lies outside the "
                f"{self.lx} x {self.ly} rectangle"
            )
        if self.vz is not None and not (math.isfinite(self.vz) and self.vz >= 0.0):
            raise ValueError(f"vz must be a nonnegative finite height, got {self.vz!r}")

    @property
    def area(self) -> float:
        return self.lx * self.ly

    @property
    def r_max(self) -> float:
        """Distance from the reference node to the farthest vertex."""
        return math.hypot(0.5 * self.lx + abs(self.u.x), 0.5 * self.ly + abs(self.u.y))

    def contains(self, x: float, y: float) -> bool:
        return abs(x) <= 0.5 * self.lx and abs(y) <= 0.5 * self.ly


@dataclass(frozen=True)
class OffsetSet:
    """Signed wall offsets after translating the rectangle by ``-u``.

    ``h`` is the 8-vector of nonnegative offsets indexed 1..8 in the closed-form
    tables (stored 0-based). ``corners`` are the azimuths of the four translated
    vertices, one per quadrant, in the unreduced ranges ``[0, pi/2]``,
    ``[pi/2, pi]``, ``[pi, 3pi/2]`` and ``[3pi/2, 2pi]``.
    """

    hx_plus: float
    hx_minus: float
    hy_plus: float
    hy_minus: float

    @property
    def h(self) -> tuple[float, ...]:
        a, b = self.hx_plus, -self.hx_minus
        c, d = self.hy_plus, -self.hy_minus
        return (a, a, b, b, c, c, d, d)

    @property
    def corners(self) -> tuple[float, float, float, float]:
        # A zero offset is read as the one-sided limit from the wall's own side
        # (0+ for the plus walls, 0- for the minus walls), so every angle is finite
        # and lands in its own quadrant even when u sits on a wall or a vertex.
        xp, xm = abs(self.hx_plus), -abs(self.hx_minus)
        yp, ym = abs(self.hy_plus), -abs(self.hy_minus)
        return (
            math.atan2(yp, xp),
            math.atan2(yp, xm),
            math.atan2(ym, xm) + TWO_PI,
            math.atan2(ym, xp) + TWO_PI,
        )


def offsets(s: RectScenario) -> OffsetSet:
    """Wall offsets of ``s`` relative to its reference node."""
    if not s.contains(s.u.x, s.u.y):
        raise ValueError("reference point lies outside the rectangle")
    return OffsetSet(
        hx_plus=0.5 * s.lx - s.u.x,
        hx_minus=-0.5 * s.lx - s.u.x,
        hy_plus=0.5 * s.ly - s.u.y,
        hy_minus=-0.5 * s.ly - s.u.y,
    )


def quadrant(phi: float) -> int:
    """Half-open quadrant index: ``[0, pi/2) -> 1``, ..., ``[3pi/2, 2pi) -> 4``."""
    return min(int(normalize_angle(phi) // HALF_PI), 3) + 1


def beta(phi: float, off: OffsetSet) -> float:
    """Distance from the reference node to the rectangle boundary along ``phi``.

    A point at distance ``rho`` along ``phi`` is in the rectangle iff
    ``rho <= beta(phi)``.
    """
    c = math.cos(phi)
    s = math.sin(phi)
    # the wall is picked by the sign of the direction cosine, which keeps the
    # ratio nonnegative even where cos/sin round to +-1e-17 on the axes
    if c > 0.0:
        bx = off.hx_plus / c
    elif c < 0.0:
        bx = off.hx_minus / c
    else:
        bx = math.inf
    if s > 0.0:
        by = off.hy_plus / s
    elif s < 0.0:
        by = off.hy_minus / s
    else:
        by = math.inf
    return max(0.0, min(bx, by))


def positive_part(x: float) -> float:
    return x if x > 0.0 else 0.0


def f_op(f: Callable[[float], float], a: float, b: float) -> float:
    """``f(b) - f(a)`` if ``b >= a`` else 0: a definite integral with antiderivative ``f``."""
    if b >= a:
        return f(b) - f(a)
    return 0.0
