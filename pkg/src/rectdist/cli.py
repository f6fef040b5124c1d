"""Command-line front end.

Every command prints CSV (comma separated, LF line endings, header row, floats
with 12 significant digits) to stdout or ``--out``. Exit codes: 0 success,
1 usage or configuration error, 2 validation threshold breached.
"""

from __future__ import annotations

import argparse
import contextlib
import itertools
import math
import re
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import applications as app
from .dist2d import DistributionEval2D
from .dist3d import DistributionEval3D
from .geometry import TWO_PI
from .montecarlo import OracleGrid, fmt, sample_points, validate
from .scenarios import ConfigError, load_scenario, scenario_hash

EXIT_OK, EXIT_USAGE, EXIT_BREACH = 0, 1, 2

QUANTITIES = {
    # name: (grid variables in loop order, value column)
    "joint-cdf-2d": (("r", "theta"), "joint_cdf"),
    "joint-pdf-2d": (("r", "theta"), "joint_pdf"),
    "marg-az-cdf": (("theta",), "azimuth_cdf"),
    "marg-az-pdf": (("theta",), "azimuth_pdf"),
    "joint-cdf-3d": (("d", "theta", "psi"), "joint_cdf_3d"),
    "ang-cdf": (("theta", "psi"), "angular_cdf"),
    "ang-pdf": (("theta", "psi"), "angular_pdf"),
}
ANGLE_VARS = {"theta", "psi"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class GridAxis:
    lo: float
    hi: float
    steps: int

    def values(self) -> list[float]:
        if self.steps == 1:
            return [self.lo]
        return [float(v) for v in np.linspace(self.lo, self.hi, self.steps)]


@dataclass(frozen=True)
class GridSpec:
    """Per-variable ``lo:hi:steps`` ranges, endpoints inclusive."""

    axes: dict

    def get(self, var: str) -> Optional[GridAxis]:
        return self.axes.get(var)


_NUMBER = re.compile(r"^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)?\s*(pi)?\s*$")


def _number(token: str) -> float:
    """Parse ``1.5``, ``2pi``, ``0.5pi`` or ``pi``."""
    m = _NUMBER.match(token)
    if not m or (m.group(1) is None and m.group(2) is None):
        raise UsageError(f"bad number {token!r}")
    value = float(m.group(1)) if m.group(1) is not None else 1.0
    return value * math.pi if m.group(2) else value


def parse_grid(text: Optional[str], degrees: bool = False) -> GridSpec:
    """Parse ``var=lo:hi:steps[,var=...]`` with var in r, theta, psi, d."""
    axes = {}
    if not text:
        return GridSpec(axes)
    for part in text.split(","):
        if not part.strip():
            continue
        try:
            var, rng = part.split("=", 1)
            lo_s, hi_s, n_s = rng.split(":")
        except ValueError:
            raise UsageError(f"grid entry {part!r} is not var=lo:hi:steps") from None
        var = var.strip().lower()
        if var not in ("r", "theta", "psi", "d"):
            raise UsageError(f"unknown grid variable {var!r}")
        lo, hi = _number(lo_s), _number(hi_s)
        try:
            steps = int(n_s)
        except ValueError:
            raise UsageError(f"grid {var}: step count {n_s!r} is not an integer") from None
        if steps < 1:
            raise UsageError(f"grid {var}: step count must be positive")
        if degrees and var in ANGLE_VARS:
            lo, hi = math.radians(lo), math.radians(hi)
        if hi < lo:
            raise UsageError(f"grid {var}: upper bound below lower bound")
        axes[var] = GridAxis(lo, hi, steps)
    return GridSpec(axes)


def _default_axis(var: str, ev3: Optional[DistributionEval3D], r_max: float) -> GridAxis:
    if var == "r":
        return GridAxis(0.0, r_max, 21)
    if var == "theta":
        return GridAxis(0.0, TWO_PI, 37)
    if ev3 is None:
        raise UsageError(f"grid variable {var!r} needs vz")
    if var == "d":
        return GridAxis(abs(ev3.dz), ev3.d_max, 21)
    z = ev3.zenith_range()
    return GridAxis(z.psi_min, z.psi_max, 21)


def _scenario(args):
    overrides = {k: getattr(args, k) for k in ("lx", "ly", "ux", "uy", "uz", "vz")}
    return load_scenario(args.scenario, overrides)


@contextlib.contextmanager
def _output(path: Optional[str]):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            yield fh


def _angle_out(x: float, degrees: bool) -> float:
    return math.degrees(x) if degrees else x


def cmd_eval(args) -> int:
    s = _scenario(args)
    variables, column = QUANTITIES[args.quantity]
    needs_3d = "psi" in variables or "d" in variables
    if needs_3d and s.vz is None:
        raise ConfigError("field 'vz': required for 3D quantities")
    ev = DistributionEval2D(s)
    ev3 = DistributionEval3D(s) if s.vz is not None else None
    grid = parse_grid(args.grid, args.degrees)
    axes = [(grid.get(v) or _default_axis(v, ev3, s.r_max)).values() for v in variables]
    fn = {
        "joint-cdf-2d": lambda r, t: ev.joint_cdf(r, t),
        "joint-pdf-2d": lambda r, t: ev.joint_pdf(r, t),
        "marg-az-cdf": lambda t: ev.marginal_azimuth_cdf(t),
        "marg-az-pdf": lambda t: ev.marginal_azimuth_pdf(t),
        "joint-cdf-3d": lambda d, t, p: ev3.joint_cdf_3d(d, t, p),
        "ang-cdf": lambda t, p: ev3.angular_cdf(t, p),
        "ang-pdf": lambda t, p: ev3.angular_pdf(t, p),
    }[args.quantity]
    with _output(args.out) as fh:
        fh.write(",".join((*variables, column)) + "\n")
        for point in itertools.product(*axes):
            try:
                value = fn(*point)
            except ValueError as exc:
                raise UsageError(str(exc)) from None
            coords = [_angle_out(x, args.degrees) if v in ANGLE_VARS else x
                      for v, x in zip(variables, point)]
            fh.write(",".join(fmt(x) for x in (*coords, value)) + "\n")
    return EXIT_OK


def cmd_validate(args) -> int:
    s = _scenario(args)
    if args.grid:
        grid_spec = parse_grid(args.grid, args.degrees)
        default = OracleGrid.default(s, highlighted=False)

        def pick(var, fallback):
            axis = grid_spec.get(var)
            return tuple(axis.values()) if axis else fallback

        grid = OracleGrid(
            radii=pick("r", default.radii),
            thetas=pick("theta", default.thetas),
            distances=pick("d", default.distances),
            psis=pick("psi", default.psis),
        )
    else:
        grid = OracleGrid.default(s)
    report = validate(s, args.n, args.seed, grid)
    with _output(args.out) as fh:
        report.write_csv(fh)
    sup = report.sup_deviation
    print(f"scenario={s.name or scenario_hash(s)} n={report.n_samples} seed={report.seed} "
          f"rows={len(report.rows)} sup_deviation={fmt(sup)}", file=sys.stderr)
    return EXIT_BREACH if sup > args.threshold else EXIT_OK


def _budget(args) -> app.LinkBudget:
    missing = [flag for flag, val in (("--tau", args.tau), ("--alpha", args.alpha),
                                      ("--rho-t", args.rho_t), ("--n0", args.n0)) if val is None]
    if missing:
        raise UsageError(f"snr mode requires {', '.join(missing)}")
    try:
        return app.LinkBudget(args.tau, args.alpha, args.rho_t, args.n0, args.exp_sign)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_sample(args) -> int:
    s = _scenario(args)
    deg = args.degrees
    budget = _budget(args) if args.mode == "snr" else None
    if args.mode in ("3d", "snr") and s.vz is None:
        raise ConfigError("field 'vz': required for 3d/snr sampling")
    samples = sample_points(s, args.n, args.seed)
    with _output(args.out) as fh:
        fh.write(f"# scenario_hash={scenario_hash(s)} seed={args.seed}\n")
        if args.mode == "2d":
            r, th = samples.polar
            fh.write("x,y,r,theta\n")
            for (x, y), ri, ti in zip(samples.points, r, th):
                fh.write(f"{fmt(x)},{fmt(y)},{fmt(ri)},{fmt(_angle_out(ti, deg))}\n")
            return EXIT_OK
        ev3 = DistributionEval3D(s)
        d, th, ps = samples.spherical(ev3.uz, ev3.vz)
        if args.mode == "3d":
            fh.write("d,theta,psi\n")
            for di, ti, pi_ in zip(d, th, ps):
                fh.write(f"{fmt(di)},{fmt(_angle_out(ti, deg))},{fmt(_angle_out(pi_, deg))}\n")
            return EXIT_OK
        snr = app.snr_samples(ev3, budget, n=args.n, seed=args.seed)
        fh.write("d,theta,psi,snr\n")
        for di, ti, pi_, si in zip(d, th, ps, snr):
            fh.write(f"{fmt(di)},{fmt(_angle_out(ti, deg))},{fmt(_angle_out(pi_, deg))},{fmt(si)}\n")
    return EXIT_OK


def cmd_codebook(args) -> int:
    s = _scenario(args)
    ev = DistributionEval2D(s)
    book = app.design_codebook(ev, args.m)
    masses = book.masses(ev) + [None]
    with _output(args.out) as fh:
        fh.write(f"# scenario_hash={scenario_hash(s)} m={book.m}\n")
        fh.write("k,boundary,mass\n")
        for k, (b, mass) in enumerate(zip(book.boundaries, masses)):
            fh.write(f"{k},{fmt(_angle_out(b, args.degrees))},{'' if mass is None else fmt(mass)}\n")
    return EXIT_OK


def cmd_route(args) -> int:
    s = _scenario(args)
    width = math.radians(args.beamwidth) if args.degrees else args.beamwidth
    try:
        choice = app.routing_direction(DistributionEval2D(s), args.r_max, width)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    with _output(args.out) as fh:
        fh.write("theta,mass,reachable\n")
        fh.write(f"{fmt(_angle_out(choice.theta, args.degrees))},{fmt(choice.mass)},{int(choice.reachable)}\n")
    return EXIT_OK


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--scenario", default="O",
                        help="preset O, A, B, C or a 'key = value' file (default O)")
    for key in ("lx", "ly", "ux", "uy", "uz", "vz"):
        common.add_argument(f"--{key}", type=float, default=None, help=f"override scenario {key}")
    common.add_argument("--out", default=None, help="output file (default stdout)")
    common.add_argument("--degrees", action="store_true", help="angles in and out in degrees")

    parser = _Parser(prog="rectdist", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", parents=[common], help="evaluate a distribution on a grid")
    p.add_argument("--quantity", required=True, choices=sorted(QUANTITIES))
    p.add_argument("--grid", default=None,
                   help="var=lo:hi:steps[,...] with var in r, theta, psi, d; 'pi' suffix allowed")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("validate", parents=[common], help="compare closed forms with sampling")
    p.add_argument("--n", type=_positive_int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--grid", default=None)
    p.add_argument("--threshold", type=float, default=0.02,
                   help="exit 2 if the sup deviation exceeds this (default 0.02)")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser(
        "sample", parents=[common], help="draw node samples",
        description="Columns: 2d -> x,y,r,theta; 3d -> d,theta,psi; snr -> d,theta,psi,snr "
                    "(isotropic gains, no fading). A '# scenario_hash=... seed=...' line precedes the header.",
    )
    p.add_argument("--n", type=_positive_int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=("2d", "3d", "snr"), default="2d")
    p.add_argument("--tau", type=float, help="path-loss slope (1/m)")
    p.add_argument("--alpha", type=float, help="path-loss exponent")
    p.add_argument("--rho-t", dest="rho_t", type=float, help="transmit PSD (W/Hz)")
    p.add_argument("--n0", type=float, help="noise PSD (W/Hz)")
    p.add_argument("--exp-sign", dest="exp_sign", type=int, choices=(-1, 1), default=-1,
                   help="sign applied to alpha (default -1: loss grows with distance)")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("codebook", parents=[common], help="equal-probability azimuth beams")
    p.add_argument("--m", type=_positive_int, required=True)
    p.set_defaults(func=cmd_codebook)

    p = sub.add_parser("route", parents=[common], help="best transmit window within range")
    p.add_argument("--r-max", dest="r_max", type=float, required=True)
    p.add_argument("--beamwidth", type=float, required=True)
    p.set_defaults(func=cmd_route)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, UsageError) as exc:
        print(f"rectdist {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
