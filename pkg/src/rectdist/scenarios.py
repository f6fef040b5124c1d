"""Preset scenarios and the ``key = value`` scenario file format."""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .geometry import Point3, RectScenario


@dataclass(frozen=True)
class ScenarioConfig:
    name: str
    lx: float
    ly: float
    ux: float
    uy: float
    uz: float = 0.0
    vz: Optional[float] = None

    def build(self) -> RectScenario:
        return RectScenario(self.lx, self.ly, Point3(self.ux, self.uy, self.uz), self.vz, self.name)


# public square, road with a roadside unit, office room, UAV swarm
PRESETS: dict[str, ScenarioConfig] = {
    "O": ScenarioConfig("O", 200.0, 100.0, 30.0, 25.0, 10.0, 1.5),
    "A": ScenarioConfig("A", 200.0, 9.75, 0.0, 9.75 / 2, 0.0, None),
    "B": ScenarioConfig("B", 3.0, 5.0, 0.5, 1.25, 3.0, 1.5),
    "C": ScenarioConfig("C", 200.0, 100.0, 30.0, 25.0, 10.0, 120.0),
}

_FIELDS = ("name", "lx", "ly", "ux", "uy", "uz", "vz")


class ConfigError(ValueError):
    """Invalid scenario configuration; the message names the offending field."""


def preset(name: str) -> RectScenario:
    return PRESETS[name.upper()].build()


def parse_config(text: str, overrides: Optional[dict] = None) -> ScenarioConfig:
    """Parse ``key = value`` lines; ``#`` starts a comment, blank lines are skipped."""
    values: dict[str, object] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.lower()
        if key not in _FIELDS:
            raise ConfigError(f"line {lineno}: unknown field {key!r}")
        values[key] = value
    values.update({k: v for k, v in (overrides or {}).items() if v is not None})
    return _from_mapping(values)


def _from_mapping(values: dict) -> ScenarioConfig:
    kwargs: dict[str, object] = {"name": str(values.get("name", "custom"))}
    for key in ("lx", "ly", "ux", "uy", "uz", "vz"):
        if key not in values or values[key] is None or values[key] in ("", "-", "none", "None"):
            if key in ("lx", "ly", "ux", "uy"):
                raise ConfigError(f"missing required field {key!r}")
            continue
        try:
            number = float(values[key])
        except (TypeError, ValueError):
            raise ConfigError(f"field {key!r}: not a number: {values[key]!r}") from None
        if not math.isfinite(number):
            raise ConfigError(f"field {key!r}: must be finite")
        kwargs[key] = number
    return ScenarioConfig(**kwargs)


def load_scenario(spec: str, overrides: Optional[dict] = None) -> RectScenario:
    """Resolve a preset letter or a config file path, then apply ``overrides``.

    Raises:
        ConfigError: unknown preset/file, malformed field, or a geometry that
            violates the scenario invariants (e.g. reference point outside).
    """
    if spec.upper() in PRESETS and not Path(spec).is_file():
        base = PRESETS[spec.upper()]
        values = {k: getattr(base, k) for k in _FIELDS}
        values.update({k: v for k, v in (overrides or {}).items() if v is not None})
        cfg = _from_mapping(values)
    else:
        path = Path(spec)
        if not path.is_file():
            raise ConfigError(f"scenario {spec!r} is neither a preset ({', '.join(PRESETS)}) nor a file")
        cfg = parse_config(path.read_text(encoding="utf-8"), overrides)
    try:
        return cfg.build()
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def scenario_hash(s: RectScenario) -> str:
    """Short stable digest of the scenario geometry (name excluded)."""
    key = "|".join(repr(float(v)) if v is not None else "None"
                   for v in (s.lx, s.ly, s.u.x, s.u.y, s.u.z, s.vz))
    return hashlib.sha256(key.encode("ascii")).hexdigest()[:16]
