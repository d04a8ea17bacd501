"""Scenario definitions and their flat key-value file format.

A scenario file is INI-style text: one section per scenario (the section name
is the label), with ``manifold = static`` or ``manifold = dynamic`` plus the
plant and manifold parameters, and optional simulation overrides. The format
is deliberately flat and diffable; :func:`serialize_scenarios` writes a
canonical form whose parse is value-identical to the original.
"""

from __future__ import annotations

import configparser
import io
from dataclasses import dataclass, fields
from importlib import resources

from .errors import ConfigError, InvalidManifold
from .models import DynamicManifold, ManifoldSpec, PlantParams, StaticManifold
from .simulator import SimConfig, default_sim_config

__all__ = [
    "SimOverrides",
    "Scenario",
    "parse_scenarios",
    "serialize_scenarios",
    "default_config_text",
]

_PLANT_KEYS = ("manifold", "k", "tau")
_DYNAMIC_KEYS = ("f", "g", "h", "l")
_SIM_KEYS = ("dt", "t_end", "x0", "xi0", "record_stride")


@dataclass(frozen=True)
class SimOverrides:
    """Optional per-scenario overrides of the simulation defaults."""

    dt: float | None = None
    t_end: float | None = None
    x0: float | None = None
    xi0: tuple[float, float] | None = None
    record_stride: int | None = None

    def as_kwargs(self) -> dict:
        return {
            f.name: getattr(self, f.name)
            for f in fields(self)
            if getattr(self, f.name) is not None
        }


@dataclass(frozen=True)
class Scenario:
    label: str
    plant: PlantParams
    manifold: ManifoldSpec
    sim: SimOverrides = SimOverrides()

    def sim_config(self) -> SimConfig:
        return default_sim_config(self.plant, **self.sim.as_kwargs())


def _get_float(section, label: str, key: str) -> float:
    raw = section[key]
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(f"scenario {label!r}, field {key!r}: not a number: {raw!r}") from None


def _parse_section(label: str, section) -> Scenario:
    known = set(_PLANT_KEYS) | set(_SIM_KEYS)
    kind = section.get("manifold")
    if kind is None:
        raise ConfigError(f"scenario {label!r}: missing required field 'manifold'")
    if kind == "dynamic":
        known |= set(_DYNAMIC_KEYS)
    elif kind != "static":
        raise ConfigError(
            f"scenario {label!r}, field 'manifold': expected 'static' or 'dynamic', got {kind!r}"
        )
    for key in section:
        if key not in known:
            raise ConfigError(f"scenario {label!r}: unknown field {key!r}")
    for key in _PLANT_KEYS:
        if key not in section:
            raise ConfigError(f"scenario {label!r}: missing required field {key!r}")

    try:
        plant = PlantParams(k=_get_float(section, label, "k"), tau=_get_float(section, label, "tau"))
    except ValueError as exc:
        raise ConfigError(f"scenario {label!r}: {exc}") from None

    if kind == "static":
        manifold: ManifoldSpec = StaticManifold()
    else:
        for key in _DYNAMIC_KEYS:
            if key not in section:
                raise ConfigError(
                    f"scenario {label!r}: dynamic manifold requires field {key!r}"
                )
        try:
            manifold = DynamicManifold(
                f=_get_float(section, label, "f"),
                g=_get_float(section, label, "g"),
                h=_get_float(section, label, "h"),
                l=_get_float(section, label, "l"),
            )
        except InvalidManifold:
            raise ConfigError(
                f"scenario {label!r}: constraint 'l != 0' violated (l = 0 loses relative degree one)"
            ) from None

    overrides = {}
    if "dt" in section:
        overrides["dt"] = _get_float(section, label, "dt")
    if "t_end" in section:
        overrides["t_end"] = _get_float(section, label, "t_end")
    if "x0" in section:
        overrides["x0"] = _get_float(section, label, "x0")
    if "xi0" in section:
        parts = section["xi0"].split()
        if len(parts) != 2:
            raise ConfigError(
                f"scenario {label!r}, field 'xi0': expected two numbers, got {section['xi0']!r}"
            )
        try:
            overrides["xi0"] = (float(parts[0]), float(parts[1]))
        except ValueError:
            raise ConfigError(
                f"scenario {label!r}, field 'xi0': not numbers: {section['xi0']!r}"
            ) from None
    if "record_stride" in section:
        raw = section["record_stride"]
        try:
            overrides["record_stride"] = int(raw)
        except ValueError:
            raise ConfigError(
                f"scenario {label!r}, field 'record_stride': not an integer: {raw!r}"
            ) from None

    return Scenario(label=label, plant=plant, manifold=manifold, sim=SimOverrides(**overrides))


def parse_scenarios(text: str) -> tuple[Scenario, ...]:
    """Parse scenario file text.

    Raises
    ------
    ConfigError
        With the offending section/field (or the parser's line diagnostics)
        for malformed text, duplicate labels, unknown or missing fields, and
        constraint violations.
    """
    parser = configparser.ConfigParser(interpolation=None, strict=True, delimiters=("=",))
    parser.optionxform = str  # labels and keys are case-sensitive
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(str(exc)) from None
    if parser.defaults():
        raise ConfigError("top-level keys outside a [scenario] section are not allowed")

    scenarios = tuple(
        _parse_section(label, parser[label]) for label in parser.sections()
    )
    return scenarios


def serialize_scenarios(scenarios) -> str:
    """Canonical text form; parsing it yields value-identical scenarios."""
    out = io.StringIO()
    for i, sc in enumerate(scenarios):
        if i:
            out.write("\n")
        out.write(f"[{sc.label}]\n")
        if isinstance(sc.manifold, StaticManifold):
            out.write("manifold = static\n")
        else:
            out.write("manifold = dynamic\n")
        out.write(f"k = {sc.plant.k!r}\n")
        out.write(f"tau = {sc.plant.tau!r}\n")
        if isinstance(sc.manifold, DynamicManifold):
            for key in _DYNAMIC_KEYS:
                out.write(f"{key} = {getattr(sc.manifold, key)!r}\n")
        if sc.sim.dt is not None:
            out.write(f"dt = {sc.sim.dt!r}\n")
        if sc.sim.t_end is not None:
            out.write(f"t_end = {sc.sim.t_end!r}\n")
        if sc.sim.x0 is not None:
            out.write(f"x0 = {sc.sim.x0!r}\n")
        if sc.sim.xi0 is not None:
            out.write(f"xi0 = {sc.sim.xi0[0]!r} {sc.sim.xi0[1]!r}\n")
        if sc.sim.record_stride is not None:
            out.write(f"record_stride = {sc.sim.record_stride}\n")
    return out.getvalue()


def default_config_text() -> str:
    """Text of the bundled four-scenario benchmark configuration."""
    return resources.files("chatterbench").joinpath("data/default.cfg").read_text()
