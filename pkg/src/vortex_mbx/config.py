"""JSON run configuration.

Every section is optional; missing values fall back to the table row of the
selected concentration and the standard defaults (C = 3%, Z = 8.5, LG probe
with E_p = 5, w = 1, l = 1 on resonance). Unknown keys are rejected.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Any

from .maps import GridSpec
from .params import CONCENTRATIONS, DecayRates, MediumConfig, ParameterError, ProbeSpec, canonical_concentration, medium_for
from .sweeps import SweepSpec

FORMATS = ("csv", "pgm", "both")


class ConfigError(ValueError):
    """Invalid configuration; the message names the offending key."""


@dataclass(frozen=True)
class Range:
    start: float
    stop: float
    samples: int


@dataclass(frozen=True)
class SweepBlock:
    concentrations: tuple[float, ...] = CONCENTRATIONS
    z_range: Range = Range(0.0, 20.0, 401)
    delta_range: Range = Range(-10.0, 10.0, 401)
    spectra_omega_p0: float = 0.1
    spectra_ell: int = 1


@dataclass(frozen=True)
class OutputBlock:
    directory: str = "vortex_out"
    format: str = "both"
    png: bool = False


@dataclass(frozen=True)
class RunConfig:
    medium: MediumConfig = field(default_factory=lambda: medium_for(3.0))
    probe: ProbeSpec = field(default_factory=ProbeSpec)
    z_eff: float = 8.5
    grid: GridSpec = field(default_factory=GridSpec)
    sweep: SweepBlock = field(default_factory=SweepBlock)
    output: OutputBlock = field(default_factory=OutputBlock)

    def shared_medium_overrides(self) -> dict:
        """Medium fields common to every concentration in multi-row sweeps."""
        return {"beta21": self.medium.beta21, "beta31": self.medium.beta31, "decay": self.medium.decay}

    def efficiency_sweeps(self) -> tuple[SweepSpec, SweepSpec]:
        shared = self.shared_medium_overrides()
        s = self.sweep
        vs_z = SweepSpec(
            "z_eff", s.z_range.start, s.z_range.stop, s.z_range.samples, s.concentrations,
            z_eff=self.z_eff, delta_p=self.probe.delta_p, omega_p0=self.probe.e_p, ell=self.probe.ell,
            medium_overrides=shared,
        )
        vs_delta = SweepSpec(
            "delta_p", s.delta_range.start, s.delta_range.stop, s.delta_range.samples, s.concentrations,
            z_eff=self.z_eff, delta_p=self.probe.delta_p, omega_p0=self.probe.e_p, ell=self.probe.ell,
            medium_overrides=shared,
        )
        return vs_z, vs_delta

    def spectra_sweep(self) -> SweepSpec:
        s = self.sweep
        return SweepSpec(
            "delta_p", s.delta_range.start, s.delta_range.stop, s.delta_range.samples, s.concentrations,
            z_eff=self.z_eff, omega_p0=s.spectra_omega_p0, ell=s.spectra_ell,
            medium_overrides=self.shared_medium_overrides(),
        )


_MEDIUM_KEYS = {"concentration", "omega_c", "mu21", "mu31", "beta21", "beta31", "tau2", "tau3", "mu23", "decay"}
_DECAY_KEYS = {f.name for f in fields(DecayRates)}
_PROBE_KEYS = {f.name for f in fields(ProbeSpec)}
_GRID_KEYS = {f.name for f in fields(GridSpec)}
_SWEEP_KEYS = {"concentrations", "z_range", "delta_range", "spectra_omega_p0", "spectra_ell"}
_RANGE_KEYS = {"start", "stop", "samples"}
_OUTPUT_KEYS = {"directory", "format", "png"}
_TOP_KEYS = {"medium", "probe", "z_eff", "grid", "sweep", "output"}


def _section(raw: Any, name: str, allowed: set[str]) -> dict:
    if raw is None:
        return {}
    if not isinstance(raw, dict):
        raise ConfigError(f"{name}: expected an object, got {type(raw).__name__}")
    unknown = sorted(set(raw) - allowed)
    if unknown:
        raise ConfigError(f"{name}.{unknown[0]}: unknown key (allowed: {', '.join(sorted(allowed))})")
    return raw


def _number(value: Any, key: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{key}: expected a number, got {value!r}")
    return float(value)


def _integer(value: Any, key: str) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, float)) or int(value) != value:
        raise ConfigError(f"{key}: expected an integer, got {value!r}")
    return int(value)


def _build(factory, key: str, **kwargs):
    try:
        return factory(**kwargs)
    except (ParameterError, ValueError) as exc:
        raise ConfigError(f"{key}: {exc}") from None


def _range(raw: Any, key: str, default: Range) -> Range:
    sec = _section(raw, key, _RANGE_KEYS)
    start = _number(sec.get("start", default.start), f"{key}.start")
    stop = _number(sec.get("stop", default.stop), f"{key}.stop")
    samples = _integer(sec.get("samples", default.samples), f"{key}.samples")
    if samples < 2:
        raise ConfigError(f"{key}.samples: must be >= 2")
    if not start < stop:
        raise ConfigError(f"{key}: start must be < stop")
    return Range(start, stop, samples)


def from_dict(raw: Any) -> RunConfig:
    top = _section(raw, "config", _TOP_KEYS)

    med = _section(top.get("medium"), "medium", _MEDIUM_KEYS)
    try:
        concentration = canonical_concentration(med.get("concentration", 3.0))
    except ParameterError as exc:
        raise ConfigError(f"medium.concentration: {exc}") from None
    overrides: dict[str, Any] = {}
    for key in _MEDIUM_KEYS - {"concentration", "decay"}:
        if key in med:
            overrides[key] = _number(med[key], f"medium.{key}")
    if "decay" in med:
        dec = _section(med["decay"], "medium.decay", _DECAY_KEYS)
        values = {k: _number(v, f"medium.decay.{k}") for k, v in dec.items()}
        overrides["decay"] = _build(lambda **kw: DecayRates(**{**asdict(DecayRates()), **kw}), "medium.decay", **values)
    medium = _build(lambda: medium_for(concentration, **overrides), "medium")

    pr = _section(top.get("probe"), "probe", _PROBE_KEYS)
    probe_kwargs = {k: _number(v, f"probe.{k}") for k, v in pr.items() if k != "ell"}
    if "ell" in pr:
        probe_kwargs["ell"] = _integer(pr["ell"], "probe.ell")
    if "waist" in probe_kwargs and not probe_kwargs["waist"] > 0:
        raise ConfigError(f"probe.waist: must be > 0, got {probe_kwargs['waist']!r}")
    probe = _build(ProbeSpec, "probe", **probe_kwargs)

    z_eff = _number(top.get("z_eff", 8.5), "z_eff")
    if z_eff < 0:
        raise ConfigError("z_eff: must be >= 0")

    gr = _section(top.get("grid"), "grid", _GRID_KEYS)
    grid_kwargs = {k: (_integer(v, f"grid.{k}") if k in ("nx", "ny") else _number(v, f"grid.{k}")) for k, v in gr.items()}
    grid = _build(GridSpec, "grid", **grid_kwargs)

    sw = _section(top.get("sweep"), "sweep", _SWEEP_KEYS)
    default_sweep = SweepBlock()
    concentrations = sw.get("concentrations", list(default_sweep.concentrations))
    if not isinstance(concentrations, list) or not concentrations:
        raise ConfigError("sweep.concentrations: expected a non-empty list")
    try:
        concentrations = tuple(canonical_concentration(c) for c in concentrations)
    except ParameterError as exc:
        raise ConfigError(f"sweep.concentrations: {exc}") from None
    sweep = SweepBlock(
        concentrations=concentrations,
        z_range=_range(sw.get("z_range"), "sweep.z_range", default_sweep.z_range),
        delta_range=_range(sw.get("delta_range"), "sweep.delta_range", default_sweep.delta_range),
        spectra_omega_p0=_number(sw.get("spectra_omega_p0", default_sweep.spectra_omega_p0), "sweep.spectra_omega_p0"),
        spectra_ell=_integer(sw.get("spectra_ell", default_sweep.spectra_ell), "sweep.spectra_ell"),
    )
    if sweep.z_range.start < 0:
        raise ConfigError("sweep.z_range.start: must be >= 0")
    if sweep.spectra_omega_p0 == 0:
        raise ConfigError("sweep.spectra_omega_p0: must be non-zero")

    out = _section(top.get("output"), "output", _OUTPUT_KEYS)
    directory = out.get("directory", OutputBlock.directory)
    if not isinstance(directory, str) or not directory:
        raise ConfigError("output.directory: expected a non-empty string")
    fmt = out.get("format", OutputBlock.format)
    if fmt not in FORMATS:
        raise ConfigError(f"output.format: expected one of {FORMATS}, got {fmt!r}")
    png = out.get("png", OutputBlock.png)
    if not isinstance(png, bool):
        raise ConfigError("output.png: expected true or false")

    return RunConfig(medium, probe, z_eff, grid, sweep, OutputBlock(directory, fmt, png))


def parse_assignment(text: str) -> tuple[str, Any]:
    """Split ``key.path=value``; the value is read as JSON when possible."""
    key, sep, value = text.partition("=")
    key = key.strip()
    if not sep or not key:
        raise ConfigError(f"--set expects key=value, got {text!r}")
    try:
        parsed = json.loads(value)
    except json.JSONDecodeError:
        parsed = value
    return key, parsed


def apply_overrides(raw: dict, assignments: list[str]) -> dict:
    merged = json.loads(json.dumps(raw))
    for text in assignments:
        key, value = parse_assignment(text)
        parts = key.split(".")
        node = merged
        for part in parts[:-1]:
            child = node.setdefault(part, {})
            if not isinstance(child, dict):
                raise ConfigError(f"{key}: cannot descend into non-object {part!r}")
            node = child
        node[parts[-1]] = value
    return merged


def read_raw(path: str | Path | None) -> dict:
    if path is None:
        return {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: JSON parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: top level must be a JSON object")
    return raw


def load_config(path: str | Path | None = None, overrides: list[str] | None = None) -> RunConfig:
    return from_dict(apply_overrides(read_raw(path), overrides or []))


def to_dict(config: RunConfig) -> dict:
    """Explicit form of a config; reloading it gives an equal RunConfig."""
    m = config.medium
    return {
        "medium": {
            "concentration": m.label,
            "omega_c": m.omega_c,
            "mu21": m.mu21,
            "mu31": m.mu31,
            "beta21": m.beta21,
            "beta31": m.beta31,
            "tau2": m.tau2,
            "tau3": m.tau3,
            "mu23": m.mu23,
            "decay": asdict(m.decay),
        },
        "probe": asdict(config.probe),
        "z_eff": config.z_eff,
        "grid": asdict(config.grid),
        "sweep": {
            "concentrations": list(config.sweep.concentrations),
            "z_range": asdict(config.sweep.z_range),
            "delta_range": asdict(config.sweep.delta_range),
            "spectra_omega_p0": config.sweep.spectra_omega_p0,
            "spectra_ell": config.sweep.spectra_ell,
        },
        "output": asdict(config.output),
    }


def dump_config(config: RunConfig, path: str | Path) -> None:
    Path(path).write_text(json.dumps(to_dict(config), indent=2, sort_keys=True) + "\n", encoding="utf-8")
