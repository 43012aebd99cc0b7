"""Parameter scans over distance and detuning, optimum search and the
slow/fast-light classification of the dispersion slope at resonance."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Literal, Sequence

import numpy as np
from scipy.optimize import golden

from . import core
from .params import CONCENTRATIONS, MediumConfig, ParameterError, ProbeSpec, canonical_concentration, medium_for

THREADS_ENV = "VORTEX_MBX_THREADS"
NEAR_VACUUM_FRACTION = 0.05
SLOPE_STEP = 1e-3
QUANTITIES: tuple[str, ...] = ("eta", "im_rho21", "re_rho21", "im_rho31", "re_rho31")


def worker_count() -> int | None:
    raw = os.environ.get(THREADS_ENV)
    if not raw:
        return None
    try:
        value = int(raw)
    except ValueError:
        raise ParameterError(f"{THREADS_ENV} must be a positive integer, got {raw!r}") from None
    if value < 1:
        raise ParameterError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return value


@dataclass(frozen=True)
class SweepSpec:
    """A one-axis scan evaluated for several concentrations.

    ``z_eff`` / ``delta_p`` are the held values of whichever axis is not
    scanned. Spectra are taken at the reference point phi = 0 of the probe,
    where the LG phase factor is 1, with entrance amplitude ``omega_p0``.
    """

    axis: Literal["z_eff", "delta_p"]
    start: float
    stop: float
    samples: int
    concentrations: tuple[float, ...] = CONCENTRATIONS
    z_eff: float = 8.5
    delta_p: float = 0.0
    omega_p0: float = 5.0
    ell: int = 1
    medium_overrides: dict = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        if self.axis not in ("z_eff", "delta_p"):
            raise ParameterError(f"sweep axis must be 'z_eff' or 'delta_p', got {self.axis!r}")
        if int(self.samples) != self.samples or self.samples < 2:
            raise ParameterError(f"sweep.samples must be an integer >= 2, got {self.samples!r}")
        if not self.start < self.stop:
            raise ParameterError(f"sweep range needs start < stop, got [{self.start}, {self.stop}]")
        if self.axis == "z_eff" and self.start < 0:
            raise ParameterError("effective distance sweeps must start at >= 0")
        if not self.concentrations:
            raise ParameterError("sweep needs at least one concentration")
        object.__setattr__(
            self, "concentrations", tuple(canonical_concentration(c) for c in self.concentrations)
        )

    @property
    def axis_values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, int(self.samples))


@dataclass(frozen=True)
class SpectrumRow:
    axis_value: float
    values: dict  # concentration -> {quantity: float}

    def flat(self, concentrations: Sequence[float]) -> list[float]:
        out = [self.axis_value]
        for c in concentrations:
            out.extend(self.values[c][q] for q in QUANTITIES)
        return out


def sweep_columns(concentrations: Sequence[float], axis: str) -> list[str]:
    cols = [axis]
    for c in concentrations:
        cols.extend(f"{q}_c{c:g}" for q in QUANTITIES)
    return cols


def _evaluate(medium: MediumConfig, spec: SweepSpec) -> dict[str, np.ndarray]:
    axis = spec.axis_values
    if spec.axis == "z_eff":
        delta, z = spec.delta_p, axis
    else:
        delta, z = axis, spec.z_eff
    coeffs, kernel = core.kernel_for(medium, delta)
    omega_p0 = complex(spec.omega_p0)
    t_probe, t_signal = core.transfer_factors(kernel, z)
    omega_p = t_probe * omega_p0
    omega_s = t_signal * omega_p0
    rho21 = coeffs.a1 * omega_p + coeffs.b1 * omega_s
    rho31 = coeffs.a2 * omega_p + coeffs.b2 * omega_s
    obs = core.observables(rho21, rho31)
    n = len(axis)
    return {
        "eta": np.broadcast_to(medium.dipole_ratio**2 * np.abs(t_signal) ** 2, (n,)),
        "im_rho21": np.broadcast_to(obs.probe_absorption, (n,)),
        "re_rho21": np.broadcast_to(obs.probe_dispersion, (n,)),
        "im_rho31": np.broadcast_to(obs.signal_absorption, (n,)),
        "re_rho31": np.broadcast_to(obs.signal_dispersion, (n,)),
    }


def run_sweep(spec: SweepSpec) -> list[SpectrumRow]:
    """Evaluate ``spec`` for each concentration; rows ascend along the axis.

    ``im_rho31`` / ``re_rho31`` are the signal coherence in the signal frame
    (see ``core.SIGNAL_FRAME``).
    """
    media = [medium_for(c, **spec.medium_overrides) for c in spec.concentrations]
    workers = worker_count()
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            columns = list(pool.map(lambda m: _evaluate(m, spec), media))
    else:
        columns = [_evaluate(m, spec) for m in media]
    rows = []
    for i, x in enumerate(spec.axis_values):
        values = {
            c: {q: float(col[q][i]) for q in QUANTITIES} for c, col in zip(spec.concentrations, columns)
        }
        rows.append(SpectrumRow(float(x), values))
    return rows


@dataclass(frozen=True)
class Optimum:
    axis_value: float
    eta: float
    boundary: bool


def efficiency_curve(medium: MediumConfig, axis: str, values, *, z_eff: float = 8.5, delta_p: float = 0.0):
    if axis == "z_eff":
        probe = ProbeSpec(e_p=1.0, delta_p=delta_p)
        return np.asarray(core.conversion_efficiency(medium, probe, values), dtype=float)
    if axis == "delta_p":
        _, kernel = core.kernel_for(medium, np.asarray(values, dtype=float))
        _, t_signal = core.transfer_factors(kernel, z_eff)
        return np.asarray(medium.dipole_ratio**2 * np.abs(t_signal) ** 2, dtype=float)
    raise ParameterError(f"unknown axis {axis!r}")


def find_optimum(
    medium: MediumConfig,
    axis: Literal["z_eff", "delta_p"] = "z_eff",
    window: tuple[float, float] = (0.0, 20.0),
    *,
    z_eff: float = 8.5,
    delta_p: float = 0.0,
    scan_points: int = 1000,
    xtol: float = 1e-4,
) -> Optimum:
    """Maximize the conversion efficiency along one axis.

    A dense scan picks the best sample (first one on ties); golden-section
    search then refines inside its two neighbours. A best sample on the
    window edge is reported as a boundary optimum without refinement.
    """
    lo, hi = float(window[0]), float(window[1])
    if hi < lo:
        raise ParameterError(f"optimum window needs lo <= hi, got {window!r}")
    grid = np.linspace(lo, hi, scan_points)
    eta = efficiency_curve(medium, axis, grid, z_eff=z_eff, delta_p=delta_p)
    i = int(np.argmax(eta))
    if hi == lo or i == 0 or i == len(grid) - 1 or np.ptp(eta) == 0:
        return Optimum(float(grid[i]), float(eta[i]), True)

    def neg(x):
        return -float(efficiency_curve(medium, axis, np.array([x]), z_eff=z_eff, delta_p=delta_p)[0])

    best = golden(neg, brack=(grid[i - 1], grid[i], grid[i + 1]), tol=xtol / max(1.0, abs(grid[i])) / 10)
    best = float(np.clip(best, grid[i - 1], grid[i + 1]))
    value = -neg(best)
    if value < eta[i]:
        best, value = float(grid[i]), float(eta[i])
    return Optimum(best, value, False)


@dataclass(frozen=True)
class DispersionRegime:
    concentration: float
    beam: str
    classification: str
    slope: float
    threshold: float


def _dispersion(medium: MediumConfig, beam: str, delta, z_eff: float, omega_p0: complex):
    coeffs, kernel = core.kernel_for(medium, delta)
    rho21, rho31 = core.coherences_along_z(kernel, coeffs, omega_p0, z_eff)
    obs = core.observables(rho21, rho31)
    if beam == "probe":
        return obs.probe_dispersion
    if beam == "signal":
        return obs.signal_dispersion
    raise ParameterError(f"beam must be 'probe' or 'signal', got {beam!r}")


def dispersion_slope(
    medium: MediumConfig, beam: str, z_eff: float = 8.5, omega_p0: complex = 0.1, h: float = SLOPE_STEP
) -> float:
    """Central difference of the dispersion curve at resonance."""
    values = _dispersion(medium, beam, np.array([-h, h]), z_eff, omega_p0)
    return float((values[1] - values[0]) / (2 * h))


def classify_dispersion(
    concentration: float,
    beam: Literal["probe", "signal"],
    z_eff: float = 8.5,
    omega_p0: complex = 0.1,
    **medium_overrides,
) -> DispersionRegime:
    """Slow/fast-light regime from the sign of d Re[rho] / d delta_p at resonance.

    A slope whose magnitude is under 5% of the largest one across all table
    concentrations (same beam and distance) counts as near-vacuum.
    """
    label = canonical_concentration(concentration)
    slopes = {
        c: dispersion_slope(medium_for(c, **medium_overrides), beam, z_eff, omega_p0) for c in CONCENTRATIONS
    }
    slope = slopes[label]
    threshold = NEAR_VACUUM_FRACTION * max(abs(s) for s in slopes.values())
    if abs(slope) < threshold:
        kind = "near-vacuum"
    elif slope > 0:
        kind = "subluminal"
    else:
        kind = "superluminal"
    return DispersionRegime(label, beam, kind, slope, threshold)
