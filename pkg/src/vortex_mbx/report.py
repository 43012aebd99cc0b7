"""File outputs for each CLI subcommand: CSV tables plus rasters."""

from __future__ import annotations

from pathlib import Path

import numpy as np

from . import core, maps, sweeps
from .config import RunConfig, dump_config
from .output import GRAY_INTENSITY, GRAY_PHASE, SIGNED, HeatmapStyle, render_heatmap, write_csv, write_field_map_csv
from .params import DIPOLE_PAIRS, FALLBACK_DIPOLE_SOURCE, TABLE_1, ProbeSpec, medium_for


def _outdir(config: RunConfig) -> Path:
    path = Path(config.output.directory)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _write_sweep(rows, spec: sweeps.SweepSpec, path: Path) -> None:
    write_csv((r.flat(spec.concentrations) for r in rows), sweeps.sweep_columns(spec.concentrations, spec.axis), path)


def table_lines() -> list[str]:
    header = "concentration_pct\tmu23_1e-32Cm\ttau2_us\ttau3_us\tomega_c\tmu21\tmu31"
    lines = [header]
    for row in TABLE_1:
        pair = DIPOLE_PAIRS.get(row.concentration)
        mu21, mu31 = (f"{v:.2f}" for v in pair) if pair else (f"{v:.2f}*" for v in DIPOLE_PAIRS[FALLBACK_DIPOLE_SOURCE])
        lines.append(
            f"{row.concentration:g}\t{row.mu23:.2f}\t{row.tau2:.2f}\t{row.tau3:.2f}\t{row.omega_c:.2f}\t{mu21}\t{mu31}"
        )
    lines.append("* no dipole pair for this row; values borrowed from the 33% row")
    return lines


def efficiency_report(config: RunConfig) -> list[str]:
    out = _outdir(config)
    vs_z, vs_delta = config.efficiency_sweeps()
    _write_sweep(sweeps.run_sweep(vs_z), vs_z, out / "efficiency_vs_z.csv")
    _write_sweep(sweeps.run_sweep(vs_delta), vs_delta, out / "efficiency_vs_detuning.csv")

    lines = []
    shared = config.shared_medium_overrides()
    optima = []
    for c in config.sweep.concentrations:
        medium = medium_for(c, **shared)
        best = sweeps.find_optimum(
            medium, "z_eff", (config.sweep.z_range.start, config.sweep.z_range.stop), delta_p=config.probe.delta_p
        )
        optima.append((c, best.axis_value, best.eta, best.boundary, medium.dipoles_borrowed))
        flag = " (boundary)" if best.boundary else ""
        lines.append(f"C={c:g}%: Z*={best.axis_value:.4f} eta*={best.eta:.6g}{flag}")
    write_csv(optima, ("concentration", "z_opt", "eta_opt", "boundary", "dipoles_borrowed"), out / "efficiency_optima.csv")

    medium, z = config.medium, config.z_eff
    probe = ProbeSpec(e_p=1.0, delta_p=config.probe.delta_p)
    eta = float(core.conversion_efficiency(medium, probe, z))
    general = float(core.efficiency_as_printed(medium, z, "general", delta_p=config.probe.delta_p))
    resonant = float(core.efficiency_as_printed(medium, z, "resonant")) if config.probe.delta_p == 0 else float("nan")
    write_csv(
        [(medium.label, z, eta, general, resonant)],
        ("concentration", "z_eff", "eta_closed_form", "eta_simplified_general", "eta_simplified_resonant"),
        out / "efficiency_simplified_audit.csv",
    )
    lines.append(
        f"audit C={medium.label:g}% Z={z:g}: closed form {eta:.6g}, simplified general {general:.6g}, "
        f"simplified resonant {resonant:.6g} (simplified forms are diagnostic only)"
    )
    return lines


def spectra_report(config: RunConfig) -> list[str]:
    out = _outdir(config)
    spec = config.spectra_sweep()
    _write_sweep(sweeps.run_sweep(spec), spec, out / "spectra.csv")

    shared = config.shared_medium_overrides()
    regimes = []
    lines = []
    for beam in ("probe", "signal"):
        for c in spec.concentrations:
            r = sweeps.classify_dispersion(c, beam, spec.z_eff, spec.omega_p0, **shared)
            regimes.append((r.concentration, r.beam, r.classification, r.slope, r.threshold))
            lines.append(f"{beam} C={c:g}%: slope={r.slope:.6g} -> {r.classification}")
    write_csv(regimes, ("concentration", "beam", "classification", "slope", "threshold"), out / "dispersion_regimes.csv")

    delta = spec.axis_values
    for c in spec.concentrations:
        medium = medium_for(c, **shared)
        fwd = sweeps.efficiency_curve(medium, "delta_p", delta, z_eff=spec.z_eff)
        rev = sweeps.efficiency_curve(medium, "delta_p", -delta, z_eff=spec.z_eff)
        asym = float(np.max(np.abs(fwd - rev)) / max(float(np.max(fwd)), 1e-300))
        lines.append(f"eta(dp) asymmetry C={c:g}%: {asym:.3e}")
    return lines


MAP_RASTERS: dict[str, list[tuple[str, str, HeatmapStyle]]] = {
    "signal_amplitude": [("intensity", "signal_intensity", GRAY_INTENSITY), ("phase", "signal_phase", GRAY_PHASE)],
    "probe_amplitude": [("intensity", "probe_intensity", GRAY_INTENSITY), ("phase", "probe_phase", GRAY_PHASE)],
    "rho21": [("imag", "probe_absorption", SIGNED), ("real", "probe_dispersion", SIGNED)],
    "rho31": [("imag", "signal_absorption", SIGNED), ("real", "signal_dispersion", SIGNED)],
}


def fieldmap_report(config: RunConfig) -> list[str]:
    out = _outdir(config)
    fmt = config.output.format
    lines = []
    summary = []
    for observable in maps.OBSERVABLES:
        fmap = maps.compute_field_map(config.medium, config.probe, config.z_eff, config.grid, observable)
        if fmt in ("csv", "both"):
            write_field_map_csv(fmap, out / f"map_{observable}.csv")
        for quantity, stem, style in MAP_RASTERS[observable]:
            if fmt in ("pgm", "both"):
                render_heatmap(fmap, style, out / f"{stem}.{style.format}", quantity)
            if config.output.png:
                png = HeatmapStyle(style.colormap, style.normalization, "png")
                render_heatmap(fmap, png, out / f"{stem}.png", quantity)
        if observable == "signal_amplitude":
            radius = min(1.0, 0.9 * config.grid.half_extent)
            try:
                winding = maps.winding_number(fmap, radius)
            except maps.SingularCircleError:
                winding = None
            ring = maps.ring_radius(fmap)
            summary.append(("winding_number", winding if winding is not None else float("nan")))
            summary.append(("ring_radius_over_w", ring))
            lines.append(f"signal winding number at r/w={radius:g}: {winding}; ring radius {ring:.4f} w")
        if observable in ("rho21", "rho31"):
            stats = maps.absorption_map_stats(fmap)
            summary.extend(
                [
                    (f"{observable}_im_min", stats.im_min),
                    (f"{observable}_im_max", stats.im_max),
                    (f"{observable}_axis_sign_changes", stats.axis_sign_changes),
                    (f"{observable}_azimuthal_sign_changes", stats.azimuthal_sign_changes),
                ]
            )
    write_csv(summary, ("quantity", "value"), out / "fieldmap_summary.csv")
    dump_config(config, out / "effective_config.json")
    return lines
