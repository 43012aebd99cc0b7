"""Transverse field maps and vortex diagnostics.

Each transverse point propagates independently (no diffraction), so a map
is the entrance-face Laguerre-Gaussian profile multiplied by a single
complex transfer factor per observable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np
from scipy.interpolate import RegularGridInterpolator

from . import core
from .params import MediumConfig, ProbeSpec

Observable = Literal["signal_amplitude", "probe_amplitude", "rho21", "rho31"]
OBSERVABLES: tuple[str, ...] = ("signal_amplitude", "probe_amplitude", "rho21", "rho31")

WINDING_SAMPLES = 256


class SingularCircleError(ValueError):
    """The sampling circle passes through (or too near) a field zero."""


@dataclass(frozen=True)
class GridSpec:
    nx: int = 201
    ny: int = 201
    half_extent: float = 3.0

    def __post_init__(self) -> None:
        for name in ("nx", "ny"):
            value = getattr(self, name)
            if isinstance(value, bool) or int(value) != value or value < 16:
                raise ValueError(f"grid.{name} must be an integer >= 16, got {value!r}")
        if not (np.isfinite(self.half_extent) and self.half_extent > 0):
            raise ValueError(f"grid.half_extent must be > 0, got {self.half_extent!r}")

    @property
    def x(self) -> np.ndarray:
        return np.linspace(-self.half_extent, self.half_extent, self.nx)

    @property
    def y(self) -> np.ndarray:
        return np.linspace(-self.half_extent, self.half_extent, self.ny)

    @property
    def spacing(self) -> float:
        """Largest grid step, in units of the waist."""
        return 2 * self.half_extent / (min(self.nx, self.ny) - 1)

    def mesh(self) -> tuple[np.ndarray, np.ndarray]:
        """(X, Y) arrays of shape (ny, nx); row index follows y."""
        return np.meshgrid(self.x, self.y, indexing="xy")


@dataclass(frozen=True)
class FieldMap:
    """Complex samples of one observable, shape (ny, nx), rows ascending in y.

    ``rho31`` maps hold the signal coherence in the signal frame
    (``core.SIGNAL_FRAME * rho31``), so Im is absorption for both beams.
    """

    grid: GridSpec
    values: np.ndarray
    observable: str
    ell: int = 0

    def __post_init__(self) -> None:
        if self.values.shape != (self.grid.ny, self.grid.nx):
            raise ValueError("map shape does not match its grid")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("field map contains non-finite samples")

    @property
    def intensity(self) -> np.ndarray:
        return np.abs(self.values) ** 2

    @property
    def phase(self) -> np.ndarray:
        # Exact zeros (the vortex core) report phase 0.
        return np.where(self.values == 0, 0.0, np.angle(self.values))


def compute_field_map(
    medium: MediumConfig,
    probe: ProbeSpec,
    z_eff: float,
    grid: GridSpec,
    observable: Observable,
) -> FieldMap:
    if observable not in OBSERVABLES:
        raise ValueError(f"unknown observable {observable!r}; expected one of {OBSERVABLES}")
    X, Y = grid.mesh()
    omega_p0 = core.lg_profile(probe, X, Y)
    coeffs, kernel = core.kernel_for(medium, probe.delta_p)
    if observable in ("signal_amplitude", "probe_amplitude"):
        fields = core.propagate(kernel, omega_p0, z_eff)
        values = fields.omega_s if observable == "signal_amplitude" else fields.omega_p
    else:
        rho21, rho31 = core.coherences_along_z(kernel, coeffs, omega_p0, z_eff)
        values = rho21 if observable == "rho21" else core.SIGNAL_FRAME * rho31
    return FieldMap(grid, np.asarray(values, dtype=complex), observable, probe.ell)


def sample_on_circle(fmap: FieldMap, radius_over_w: float, samples: int = WINDING_SAMPLES) -> np.ndarray:
    """Bilinearly interpolated complex samples on a circle about the axis."""
    grid = fmap.grid
    if not (0 < radius_over_w < grid.half_extent):
        raise ValueError(f"radius {radius_over_w!r} must lie inside the grid extent")
    phi = 2 * np.pi * np.arange(samples) / samples
    pts = np.column_stack([radius_over_w * np.sin(phi), radius_over_w * np.cos(phi)])
    # Interpolator axes are (y, x) to match the row-major layout.
    interp_re = RegularGridInterpolator((grid.y, grid.x), fmap.values.real)
    interp_im = RegularGridInterpolator((grid.y, grid.x), fmap.values.imag)
    return interp_re(pts) + 1j * interp_im(pts)


def winding_number(fmap: FieldMap, radius_over_w: float, samples: int = WINDING_SAMPLES) -> int:
    """Net number of 2*pi phase windings counter-clockwise around the axis."""
    ring = sample_on_circle(fmap, radius_over_w, max(samples, 64))
    if np.min(np.abs(ring)) <= 1e-12:
        raise SingularCircleError(
            f"field vanishes on the circle r/w={radius_over_w}; choose a different radius"
        )
    steps = np.angle(np.roll(ring, -1) / ring)
    return int(round(float(np.sum(steps)) / (2 * np.pi)))


def ring_radius(fmap: FieldMap) -> float:
    """Distance from the axis of the brightest sample, in waists."""
    X, Y = fmap.grid.mesh()
    iy, ix = np.unravel_index(np.argmax(fmap.intensity), fmap.values.shape)
    return float(np.hypot(X[iy, ix], Y[iy, ix]))


def _sign_changes(values: np.ndarray, floor: float) -> int:
    signs = np.sign(values[np.abs(values) > floor])
    return int(np.count_nonzero(signs[1:] != signs[:-1]))


@dataclass(frozen=True)
class AbsorptionStats:
    im_min: float
    im_max: float
    center_value: float
    argmax_radius: float
    axis_sign_changes: int
    azimuthal_sign_changes: int


def absorption_map_stats(fmap: FieldMap, ring_over_w: float | None = None) -> AbsorptionStats:
    """Summarize the gain/loss structure of a coherence map.

    Sign changes are counted along the x-axis cut through the centre and
    around a circle at ``ring_over_w`` (default: the LG intensity peak
    radius sqrt(|l|/2), or 1 for l = 0). The azimuthal count is the one that
    grows with the topological charge (2|l| alternating lobes).
    """
    if fmap.observable not in ("rho21", "rho31"):
        raise ValueError("absorption statistics need a coherence map")
    grid = fmap.grid
    im = fmap.values.imag
    scale = float(np.max(np.abs(im))) if im.size else 0.0
    floor = 1e-9 * scale
    cy, cx = grid.ny // 2, grid.nx // 2
    X, Y = grid.mesh()
    iy, ix = np.unravel_index(np.argmax(im), im.shape)
    if ring_over_w is None:
        ring_over_w = np.sqrt(abs(fmap.ell) / 2) if fmap.ell else 1.0
    ring = sample_on_circle(fmap, ring_over_w).imag
    closed = np.append(ring, ring[0])
    return AbsorptionStats(
        im_min=float(im.min()),
        im_max=float(im.max()),
        center_value=float(im[cy, cx]),
        argmax_radius=float(np.hypot(X[iy, ix], Y[iy, ix])),
        axis_sign_changes=_sign_changes(im[cy, :], floor),
        azimuthal_sign_changes=_sign_changes(closed, floor),
    )
