"""Closed-form weak-probe physics of the ladder system.

Every function here is pure and accepts numpy arrays wherever a scalar
detuning, distance or input amplitude is expected, broadcasting in the
usual way.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Literal

import numpy as np

from .params import DecayRates, MediumConfig, ProbeSpec

# |A| below this switches sinh(AZ/2)/A to its Taylor series.
DEGENERATE_EPS = 1e-8

# The generated signal is phase-shifted by pi/2 relative to its probe source
# (A2 = i*beta31*a2). Signal absorption/dispersion are read off rho31 in the
# signal's own frame, i.e. from SIGNAL_FRAME * rho31.
SIGNAL_FRAME = 1j


@dataclass(frozen=True)
class CoherenceCoefficients:
    """First-order response: rho21 = a1*Op + b1*Os, rho31 = a2*Op + b2*Os."""

    xi: complex
    a1: complex
    b1: complex
    a2: complex
    b2: complex


@dataclass(frozen=True)
class PropagationKernel:
    """Constant coefficients of the coupled propagation equations.

    ``A`` is the principal square root of ``(A1 - B2)**2 + 4*A2*B1``.
    """

    A1: complex
    B1: complex
    A2: complex
    B2: complex
    A: complex
    degenerate: bool = False

    def flipped(self) -> "PropagationKernel":
        """Same kernel on the other square-root branch."""
        return replace(self, A=-self.A)


@dataclass(frozen=True)
class FieldPair:
    omega_p: complex
    omega_s: complex
    z_eff: float


def xi(delta_p, rates: DecayRates, omega_c: complex):
    """Common denominator (i*dp + g21)(i*dp + g31) + |Oc|^2/4."""
    delta_p = np.asarray(delta_p, dtype=float)
    value = (1j * delta_p + rates.gamma21) * (1j * delta_p + rates.gamma31) + abs(omega_c) ** 2 / 4
    return value[()] if value.ndim == 0 else value


def coherence_coefficients(delta_p, rates: DecayRates, omega_c: complex) -> CoherenceCoefficients:
    x = xi(delta_p, rates, omega_c)
    delta_p = np.asarray(delta_p, dtype=float)[()]
    return CoherenceCoefficients(
        xi=x,
        a1=1j * (rates.gamma31 + 1j * delta_p) / (2 * x),
        b1=-np.conj(omega_c) / (4 * x),
        a2=-omega_c / (4 * x),
        b2=1j * (rates.gamma21 + 1j * delta_p) / (2 * x),
    )


def propagation_kernel(coeffs: CoherenceCoefficients, medium: MediumConfig) -> PropagationKernel:
    A1 = 1j * medium.beta21 * coeffs.a1
    B1 = 1j * medium.beta21 * coeffs.b1
    A2 = 1j * medium.beta31 * coeffs.a2
    B2 = 1j * medium.beta31 * coeffs.b2
    A = np.sqrt((A1 - B2) ** 2 + 4 * A2 * B1)
    degenerate = bool(np.any(np.abs(A) < DEGENERATE_EPS))
    return PropagationKernel(A1, B1, A2, B2, A, degenerate)


def kernel_for(medium: MediumConfig, delta_p) -> tuple[CoherenceCoefficients, PropagationKernel]:
    """Coefficients and kernel for a medium at the given probe detuning."""
    coeffs = coherence_coefficients(delta_p, medium.decay, medium.omega_c)
    return coeffs, propagation_kernel(coeffs, medium)


def sinhc_half(A, z, eps: float = DEGENERATE_EPS):
    """sinh(A z / 2) / A, continuous through A = 0.

    Even in A, so the result does not depend on the square-root branch.
    """
    A = np.asarray(A, dtype=complex)
    z = np.asarray(z, dtype=float)
    A, z = np.broadcast_arrays(A, z)
    small = np.abs(A) < eps
    safe_A = np.where(small, 1.0, A)
    general = np.sinh(safe_A * z / 2) / safe_A
    a2z2 = (A * z) ** 2
    series = (z / 2) * (1 + a2z2 / 24 + a2z2**2 / 1920)
    out = np.where(small, series, general)
    return out[()] if out.ndim == 0 else out


def _check_distance(z_eff) -> np.ndarray:
    z = np.asarray(z_eff, dtype=float)
    if np.any(~np.isfinite(z)) or np.any(z < 0):
        raise ValueError(f"effective distance must be finite and >= 0, got {z_eff!r}")
    return z


def transfer_factors(kernel: PropagationKernel, z_eff, eps: float = DEGENERATE_EPS):
    """Return (probe, signal) transfer factors T with Omega(Z) = T * Omega_p(0).

    The signal factor carries 2*A2/A, which is what the exact solution of the
    coupled linear system gives for Omega_s(0) = 0.
    """
    z = _check_distance(z_eff)
    envelope = np.exp((kernel.A1 + kernel.B2) * z / 2)
    s = sinhc_half(kernel.A, z, eps)
    # cosh(x) + D sinh(x)/A rewritten as e^x - [(A - D)/A] sinh(x), with the
    # branch of A picked along D so (A - D) = 4 A2 B1 / (A + D) is computed
    # without cancellation. Exact when the control field is off.
    D = kernel.A1 - kernel.B2
    A = np.where((np.conj(D) * kernel.A).real >= 0, kernel.A, -kernel.A)
    denom = A + D
    # A + D = 0 only when A = D = 0, which forces A2 B1 = 0 as well.
    ratio = np.where(denom == 0, 0.0, 4 * kernel.A2 * kernel.B1 / np.where(denom == 0, 1.0, denom))
    t_probe = np.exp((kernel.A1 + kernel.B2 + A) * z / 2) - ratio * envelope * s
    t_signal = envelope * 2 * kernel.A2 * s
    return t_probe, t_signal


def propagate(kernel: PropagationKernel, omega_p0, z_eff, eps: float = DEGENERATE_EPS) -> FieldPair:
    """Probe and generated-signal amplitudes after an effective distance."""
    t_probe, t_signal = transfer_factors(kernel, z_eff, eps)
    omega_p0 = np.asarray(omega_p0, dtype=complex)[()]
    return FieldPair(omega_p=t_probe * omega_p0, omega_s=t_signal * omega_p0, z_eff=z_eff)


def lg_profile(probe: ProbeSpec, x_over_w, y_over_w):
    """Entrance-face Laguerre-Gaussian amplitude E_p (r/w)^|l| exp(-r^2/w^2) exp(i l phi)."""
    x = np.asarray(x_over_w, dtype=float)
    y = np.asarray(y_over_w, dtype=float)
    r = np.hypot(x, y)
    ell = probe.ell
    radial = probe.e_p * np.exp(-(r**2))
    if ell != 0:
        radial = radial * r ** abs(ell)
    phase = np.exp(1j * ell * np.arctan2(y, x))
    out = radial * phase
    if ell != 0:
        out = np.where(r == 0.0, 0.0 + 0.0j, out)
    out = np.asarray(out, dtype=complex)
    return out[()] if out.ndim == 0 else out


def coherences_along_z(kernel: PropagationKernel, coeffs: CoherenceCoefficients, omega_p0, z_eff):
    """First-order (rho21, rho31) with the propagated fields substituted in."""
    fields = propagate(kernel, omega_p0, z_eff)
    rho21 = coeffs.a1 * fields.omega_p + coeffs.b1 * fields.omega_s
    rho31 = coeffs.a2 * fields.omega_p + coeffs.b2 * fields.omega_s
    return rho21, rho31


@dataclass(frozen=True)
class Observables:
    """Absorption (Im) and dispersion (Re) of probe and signal."""

    probe_absorption: object
    probe_dispersion: object
    signal_absorption: object
    signal_dispersion: object


def observables(rho21, rho31) -> Observables:
    signal = SIGNAL_FRAME * np.asarray(rho31)
    return Observables(
        probe_absorption=np.imag(rho21)[()],
        probe_dispersion=np.real(rho21)[()],
        signal_absorption=np.imag(signal)[()],
        signal_dispersion=np.real(signal)[()],
    )


def conversion_efficiency(medium: MediumConfig, probe: ProbeSpec, z_eff):
    """|mu21 Omega_s(Z) / (mu31 Omega_p(0))|^2 from the closed-form signal."""
    if probe.e_p == 0:
        raise ValueError("conversion efficiency is undefined for a zero input probe")
    _, kernel = kernel_for(medium, probe.delta_p)
    _, t_signal = transfer_factors(kernel, z_eff)
    # Omega_s / Omega_p(0) is the transfer factor at any transverse point.
    return (medium.dipole_ratio**2 * np.abs(t_signal) ** 2)[()]


def efficiency_as_printed(
    medium: MediumConfig,
    z_eff,
    variant: Literal["general", "resonant"],
    delta_p: float = 0.0,
):
    """Literal evaluation of the two simplified efficiency expressions.

    ``general`` is the detuning-dependent form; ``resonant`` assumes
    gamma21/gamma31 = beta21/beta31 = 3 and zero detuning.

    Kept for side-by-side diagnostics only: neither expression agrees with
    :func:`conversion_efficiency`. Returns the real part of the complex
    expression exactly as written, which can be negative.
    """
    z = _check_distance(z_eff)
    rates = medium.decay
    mu = (medium.mu21 / medium.mu31) ** 2
    oc2 = abs(medium.omega_c) ** 2
    if variant == "general":
        coeffs, kernel = kernel_for(medium, delta_p)
        num = medium.beta31**2 * oc2 * mu**2 * np.sinh(kernel.A * z / 2) ** 2
        den = (
            4 * (medium.beta21 * (rates.gamma31 + 1j * delta_p) + medium.beta31 * (rates.gamma21 + 1j * delta_p)) ** 2
            - 12 * medium.beta31**2 * oc2
        )
        growth = (kernel.A1 + kernel.B2) * z + np.conj(kernel.A1 + kernel.B2) * z
        value = num / den * np.exp(growth)
    elif variant == "resonant":
        if delta_p != 0:
            raise ValueError("the resonant form is only defined at zero detuning")
        arg = 1j * medium.beta21 * medium.omega_c * z / (8 * rates.gamma21**2 + 6 * oc2)
        value = 3 * mu**2 * np.sinh(arg) ** 2 * np.exp(-2 * medium.beta21 * rates.gamma21 * z / 3)
    else:
        raise ValueError(f"unknown variant {variant!r}; expected 'general' or 'resonant'")
    return np.real(value)[()]
