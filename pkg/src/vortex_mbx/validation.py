"""Oracle battery behind the ``validate`` subcommand."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import core, oracle
from .params import CONCENTRATIONS, DecayRates, MediumConfig, medium_for

DETUNINGS = (0.0, 1.0, -1.0, 3.0, -3.0)
PERTURBATIVE_PROBES = (1e-2, 5e-3, 2.5e-3)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    value: float
    limit: float
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.name}: {self.value:.3e} (limit {self.limit:.1e}) {self.detail}".rstrip()


def trajectory_deviation(medium: MediumConfig, delta_p: float, omega_p0: complex = 5.0, z_max: float = 20.0) -> float:
    """Max over the Z grid of |closed form - RK4| / |closed form| (max-norm over the pair)."""
    coeffs, kernel = core.kernel_for(medium, delta_p)
    traj = oracle.integrate_propagation(coeffs, medium, omega_p0, z_max, tol=1e-13)
    closed = core.propagate(kernel, omega_p0, traj.z)
    diff = np.maximum(np.abs(closed.omega_p - traj.omega_p), np.abs(closed.omega_s - traj.omega_s))
    scale = np.maximum(np.abs(closed.omega_p), np.abs(closed.omega_s))
    return float(np.max(diff / scale))


def perturbative_ratios(rates: DecayRates, omega_c: float, delta_p: float) -> np.ndarray:
    """Successive ratios of |rho21/Op - a1| as the probe is halved."""
    a1 = core.coherence_coefficients(delta_p, rates, omega_c).a1
    errs = []
    for op in PERTURBATIVE_PROBES:
        rho21, _ = oracle.first_order_from_solver(rates, omega_c, delta_p, op)
        errs.append(abs(rho21 / op - a1))
    errs = np.array(errs)
    return errs[1:] / errs[:-1]


def random_draw(rng: np.random.Generator) -> tuple[DecayRates, float, float]:
    """Physically plausible normalized parameters: rates, control Rabi, detuning."""
    g21 = rng.uniform(0.5, 5.0)
    g31 = rng.uniform(0.5, 3.0)
    rates = DecayRates.from_microscopic(Gamma21=g21, Gamma32=g31, gamma2=g21, gamma3=g31)
    return rates, rng.uniform(1.0, 30.0), rng.uniform(-5.0, 5.0)


def check_ode(detunings=DETUNINGS) -> CheckResult:
    worst, where = 0.0, ""
    for c in CONCENTRATIONS:
        medium = medium_for(c)
        for d in detunings:
            dev = trajectory_deviation(medium, d)
            if dev > worst:
                worst, where = dev, f"(C={c:g}%, dp={d:g})"
    return CheckResult("closed form vs RK4", worst < 1e-9, worst, 1e-9, where)


def check_perturbative(draws: int = 20, seed: int = 7) -> CheckResult:
    rng = np.random.default_rng(seed)
    ratios = np.concatenate([perturbative_ratios(*random_draw(rng)) for _ in range(draws)])
    ok = bool(np.all((ratios >= 0.2) & (ratios <= 0.3)))
    off = float(np.max(np.abs(ratios - 0.25)))
    return CheckResult(
        "perturbative vs steady state (quadratic error)", ok, off, 0.05,
        f"ratios in [{ratios.min():.4f}, {ratios.max():.4f}]",
    )


def check_density_matrix(draws: int = 200, seed: int = 11) -> CheckResult:
    rng = np.random.default_rng(seed)
    worst = 0.0
    positive = True
    for _ in range(draws):
        rates, oc, d = random_draw(rng)
        op = rng.uniform(0.0, 0.1) * np.exp(1j * rng.uniform(0, 2 * np.pi))
        os_ = rng.uniform(0.0, 0.1) * np.exp(1j * rng.uniform(0, 2 * np.pi))
        rho = oracle.steady_state_rho(rates, oc, op, os_, d)
        worst = max(worst, abs(np.trace(rho) - 1), float(np.max(np.abs(rho - rho.conj().T))))
        pops = np.diag(rho)
        positive &= bool(np.all(np.abs(pops.imag) < 1e-12) and np.all(pops.real > -1e-9) and np.all(pops.real < 1 + 1e-9))
    return CheckResult("trace / Hermiticity / populations", worst < 1e-12 and positive, worst, 1e-12,
                       "" if positive else "population outside [0, 1]")


def check_branch(draws: int = 200, seed: int = 3) -> CheckResult:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(draws):
        rates, oc, d = random_draw(rng)
        medium = medium_for(3.0, omega_c=oc, decay=rates)
        _, kernel = core.kernel_for(medium, d)
        z = rng.uniform(0, 20)
        a = core.propagate(kernel, 1.0, z)
        b = core.propagate(kernel.flipped(), 1.0, z)
        scale = max(abs(a.omega_p), abs(a.omega_s))
        worst = max(worst, abs(a.omega_p - b.omega_p) / scale, abs(a.omega_s - b.omega_s) / scale)
    return CheckResult("branch invariance A -> -A", worst < 1e-12, worst, 1e-12)


def check_resonance_null(z_values=(0.0, 4.0, 8.5, 16.0)) -> CheckResult:
    worst = 0.0
    for c in CONCENTRATIONS:
        coeffs, kernel = core.kernel_for(medium_for(c), 0.0)
        rho21, rho31 = core.coherences_along_z(kernel, coeffs, 0.1, np.array(z_values))
        obs = core.observables(rho21, rho31)
        worst = max(worst, float(np.max(np.abs(obs.probe_dispersion))), float(np.max(np.abs(obs.signal_dispersion))))
    return CheckResult("dispersion null at resonance", worst < 1e-12, worst, 1e-12)


def check_xi_nonzero() -> CheckResult:
    delta = np.linspace(-50, 50, 100001)
    smallest = min(float(np.min(np.abs(core.xi(delta, m.decay, m.omega_c)))) for m in map(medium_for, CONCENTRATIONS))
    return CheckResult("xi bounded away from zero", smallest > 0, smallest, 0.0)


def run_all() -> list[CheckResult]:
    return [
        check_ode(),
        check_perturbative(),
        check_density_matrix(),
        check_branch(),
        check_resonance_null(),
        check_xi_nonzero(),
    ]
