"""Independent numerical references for the closed forms.

Two checks live here. A fixed-step RK4 integrator with step halving solves
the coupled propagation equations directly. A dense steady-state solver
handles the full three-level density-matrix equations with arbitrary probe,
signal and control fields. Neither uses the closed-form propagation or the
perturbative coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .params import DecayRates, MediumConfig

MAX_REFINEMENTS = 20


class OracleError(RuntimeError):
    """An oracle computation failed; carries diagnostics in its message."""


@dataclass(frozen=True)
class OdeTrajectory:
    z: np.ndarray
    omega_p: np.ndarray
    omega_s: np.ndarray
    steps_per_sample: int
    refinements: int
    last_change: float


def propagation_matrix(coeffs, medium: MediumConfig) -> np.ndarray:
    """Right-hand side matrix M of d/dZ (Op, Os) = M (Op, Os)."""
    return 1j * np.array(
        [
            [medium.beta21 * coeffs.a1, medium.beta21 * coeffs.b1],
            [medium.beta31 * coeffs.a2, medium.beta31 * coeffs.b2],
        ],
        dtype=complex,
    )


def _rk4_samples(M: np.ndarray, y0: np.ndarray, z: np.ndarray, substeps: int) -> np.ndarray:
    out = np.empty((len(z), 2), dtype=complex)
    out[0] = y0
    y = y0.copy()
    f = lambda v: M @ v  # noqa: E731
    for k in range(1, len(z)):
        h = (z[k] - z[k - 1]) / substeps
        for _ in range(substeps):
            k1 = f(y)
            k2 = f(y + 0.5 * h * k1)
            k3 = f(y + 0.5 * h * k2)
            k4 = f(y + h * k3)
            y = y + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        out[k] = y
    return out


def integrate_propagation(
    coeffs,
    medium: MediumConfig,
    omega_p0: complex,
    z_max: float,
    tol: float = 1e-12,
    samples: int = 201,
    max_refinements: int = MAX_REFINEMENTS,
) -> OdeTrajectory:
    """Integrate the propagation pair from (Omega_p(0), 0) out to ``z_max``.

    The number of RK4 substeps between output samples is doubled until two
    successive trajectories differ by less than ``tol`` (max-norm, scaled by
    ``max(1, |Omega_p(0)|)``).
    """
    if z_max < 0 or not np.isfinite(z_max):
        raise ValueError(f"z_max must be finite and >= 0, got {z_max!r}")
    if not (1e-14 < tol < 1e-4):
        raise ValueError(f"tol must lie in (1e-14, 1e-4), got {tol!r}")
    y0 = np.array([omega_p0, 0.0], dtype=complex)
    if z_max == 0:
        return OdeTrajectory(np.zeros(1), y0[:1].copy(), y0[1:].copy(), 0, 0, 0.0)

    M = propagation_matrix(coeffs, medium)
    z = np.linspace(0.0, z_max, max(samples, 2))
    scale = max(1.0, abs(omega_p0))
    substeps = 1
    previous = _rk4_samples(M, y0, z, substeps)
    change = np.inf
    for level in range(1, max_refinements + 1):
        substeps *= 2
        current = _rk4_samples(M, y0, z, substeps)
        change = float(np.max(np.abs(current - previous))) / scale
        if change < tol:
            return OdeTrajectory(z, current[:, 0], current[:, 1], substeps, level, change)
        previous = current
    raise OracleError(
        f"RK4 did not converge to tol={tol:g} after {max_refinements} halvings "
        f"(last change {change:.3e}, substeps per sample {substeps})"
    )


@dataclass(frozen=True)
class LiouvillianSystem:
    """Linear steady-state problem ``matrix @ vec(delta) = rhs``.

    ``delta`` is the deviation of the density matrix from the ground state,
    flattened row-major; one population row is replaced by the trace
    constraint sum(delta_ii) = 0.
    """

    matrix: np.ndarray
    rhs: np.ndarray


def hamiltonian(omega_p: complex, omega_s: complex, omega_c: complex, delta_p: float) -> np.ndarray:
    """Interaction-picture Hamiltonian (hbar = 1) in the basis |1>, |2>, |3>."""
    H = np.zeros((3, 3), dtype=complex)
    H[1, 1] = delta_p
    H[2, 2] = delta_p
    H[1, 0] = -omega_p / 2
    H[2, 0] = -omega_s / 2
    H[2, 1] = -omega_c / 2
    return H + np.triu(H.conj().T, 1)


def coherence_damping(rates: DecayRates) -> dict[tuple[int, int], float]:
    """Damping of each coherence, never below its Lindblad decay floor.

    Population decay out of levels i and j damps rho_ij by at least
    (d_i + d_j) / 2; a smaller rate would let populations go negative.
    For rates built with ``DecayRates.from_microscopic`` the rho21 and rho31
    values sit exactly on their floors and only rho32 is raised.
    """
    d2, d3 = rates.level2_decay, rates.level3_decay
    return {
        (1, 0): max(rates.gamma21, d2 / 2),
        (2, 0): max(rates.gamma31, d3 / 2),
        (2, 1): max(rates.gamma32, (d2 + d3) / 2),
    }


def liouvillian(H: np.ndarray, rates: DecayRates) -> np.ndarray:
    """Superoperator acting on row-major vec(rho)."""
    eye = np.eye(3)
    L = -1j * (np.kron(H, eye) - np.kron(eye, H.T))

    def idx(i, j):
        return 3 * i + j

    for (i, j), g in coherence_damping(rates).items():
        L[idx(i, j), idx(i, j)] -= g
        L[idx(j, i), idx(j, i)] -= g
    # |3> -> |2> -> |1> cascade; direct |3> -> |1> decay neglected.
    d2, d3 = rates.level2_decay, rates.level3_decay
    L[idx(1, 1), idx(1, 1)] -= d2
    L[idx(0, 0), idx(1, 1)] += d2
    L[idx(2, 2), idx(2, 2)] -= d3
    L[idx(1, 1), idx(2, 2)] += d3
    return L


def build_system(
    rates: DecayRates, omega_c: complex, omega_p: complex, omega_s: complex, delta_p: float
) -> LiouvillianSystem:
    L = liouvillian(hamiltonian(omega_p, omega_s, omega_c, delta_p), rates)
    ground = np.zeros(9, dtype=complex)
    ground[0] = 1.0
    matrix = L.copy()
    rhs = -L @ ground
    matrix[0, :] = 0.0
    matrix[0, [0, 4, 8]] = 1.0
    rhs[0] = 0.0
    return LiouvillianSystem(matrix, rhs)


def steady_state_rho(
    rates: DecayRates,
    omega_c: complex,
    omega_p: complex,
    omega_s: complex,
    delta_p: float,
) -> np.ndarray:
    """Steady-state 3x3 density matrix for fixed driving fields.

    Solved for the deviation from the ground state so that weak-field
    coherences keep their full relative precision.
    """
    system = build_system(rates, omega_c, omega_p, omega_s, delta_p)
    try:
        delta = np.linalg.solve(system.matrix, system.rhs)
    except np.linalg.LinAlgError as exc:
        raise OracleError(f"singular steady-state system: {exc}") from exc
    if not np.all(np.isfinite(delta)):
        raise OracleError("steady-state solve produced non-finite values")
    rho = delta.reshape(3, 3)
    rho[0, 0] += 1.0
    return rho


def first_order_from_solver(
    rates: DecayRates, omega_c: complex, delta_p: float, omega_p: float, omega_s: complex = 0.0
) -> tuple[complex, complex]:
    """(rho21, rho31) of the full solver, for comparing against perturbation theory."""
    rho = steady_state_rho(rates, omega_c, omega_p, omega_s, delta_p)
    return rho[1, 0], rho[2, 0]
