import numpy as np
import pytest

from vortex_mbx import core, oracle
from vortex_mbx.params import DecayRates, medium_for
from vortex_mbx.validation import perturbative_ratios, random_draw


class TestIntegrator:
    def test_zero_length(self, medium3):
        coeffs, _ = core.kernel_for(medium3, 0.0)
        traj = oracle.integrate_propagation(coeffs, medium3, 5.0, 0.0)
        assert traj.z.tolist() == [0.0]
        assert traj.omega_p[0] == 5.0 and traj.omega_s[0] == 0.0

    def test_first_sample_is_boundary(self, medium3):
        coeffs, _ = core.kernel_for(medium3, 1.0)
        traj = oracle.integrate_propagation(coeffs, medium3, 2.0 - 1j, 5.0)
        assert traj.omega_p[0] == 2.0 - 1j and traj.omega_s[0] == 0.0

    def test_decoupled_without_control(self):
        m = medium_for(3)
        coeffs = core.coherence_coefficients(0.0, m.decay, 0.0)
        traj = oracle.integrate_propagation(coeffs, m, 1.0, 2.0)
        assert np.all(traj.omega_s == 0)
        k = core.propagation_kernel(coeffs, m)
        assert traj.omega_p[-1] == pytest.approx(np.exp(2 * k.A1), rel=1e-10)

    def test_long_distance_agreement(self, medium):
        coeffs, k = core.kernel_for(medium, 0.0)
        traj = oracle.integrate_propagation(coeffs, medium, 5.0, 20.0, tol=1e-13)
        closed = core.propagate(k, 5.0, traj.z)
        assert np.allclose(traj.omega_p, closed.omega_p, rtol=1e-9, atol=0)
        assert np.max(np.abs(traj.omega_s - closed.omega_s)) < 1e-9 * np.max(np.abs(closed.omega_p))

    def test_non_convergence_is_explicit(self, medium3):
        coeffs, _ = core.kernel_for(medium3, 0.0)
        with pytest.raises(oracle.OracleError, match="did not converge"):
            oracle.integrate_propagation(coeffs, medium3, 1.0, 20.0, tol=1e-13, max_refinements=1)

    @pytest.mark.parametrize("tol", [0.0, 1e-15, 1e-3])
    def test_tolerance_range(self, medium3, tol):
        coeffs, _ = core.kernel_for(medium3, 0.0)
        with pytest.raises(ValueError):
            oracle.integrate_propagation(coeffs, medium3, 1.0, 1.0, tol=tol)


class TestSteadyState:
    def test_ground_state_without_weak_fields(self):
        rho = oracle.steady_state_rho(DecayRates(), 27.6, 0.0, 0.0, 0.7)
        expected = np.zeros((3, 3))
        expected[0, 0] = 1.0
        assert np.array_equal(rho, expected)

    def test_weak_probe_matches_first_order(self, medium3):
        a1 = core.coherence_coefficients(0.0, medium3.decay, medium3.omega_c).a1
        errs = []
        for op in (1e-3, 5e-4):
            rho21, _ = oracle.first_order_from_solver(medium3.decay, medium3.omega_c, 0.0, op)
            errs.append(abs(rho21 / op - a1))
        assert errs[0] < 1e-6 * abs(a1)
        assert 0.2 <= errs[1] / errs[0] <= 0.3

    def test_signal_feedback_matches_first_order(self):
        rates, oc, d = DecayRates(), 17.85, -0.6
        c = core.coherence_coefficients(d, rates, oc)
        op, os_ = 1e-4, 2e-4j
        rho = oracle.steady_state_rho(rates, oc, op, os_, d)
        assert rho[1, 0] == pytest.approx(c.a1 * op + c.b1 * os_, rel=1e-6)
        assert rho[2, 0] == pytest.approx(c.a2 * op + c.b2 * os_, rel=1e-6)

    def test_structure(self, rng):
        for _ in range(50):
            rates, oc, d = random_draw(rng)
            op = rng.uniform(0, 0.1) * np.exp(1j * rng.uniform(0, 6.3))
            os_ = rng.uniform(0, 0.1) * np.exp(1j * rng.uniform(0, 6.3))
            rho = oracle.steady_state_rho(rates, oc, op, os_, d)
            assert abs(np.trace(rho) - 1) < 1e-12
            assert np.max(np.abs(rho - rho.conj().T)) < 1e-12
            pops = np.diag(rho)
            assert np.all(np.abs(pops.imag) < 1e-12)
            assert np.all(pops.real > -1e-9) and np.all(pops.real < 1 + 1e-9)

    def test_coherence_damping_floor(self):
        rates = DecayRates()
        damping = oracle.coherence_damping(rates)
        assert damping[(1, 0)] == rates.gamma21
        assert damping[(2, 0)] == rates.gamma31
        assert damping[(2, 1)] == (rates.level2_decay + rates.level3_decay) / 2

    def test_hamiltonian_is_hermitian(self):
        H = oracle.hamiltonian(0.3 + 0.1j, -0.2j, 27.6, 1.5)
        assert np.allclose(H, H.conj().T)
        assert H[1, 0] == -(0.3 + 0.1j) / 2 and H[2, 1] == -27.6 / 2

    def test_quadratic_convergence_random(self, rng):
        for _ in range(10):
            ratios = perturbative_ratios(*random_draw(rng))
            assert np.all((ratios >= 0.2) & (ratios <= 0.3))
