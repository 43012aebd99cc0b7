import numpy as np
import pytest

from vortex_mbx import sweeps
from vortex_mbx.params import CONCENTRATIONS, ParameterError, medium_for


def spec(axis="z_eff", start=0.0, stop=20.0, samples=201, **kw):
    return sweeps.SweepSpec(axis, start, stop, samples, **kw)


class TestSweepSpec:
    @pytest.mark.parametrize(
        "kwargs",
        [dict(samples=1), dict(start=5.0, stop=5.0), dict(axis="omega"), dict(start=-1.0), dict(concentrations=(7,))],
    )
    def test_invalid(self, kwargs):
        with pytest.raises(ParameterError):
            spec(**kwargs)

    def test_two_samples_hit_endpoints(self):
        rows = sweeps.run_sweep(spec(samples=2, start=1.0, stop=3.0))
        assert [r.axis_value for r in rows] == [1.0, 3.0]


class TestRunSweep:
    def test_efficiency_rise_and_fall(self):
        rows = sweeps.run_sweep(spec(concentrations=(3,), samples=2001))
        eta = np.array([r.values[3.0]["eta"] for r in rows])
        assert eta[0] == 0.0
        i = int(np.argmax(eta))
        assert 0 < i < len(eta) - 1
        assert np.all(np.diff(eta[: i + 1]) > 0)
        z = np.array([r.axis_value for r in rows])
        falling = eta[i : np.searchsorted(z, 12.0)]
        assert np.all(np.diff(falling) < 0)

    def test_detuning_peaks_near_resonance(self):
        rows = sweeps.run_sweep(spec("delta_p", -10, 10, 2001, z_eff=8.5))
        axis = np.array([r.axis_value for r in rows])
        for c in CONCENTRATIONS:
            eta = np.array([r.values[c]["eta"] for r in rows])
            assert abs(axis[np.argmax(eta)]) < 0.5

    def test_ascending_and_deterministic(self):
        s = spec("delta_p", -4, 4, 51, omega_p0=0.1)
        a, b = sweeps.run_sweep(s), sweeps.run_sweep(s)
        assert [r.flat(s.concentrations) for r in a] == [r.flat(s.concentrations) for r in b]
        axis = [r.axis_value for r in a]
        assert axis == sorted(axis)

    def test_threaded_matches_serial(self, monkeypatch):
        s = spec("delta_p", -4, 4, 41, omega_p0=0.1)
        serial = [r.flat(s.concentrations) for r in sweeps.run_sweep(s)]
        monkeypatch.setenv(sweeps.THREADS_ENV, "4")
        threaded = [r.flat(s.concentrations) for r in sweeps.run_sweep(s)]
        assert serial == threaded

    def test_bad_thread_count(self, monkeypatch):
        monkeypatch.setenv(sweeps.THREADS_ENV, "zero")
        with pytest.raises(ParameterError):
            sweeps.worker_count()

    def test_efficiency_symmetric_in_detuning(self):
        delta = np.linspace(0, 10, 101)
        for m in map(medium_for, CONCENTRATIONS):
            fwd = sweeps.efficiency_curve(m, "delta_p", delta)
            rev = sweeps.efficiency_curve(m, "delta_p", -delta)
            assert np.allclose(fwd, rev, rtol=1e-12, atol=0)

    def test_columns(self):
        cols = sweeps.sweep_columns((0.5, 3.0), "delta_p")
        assert cols[:3] == ["delta_p", "eta_c0.5", "im_rho21_c0.5"]
        assert len(cols) == 1 + 2 * len(sweeps.QUANTITIES)


class TestOptimum:
    def test_three_percent_window(self, medium3):
        best = sweeps.find_optimum(medium3)
        assert 7.5 <= best.axis_value <= 9.5
        assert not best.boundary

    def test_three_percent_is_best(self):
        etas = {c: sweeps.find_optimum(medium_for(c)).eta for c in CONCENTRATIONS}
        assert max(etas, key=etas.get) == 3.0

    def test_refinement_beats_scan(self, medium3):
        best = sweeps.find_optimum(medium3)
        grid = np.linspace(0, 20, 1000)
        assert best.eta >= sweeps.efficiency_curve(medium3, "z_eff", grid).max()

    def test_stable_under_finer_scan(self, medium):
        a = sweeps.find_optimum(medium, scan_points=1000)
        b = sweeps.find_optimum(medium, scan_points=2000)
        assert abs(a.axis_value - b.axis_value) < 1e-3

    def test_degenerate_window(self, medium3):
        best = sweeps.find_optimum(medium3, window=(0.0, 0.0))
        assert best.boundary and best.axis_value == 0.0

    def test_boundary_optimum(self, medium3):
        best = sweeps.find_optimum(medium3, window=(0.0, 3.0))
        assert best.boundary and best.axis_value == 3.0

    def test_detuning_axis(self, medium3):
        best = sweeps.find_optimum(medium3, "delta_p", (-10, 10.3))
        assert abs(best.axis_value) < 1e-3


class TestDispersion:
    def test_slope_matches_richardson(self, medium):
        for beam in ("probe", "signal"):
            h = sweeps.SLOPE_STEP
            d1 = sweeps.dispersion_slope(medium, beam, h=h)
            d2 = sweeps.dispersion_slope(medium, beam, h=h / 2)
            richardson = (4 * d2 - d1) / 3
            assert d1 == pytest.approx(richardson, rel=1e-6)

    def test_signal_three_percent_superluminal(self):
        r = sweeps.classify_dispersion(3, "signal")
        assert r.classification == "superluminal" and r.slope < 0

    def test_signal_slope_reverses_at_higher_doping(self):
        slopes = [sweeps.classify_dispersion(c, "signal").slope for c in CONCENTRATIONS]
        assert slopes[0] < 0 and slopes[1] < slopes[0]
        assert all(s > 0 for s in slopes[2:])

    def test_probe_slow_light_strengthens(self):
        slopes = {c: sweeps.classify_dispersion(c, "probe").slope for c in CONCENTRATIONS}
        assert slopes[3.0] < slopes[0.5] < slopes[15.0] < slopes[33.0]
        assert all(s > 0 for s in slopes.values())

    def test_threshold_definition(self):
        r = sweeps.classify_dispersion(0.5, "probe")
        top = max(abs(sweeps.dispersion_slope(medium_for(c), "probe")) for c in CONCENTRATIONS)
        assert r.threshold == pytest.approx(0.05 * top)

    def test_unknown_beam(self):
        with pytest.raises(ParameterError):
            sweeps.classify_dispersion(3, "idler")
