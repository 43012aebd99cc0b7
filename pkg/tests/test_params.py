import pytest

from vortex_mbx.params import (
    CONCENTRATIONS,
    TABLE_1,
    DecayRates,
    MediumConfig,
    ParameterError,
    ProbeSpec,
    canonical_concentration,
    medium_for,
)


def test_table_rows():
    expected = [
        (0.5, 1.69, 1.00, 2.15, 25.35),
        (3, 1.84, 1.38, 1.61, 27.60),
        (15, 1.36, 1.38, 0.15, 20.40),
        (33, 1.19, 0.31, 0.08, 17.85),
        (100, 1.14, 0.04, 0.01, 17.10),
    ]
    assert [(r.concentration, r.mu23, r.tau2, r.tau3, r.omega_c) for r in TABLE_1] == expected


@pytest.mark.parametrize(
    "c, omega_c, mu21, mu31",
    [(0.5, 25.35, 3.25, 1.59), (3, 27.60, 3.81, 1.72), (15, 20.40, 2.82, 1.27), (33, 17.85, 2.47, 1.11)],
)
def test_medium_defaults(c, omega_c, mu21, mu31):
    m = medium_for(c)
    assert (m.omega_c, m.mu21, m.mu31) == (omega_c, mu21, mu31)
    assert (m.beta21, m.beta31) == (8.0, 8.0 / 3.0)
    assert (m.decay.gamma21, m.decay.gamma31) == (3.0, 1.0)
    assert not m.dipoles_borrowed


def test_full_concentration_borrows_dipoles():
    m = medium_for(100)
    assert m.dipoles_borrowed
    assert (m.mu21, m.mu31) == (2.47, 1.11)
    assert m.omega_c == 17.10


def test_microscopic_rates():
    r = DecayRates.from_microscopic(Gamma21=2.0, Gamma32=0.5, gamma2=4.0, gamma3=1.5)
    assert r.gamma21 == 3.0
    assert r.gamma31 == 1.0
    assert r.gamma32 == 1.0


def test_default_rates_are_microscopically_consistent():
    default = DecayRates()
    assert default == DecayRates.from_microscopic(default.Gamma21, default.Gamma32, default.gamma2, default.gamma3)


@pytest.mark.parametrize("bad", [0.0, -1.0, float("nan")])
def test_rates_must_be_positive(bad):
    with pytest.raises(ParameterError, match="gamma21"):
        DecayRates(gamma21=bad)


def test_medium_validation():
    with pytest.raises(ParameterError, match="omega_c"):
        MediumConfig(omega_c=-1.0)
    with pytest.raises(ParameterError, match="beta31"):
        medium_for(3, beta31=-2.0)


def test_probe_validation():
    with pytest.raises(ParameterError, match="waist"):
        ProbeSpec(waist=-1)
    with pytest.raises(ParameterError, match="ell"):
        ProbeSpec(ell=1.5)
    assert ProbeSpec(ell=-2).ell == -2


def test_concentration_labels():
    assert canonical_concentration("15") == 15.0
    assert canonical_concentration(0.5) == 0.5
    with pytest.raises(ParameterError, match="unknown concentration"):
        canonical_concentration(7)
    assert len(CONCENTRATIONS) == 5
