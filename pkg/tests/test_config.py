import json

import pytest

from vortex_mbx.config import ConfigError, RunConfig, apply_overrides, dump_config, from_dict, load_config, to_dict
from vortex_mbx.params import medium_for


def write(tmp_path, obj, name="cfg.json"):
    path = tmp_path / name
    path.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return path


def test_empty_object_gives_defaults(tmp_path):
    cfg = load_config(write(tmp_path, {}))
    assert cfg == RunConfig()
    assert cfg.medium == medium_for(3)
    assert (cfg.probe.e_p, cfg.probe.ell, cfg.z_eff) == (5.0, 1, 8.5)
    assert cfg.sweep.spectra_omega_p0 == 0.1


def test_concentration_selects_table_row(tmp_path):
    cfg = load_config(write(tmp_path, {"medium": {"concentration": 15}}))
    assert cfg.medium.omega_c == 20.40
    assert (cfg.medium.mu21, cfg.medium.mu31) == (2.82, 1.27)


def test_negative_waist_named(tmp_path):
    with pytest.raises(ConfigError, match="waist"):
        load_config(write(tmp_path, {"probe": {"waist": -1}}))


@pytest.mark.parametrize(
    "raw, key",
    [
        ({"medium": {"omega": 1}}, "medium.omega"),
        ({"probe": {"charge": 1}}, "probe.charge"),
        ({"colour": 1}, "config.colour"),
        ({"medium": {"decay": {"gamma99": 1}}}, "medium.decay.gamma99"),
        ({"sweep": {"z_range": {"stop": 1, "step": 2}}}, "sweep.z_range.step"),
    ],
)
def test_unknown_keys_rejected(raw, key):
    with pytest.raises(ConfigError, match=key.replace(".", r"\.")):
        from_dict(raw)


@pytest.mark.parametrize(
    "raw, key",
    [
        ({"medium": {"concentration": 7}}, "medium.concentration"),
        ({"medium": {"omega_c": -3}}, "omega_c"),
        ({"medium": {"decay": {"gamma31": 0}}}, "gamma31"),
        ({"probe": {"ell": 0.5}}, "probe.ell"),
        ({"grid": {"nx": 4}}, "grid"),
        ({"z_eff": -1}, "z_eff"),
        ({"sweep": {"delta_range": {"start": 3, "stop": 1}}}, "sweep.delta_range"),
        ({"output": {"format": "tiff"}}, "output.format"),
        ({"probe": {"e_p": "five"}}, "probe.e_p"),
    ],
)
def test_invariants_revalidated(raw, key):
    with pytest.raises(ConfigError, match=key.replace(".", r"\.")):
        from_dict(raw)


def test_parse_error_has_position(tmp_path):
    with pytest.raises(ConfigError, match="line 2, column"):
        load_config(write(tmp_path, '{\n  "medium": }'))


def test_overrides_applied_before_validation(tmp_path):
    path = write(tmp_path, {"medium": {"concentration": 33}})
    cfg = load_config(path, ["medium.concentration=15", "probe.ell=-2", "grid.nx=65", "output.directory=xyz"])
    assert cfg.medium.omega_c == 20.40
    assert cfg.probe.ell == -2
    assert cfg.grid.nx == 65
    assert cfg.output.directory == "xyz"
    with pytest.raises(ConfigError, match="waist"):
        load_config(path, ["probe.waist=0"])


def test_override_syntax():
    with pytest.raises(ConfigError):
        apply_overrides({}, ["novalue"])
    with pytest.raises(ConfigError):
        apply_overrides({"z_eff": 3}, ["z_eff.x=1"])


def test_medium_overrides_on_top_of_table():
    cfg = from_dict({"medium": {"concentration": 100, "beta21": 6.0, "decay": {"gamma32": 2.5}}})
    assert cfg.medium.omega_c == 17.10 and cfg.medium.beta21 == 6.0
    assert cfg.medium.decay.gamma32 == 2.5 and cfg.medium.decay.gamma21 == 3.0
    assert cfg.medium.dipoles_borrowed


@pytest.mark.parametrize(
    "raw",
    [
        {},
        {"medium": {"concentration": 100}},
        {"medium": {"concentration": 0.5, "omega_c": 12.5}, "probe": {"ell": -3, "delta_p": 1.25}, "z_eff": 4},
        {"sweep": {"concentrations": [3, 15], "z_range": {"samples": 11}}, "output": {"png": True}},
    ],
)
def test_round_trip(tmp_path, raw):
    cfg = from_dict(raw)
    path = tmp_path / "dump.json"
    dump_config(cfg, path)
    assert load_config(path) == cfg
    assert to_dict(load_config(path)) == to_dict(cfg)
