from pathlib import Path

import pytest

from selfaction.config import (
    ConfigError,
    DEFAULT_CONSTANTS_FILE,
    PhysicalConstants,
    RunConfig,
    load_config,
    parse_config_text,
)
from selfaction.settings import CONFIG_ENV_VAR


@pytest.fixture(autouse=True)
def no_env_config(monkeypatch):
    monkeypatch.delenv(CONFIG_ENV_VAR, raising=False)


def test_packaged_constants():
    config = load_config()
    assert config.constants_file == DEFAULT_CONSTANTS_FILE
    assert config.m_e_eV == 511000
    assert config.alpha == 1 / 137
    constants = config.constants
    assert constants.m_p == 938272088
    assert constants.m_pi0 == 134976800


def test_overrides():
    config = load_config(alpha="0.01", series_order=2, eta_lo=None)
    assert config.alpha == 0.01
    assert config.series_order == 2
    assert config.eta_lo == RunConfig().eta_lo
    assert config.with_overrides(output_dir="out").output_dir == Path("out")
    assert config.with_overrides(coulomb_sign="-1").coulomb_sign == -1


def test_environment_variable(tmp_path, monkeypatch):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# custom\n\nalpha = 0.02\nc0_mode = exact\n")
    monkeypatch.setenv(CONFIG_ENV_VAR, str(cfg))
    config = load_config()
    assert config.alpha == 0.02
    assert config.c0_mode == "exact"
    assert config.constants_file == cfg


@pytest.mark.parametrize("text", [
    "alpha 0.01\n",
    "unknown_key = 1\n",
    "series_order = two\n",
    "series_order = 0\n",
    "eta_lo = 0.5\neta_hi = 0.1\n",
    "c0_mode = guess\n",
    "n_lo = 0.2\nn_hi = 0.1\n",
    "coulomb_sign = 2\n",
    "m_e_eV = -1\n",
])
def test_invalid_files(tmp_path, text):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text(text)
    with pytest.raises(ConfigError):
        load_config(cfg)


def test_missing_file(tmp_path):
    with pytest.raises(ConfigError):
        load_config(tmp_path / "missing.cfg")


def test_invalid_override():
    with pytest.raises(ConfigError):
        load_config(quad_rel_tol=0.0)
    with pytest.raises(ConfigError):
        load_config(colour="blue")


def test_text_round_trip():
    config = load_config(alpha=0.01, n_points=5)
    values = parse_config_text(config.to_text())
    assert RunConfig(**values) == config


def test_constants_must_be_positive():
    with pytest.raises(ConfigError):
        PhysicalConstants(alpha=0.0)


def test_hadron_masses_default_to_the_packaged_file(tmp_path, monkeypatch):
    assert PhysicalConstants().m_p == 938272088
    assert RunConfig().m_pi0_eV == 134976800

    packaged = tmp_path / "constants.cfg"
    packaged.write_text("m_p_eV = 1e9\nm_pi0_eV = 1.5e8\n")
    monkeypatch.setattr("selfaction.config.DEFAULT_CONSTANTS_FILE", packaged)
    assert PhysicalConstants().m_p == 1e9
    assert RunConfig().constants.m_pi0 == 1.5e8

    packaged.write_text("m_p_eV = 1e9\n")
    with pytest.raises(ConfigError):
        PhysicalConstants()
