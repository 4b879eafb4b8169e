"""Tests for src/settings.py and src/config_errors.py."""

import pytest
from pydantic import ValidationError

from src.config_errors import flag_name, load_settings_or_exit
from src.settings import CliConfig, load_config

# --- Defaults ---------------------------------------------------------------


def test_defaults():
    config = CliConfig()

    assert config.max_steps == 8
    assert config.max_len == 12
    assert config.form_cap == 1_000_000
    assert config.seed == 0
    assert config.clo_max_segments == 3
    assert config.clo_segment_pool is None
    assert config.log_level == "INFO"
    assert config.inputs == []
    assert config.output is None


def test_environment_is_ignored(monkeypatch):
    """Identical flags give identical configuration whatever the environment holds."""
    monkeypatch.setenv("MAX_STEPS", "99")
    monkeypatch.setenv("LOG_LEVEL", "DEBUG")

    config = CliConfig()
    assert config.max_steps == 8
    assert config.log_level == "INFO"


def test_log_level_is_normalized():
    assert CliConfig(log_level="debug").log_level == "DEBUG"


# --- Validation -------------------------------------------------------------


@pytest.mark.parametrize("field", ["max_steps", "max_len", "form_cap", "clo_max_segments", "clo_segment_pool"])
@pytest.mark.parametrize("value", [0, -3])
def test_bounds_must_be_positive(field, value):
    with pytest.raises(ValidationError):
        CliConfig(**{field: value})


@pytest.mark.parametrize("seed", [-1, 2**64])
def test_seed_must_fit_in_64_bits(seed):
    with pytest.raises(ValidationError):
        CliConfig(seed=seed)


def test_unknown_option_is_rejected():
    with pytest.raises(ValidationError):
        CliConfig(max_stepz=3)


# --- load_settings_or_exit --------------------------------------------------


def test_flag_name():
    assert flag_name("max_steps") == "--max-steps"


def test_load_config_passes_valid_options_through():
    config = load_config(subcommand="enum", inputs=["g.cfg"], max_steps=3)
    assert (config.subcommand, config.inputs, config.max_steps) == ("enum", ["g.cfg"], 3)


def test_load_config_exits_with_usage_status(capsys):
    with pytest.raises(SystemExit) as excinfo:
        load_config(max_len=0, seed=-1)

    assert excinfo.value.code == 2
    err = capsys.readouterr().err
    assert err.startswith("Invalid option(s):")
    assert "--max-len" in err
    assert "--seed" in err


def test_other_errors_propagate():
    def boom():
        raise RuntimeError("not a validation problem")

    with pytest.raises(RuntimeError):
        load_settings_or_exit(boom)
