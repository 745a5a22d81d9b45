from pathlib import Path

import pytest

from exotica.config import (
    InitialCondition,
    load_config,
    load_run_config,
    parse_initial,
    parse_run_config,
    resolve_run_config,
)
from exotica.errors import ConfigError


def test_load_config_defaults(exotica_env: Path):
    config = load_config()
    assert config.log_level == "WARNING"
    assert config.trace_path is None
    assert config.config_dir == str(exotica_env / "config")
    assert config.output_dir == str(exotica_env / "runs")


def test_load_config_reads_environment(exotica_env: Path, monkeypatch: pytest.MonkeyPatch):
    monkeypatch.setenv("EXOTICA_LOG_LEVEL", "debug")
    monkeypatch.setenv("EXOTICA_TRACE_PATH", str(exotica_env / "trace.jsonl"))
    config = load_config()
    assert config.log_level == "DEBUG"
    assert config.trace_path == str(exotica_env / "trace.jsonl")


def test_load_config_rejects_unknown_level(exotica_env: Path, monkeypatch: pytest.MonkeyPatch):
    monkeypatch.setenv("EXOTICA_LOG_LEVEL", "chatty")
    with pytest.raises(ConfigError):
        load_config()


def test_parse_run_config():
    config = parse_run_config(
        """
        n = 3
        m = 12   # small
        steps = 10
        kappa = 2
        initial = random-perturbation(0.05, 9)
        check-every-step = yes
        """
    )
    assert (config.n, config.m, config.steps) == (3, 12, 10)
    assert config.kappa == 2.0
    assert config.initial == InitialCondition("random-perturbation", 0.05, 9)
    assert config.check_every_step is True
    assert config.dt is None
    assert config.spacing == pytest.approx(2 * 3.141592653589793 / 12)


@pytest.mark.parametrize(
    "text",
    [
        "n = 2\nm = 16",
        "n = 2\nm = 16\nsteps = 1\ncolour = red",
        "n = 2\nm = 16\nsteps = one",
        "n = 4\nm = 16\nsteps = 1",
        "n = 3\nm = 64\nsteps = 1",
        "n = 2\nm = 16\nsteps = 1\ndt = -1",
        "n = 2\nm = 16\nsteps = 1\ndump-fields = maybe",
        "n = 2\nm = 16\nsteps = 1\ndump_fields",
        "n 2",
    ],
)
def test_parse_run_config_errors(text):
    with pytest.raises(ConfigError):
        parse_run_config(text)


def test_parse_initial():
    assert parse_initial("flat") == InitialCondition("flat")
    assert parse_initial("conformal-sine(0.2)") == InitialCondition("conformal-sine", 0.2)
    assert str(parse_initial("random-perturbation(0.1, 5)")) == "random-perturbation(0.1, 5)"
    for bad in ("sphere", "flat(1)", "conformal-sine()", "conformal-sine(x)"):
        with pytest.raises(ConfigError):
            parse_initial(bad)


def test_resolve_run_config(run_config_path: Path):
    config = load_config()
    assert resolve_run_config("small", config) == run_config_path
    assert resolve_run_config("small.conf", config) == run_config_path
    assert resolve_run_config(str(run_config_path), config) == run_config_path
    assert load_run_config(run_config_path).dump_fields is True
    with pytest.raises(ConfigError):
        resolve_run_config("missing", config)


def test_parse_run_config_accepts_dotenv_quoting():
    config = parse_run_config(
        'n = 2\nm = 8\nsteps = 0\noutput = "~/runs/a b#1"   # quoted\ninitial = \'conformal-sine(0.1)\'\n'
    )
    assert config.output == "~/runs/a b#1"
    assert config.initial == InitialCondition("conformal-sine", 0.1)
