from pathlib import Path

import pytest


RUN_CONFIG = """\
# small 2-torus run
n = 2
m = 16
steps = 3
initial = conformal-sine(0.1)
dump-fields = true
"""


@pytest.fixture
def exotica_env(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> Path:
    monkeypatch.setenv("EXOTICA_CONFIG_DIR", str(tmp_path / "config"))
    monkeypatch.setenv("EXOTICA_OUTPUT_DIR", str(tmp_path / "runs"))
    monkeypatch.delenv("EXOTICA_TRACE_PATH", raising=False)
    monkeypatch.delenv("EXOTICA_LOG_LEVEL", raising=False)
    return tmp_path


@pytest.fixture
def run_config_path(exotica_env: Path) -> Path:
    config_dir = exotica_env / "config"
    config_dir.mkdir(parents=True, exist_ok=True)
    path = config_dir / "small.conf"
    path.write_text(RUN_CONFIG + f"output = {exotica_env / 'out'}\n", encoding="utf-8")
    return path
