from __future__ import annotations

import io
import math
import os
import re
from dataclasses import dataclass
from pathlib import Path

from appdirs import user_config_dir, user_data_dir
from dotenv import dotenv_values, load_dotenv

from .errors import ConfigError


APP_NAME = "exotica"
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")

# Grid caps per spatial dimension.
MAX_GRID = {2: 128, 3: 32}
MIN_GRID = 4

INITIAL_RE = re.compile(r"^([a-z][a-z-]*)(?:\((.*)\))?$")
INITIAL_ARITY = {"flat": (0, 0), "conformal-sine": (1, 1), "random-perturbation": (1, 2)}


@dataclass(frozen=True)
class Config:
    log_level: str
    trace_path: str | None
    config_dir: str
    output_dir: str


def load_config() -> Config:
    load_dotenv()

    log_level = os.environ.get("EXOTICA_LOG_LEVEL", "WARNING").strip().upper()
    if log_level not in LOG_LEVELS:
        raise ConfigError(f"EXOTICA_LOG_LEVEL must be one of {', '.join(LOG_LEVELS)}, got {log_level!r}")
    trace_path = os.environ.get("EXOTICA_TRACE_PATH") or None
    config_dir = os.environ.get("EXOTICA_CONFIG_DIR") or user_config_dir(APP_NAME)
    output_dir = os.environ.get("EXOTICA_OUTPUT_DIR") or os.path.join(user_data_dir(APP_NAME), "runs")

    return Config(
        log_level=log_level,
        trace_path=trace_path,
        config_dir=config_dir,
        output_dir=output_dir,
    )


@dataclass(frozen=True)
class InitialCondition:
    name: str
    epsilon: float = 0.0
    seed: int = 0

    def __str__(self) -> str:
        if self.name == "flat":
            return "flat"
        if self.name == "conformal-sine":
            return f"conformal-sine({self.epsilon:g})"
        return f"random-perturbation({self.epsilon:g}, {self.seed})"


@dataclass(frozen=True)
class RicciRunConfig:
    n: int
    m: int
    steps: int
    h: float | None = None
    dt: float | None = None
    kappa: float = 1.0
    initial: InitialCondition = InitialCondition("flat")
    stability_c: float = 0.1
    det_floor: float = 1e-9
    check_every_step: bool = False
    dump_fields: bool = False
    output: str | None = None

    @property
    def spacing(self) -> float:
        return self.h if self.h is not None else 2.0 * math.pi / self.m


def parse_initial(text: str) -> InitialCondition:
    m = INITIAL_RE.match(text.strip())
    if not m or m.group(1) not in INITIAL_ARITY:
        raise ConfigError(f"unknown initial condition {text!r}; expected one of {', '.join(INITIAL_ARITY)}")
    name = m.group(1)
    raw = m.group(2)
    args = [a.strip() for a in raw.split(",")] if raw and raw.strip() else []
    lo, hi = INITIAL_ARITY[name]
    if not lo <= len(args) <= hi:
        raise ConfigError(f"{name} takes {lo}..{hi} arguments, got {len(args)}")
    try:
        epsilon = float(args[0]) if args else 0.0
        seed = int(args[1]) if len(args) > 1 else 0
    except ValueError as exc:
        raise ConfigError(f"bad arguments for {name}: {raw!r}") from exc
    return InitialCondition(name=name, epsilon=epsilon, seed=seed)


def _parse_bool(key: str, value: str) -> bool:
    lowered = value.strip().lower()
    if lowered in {"1", "true", "yes", "on"}:
        return True
    if lowered in {"0", "false", "no", "off"}:
        return False
    raise ConfigError(f"{key}: expected a boolean, got {value!r}")


def _parse_number(key: str, value: str, kind: type) -> float | int:
    try:
        return kind(value)
    except ValueError as exc:
        raise ConfigError(f"{key}: expected {kind.__name__}, got {value!r}") from exc


_INT_KEYS = {"n", "m", "steps"}
_FLOAT_KEYS = {"h", "dt", "kappa", "stability_c", "det_floor"}
_BOOL_KEYS = {"check_every_step", "dump_fields"}
_STR_KEYS = {"initial", "output"}
_ALL_KEYS = _INT_KEYS | _FLOAT_KEYS | _BOOL_KEYS | _STR_KEYS


def parse_run_config(text: str, source: str = "<string>") -> RicciRunConfig:
    """Typed run settings from dotenv-style `key = value` lines."""
    raw = dotenv_values(stream=io.StringIO(text), interpolate=False)
    values: dict[str, object] = {}
    for key, value in raw.items():
        name = key.replace("-", "_")
        if name not in _ALL_KEYS:
            raise ConfigError(f"{source}: unknown key {key!r}")
        if value is None:
            raise ConfigError(f"{source}: {key}: expected 'key = value'")
        if name in _INT_KEYS:
            values[name] = _parse_number(key, value, int)
        elif name in _FLOAT_KEYS:
            values[name] = _parse_number(key, value, float)
        elif name in _BOOL_KEYS:
            values[name] = _parse_bool(key, value)
        elif name == "initial":
            values[name] = parse_initial(value)
        else:
            values[name] = value

    for required in ("n", "m", "steps"):
        if required not in values:
            raise ConfigError(f"{source}: missing required key {required!r}")
    config = RicciRunConfig(**values)  # type: ignore[arg-type]
    _check_run_config(config, source)
    return config


def _check_run_config(config: RicciRunConfig, source: str) -> None:
    if config.n not in MAX_GRID:
        raise ConfigError(f"{source}: n must be 2 or 3, got {config.n}")
    if not MIN_GRID <= config.m <= MAX_GRID[config.n]:
        raise ConfigError(f"{source}: m must lie in {MIN_GRID}..{MAX_GRID[config.n]} for n={config.n}, got {config.m}")
    if config.steps < 0:
        raise ConfigError(f"{source}: steps must be >= 0")
    for key in ("h", "dt"):
        value = getattr(config, key)
        if value is not None and value <= 0:
            raise ConfigError(f"{source}: {key} must be positive")
    if config.kappa <= 0 or config.stability_c <= 0 or config.det_floor <= 0:
        raise ConfigError(f"{source}: kappa, stability_c and det_floor must be positive")


def load_run_config(path: str | Path) -> RicciRunConfig:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read run config {path}: {exc}") from exc
    return parse_run_config(text, source=str(path))


def resolve_run_config(name: str, config: Config) -> Path:
    direct = Path(name)
    if direct.is_file():
        return direct
    base = Path(config.config_dir)
    for candidate in (base / name, base / f"{name}.conf"):
        if candidate.is_file():
            return candidate
    raise ConfigError(f"run config {name!r} not found (looked in . and {base})")
