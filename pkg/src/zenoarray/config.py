"""Experiment configuration: defaults < config file < command-line flags.

Config files are flat ``key = value`` text with ``#`` comments. Keys use the
same names as the long flags (dashes or underscores both accepted).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable

from .rng import DEFAULT_SEED, SEED_MAX, random_seed


class ConfigError(ValueError):
    """Invalid or unknown parameter; ``key`` names the offender."""

    def __init__(self, key: str, message: str):
        super().__init__(f"{key}: {message}")
        self.key = key


def _parse_bool(text: str) -> bool:
    lowered = str(text).strip().lower()
    if lowered in {"1", "true", "yes", "on"}:
        return True
    if lowered in {"0", "false", "no", "off"}:
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _parse_float_list(text) -> list[float]:
    if isinstance(text, (list, tuple)):
        return [float(x) for x in text]
    return [float(x) for x in str(text).replace(",", " ").split()]


def _parse_optional_float(text) -> float | None:
    if text is None or str(text).strip().lower() in {"", "none", "auto"}:
        return None
    return float(text)


@dataclass(frozen=True)
class Param:
    type: Callable[[Any], Any]
    default: Any
    help: str
    check: Callable[[Any], str | None] = lambda v: None


def _positive_int(v):
    return None if v >= 1 else "must be >= 1"


def _non_negative_int(v):
    return None if v >= 0 else "must be >= 0"


def _non_negative(v):
    return None if math.isfinite(v) and v >= 0 else "must be finite and >= 0"


def _finite_or_none(v):
    return None if v is None or math.isfinite(v) else "must be finite"


def _gammas(values):
    if not values:
        return "needs at least one value"
    if any(not (math.isfinite(g) and g > 0) for g in values):
        return "every value must be finite and > 0"
    return None


_THETA = Param(_parse_optional_float, None, "splitter angle in radians (default pi/2N)", _finite_or_none)
_SPLITTERS = Param(int, 50, "number of beam splitters N", _positive_int)
_GAMMA = Param(float, 0.001, "absorption per splitter", _non_negative)

COMMANDS: dict[str, dict[str, Param]] = {
    "ideal": {
        "n_min": Param(int, 1, "smallest N", _positive_int),
        "n_max": Param(int, 100, "largest N", _positive_int),
        "theta": _THETA,
    },
    "dispersion": {
        "n_min": Param(int, 1, "smallest N", _positive_int),
        "n_max": Param(int, 200, "largest N", _positive_int),
        "n_step": Param(int, 1, "stride in N", _positive_int),
        "sigma": Param(float, 0.01, "standard deviation of the splitter angle", _non_negative),
        "samples": Param(int, 5000, "angle sets drawn per N", _positive_int),
    },
    "thermal": {
        "beamsplitters": _SPLITTERS,
        "theta": _THETA,
        "nbar": Param(float, 0.01, "mean thermal photon number at each open port", _non_negative),
        "cutoff": Param(int, 2, "maximum total photon number kept", _positive_int),
        "ancilla_cutoff": Param(int, 1, "maximum photons kept in each thermal input", _non_negative_int),
        "renormalize": Param(_parse_bool, False, "renormalize the truncated thermal input"),
    },
    "trajectory": {
        "beamsplitters": _SPLITTERS,
        "gamma": _GAMMA,
        "theta": _THETA,
        "trajectory_index": Param(int, 0, "which trajectory of the seeded ensemble", _non_negative_int),
    },
    "mcwf": {
        "beamsplitters": _SPLITTERS,
        "gamma": _GAMMA,
        "theta": _THETA,
        "trajectories": Param(int, 5000, "number of trajectories M", _positive_int),
    },
    "critical": {
        "gamma": Param(_parse_float_list, [0.0001, 0.0005, 0.001], "absorption values", _gammas),
    },
}

COMMON_KEYS = ("seed", "workers", "output")


def normalize_key(key: str) -> str:
    return key.strip().lstrip("-").replace("-", "_")


def read_config_file(path: str | Path) -> dict[str, str]:
    values: dict[str, str] = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}", f"expected 'key = value', got {raw.strip()!r}")
        key, value = line.split("=", 1)
        values[normalize_key(key)] = value.strip()
    return values


def parse_seed(value) -> int:
    if isinstance(value, str) and value.strip().lower() == "random":
        return random_seed()
    seed = int(value)
    if not 0 <= seed <= SEED_MAX:
        raise ValueError("must be an unsigned 64-bit integer")
    return seed


@dataclass(frozen=True)
class ExperimentConfig:
    command: str
    params: dict[str, Any] = field(default_factory=dict)
    seed: int = DEFAULT_SEED
    workers: int = 1
    output: str | None = None


def build_config(command: str, file_values: dict[str, Any], cli_values: dict[str, Any]) -> ExperimentConfig:
    """Merge layers and validate every value against its owning parameter."""
    if command not in COMMANDS:
        raise ConfigError("command", f"unknown command {command!r}")
    table = COMMANDS[command]
    merged: dict[str, Any] = {}
    for layer in (file_values, cli_values):
        for key, value in layer.items():
            if value is None:
                continue
            key = normalize_key(key)
            if key not in table and key not in COMMON_KEYS:
                raise ConfigError(key, f"unknown parameter for '{command}'")
            merged[key] = value

    params = {}
    for key, param in table.items():
        raw = merged.get(key, param.default)
        try:
            value = param.type(raw) if raw is not None else None
        except (TypeError, ValueError) as exc:
            raise ConfigError(key, f"cannot parse {raw!r} ({exc})") from None
        problem = param.check(value)
        if problem:
            raise ConfigError(key, f"{problem} (got {value!r})")
        params[key] = value

    try:
        seed = parse_seed(merged.get("seed", DEFAULT_SEED))
    except (TypeError, ValueError) as exc:
        raise ConfigError("seed", str(exc)) from None
    try:
        workers = int(merged.get("workers", 1))
    except (TypeError, ValueError) as exc:
        raise ConfigError("workers", str(exc)) from None
    if workers < 1:
        raise ConfigError("workers", f"must be >= 1 (got {workers})")
    output = merged.get("output")

    config = ExperimentConfig(command, params, seed, workers, None if output is None else str(output))
    _cross_check(config)
    return config


def _cross_check(config: ExperimentConfig) -> None:
    # constraints spanning several keys, reported against the key to change
    from .arrays import zeno_angle
    from .mcwf import jump_probability
    from .optimizer import critical_gamma

    p = config.params
    if "n_min" in p and p["n_min"] > p["n_max"]:
        raise ConfigError("n_max", f"must be >= n_min ({p['n_max']} < {p['n_min']})")
    if config.command in {"mcwf", "trajectory"}:
        theta = p["theta"] if p["theta"] is not None else zeno_angle(p["beamsplitters"])
        try:
            jump_probability(p["gamma"], theta)
        except ValueError as exc:
            raise ConfigError("gamma", str(exc)) from None
    if config.command == "critical":
        limit = critical_gamma(2.0)
        for g in p["gamma"]:
            if g >= limit:
                raise ConfigError("gamma", f"{g!r} has no optimum with N >= 2 (needs gamma < {limit:.6g})")
