"""Run configuration for the command line front end.

Values are resolved in order: built-in defaults, named preset, config file,
command-line flags. The config file is a flat JSON object using the same
keys as :class:`RunConfig`.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, fields, replace
from pathlib import Path

import numpy as np

from .errors import InvalidParameterError
from .metrics import SNRReference
from .noise import signal_efficiency

MODELS = ("bs", "shg", "both")
FORMATS = ("csv", "json")

# caption parameters of the tap-off comparison figures
_LOSSLESS = dict(v_in=10.0, eta_m=1.0, eta_insertion=1.0, eta_modulator=1.0, gain=0.0)
# caption parameters of the noise eater figures
_NOISE_EATER = dict(v_in=10.0, eta_m=0.9, eta_insertion=0.95, eta_modulator=0.95)

PRESETS: dict[str, dict] = {
    "lossless": _LOSSLESS,
    "noise-eater": _NOISE_EATER,
}
for _n in (4, 5, 6):
    PRESETS[f"fig{_n}"] = PRESETS[f"fig{_n}-point"] = _LOSSLESS
for _n in (7, 8):
    PRESETS[f"fig{_n}"] = PRESETS[f"fig{_n}-point"] = _NOISE_EATER


class ConfigError(InvalidParameterError):
    pass


@dataclass(frozen=True)
class RunConfig:
    preset: str | None = None
    model: str = "both"
    v_in: float = 10.0
    eta_m: float = 1.0
    eta_insertion: float = 1.0
    eta_modulator: float = 1.0
    tapoff: float | None = None
    xi: float | None = None
    gain: float = 0.0
    optimal_gain: bool = False
    g_min: float = -5.0
    g_max: float = 5.0
    steps: int = 10_001
    grid_min: float = 0.005
    grid_max: float = 0.995
    grid_points: int = 200
    snr_reference: str = SNRReference.QUANTUM_LIMIT.value
    samples: int = 10_000_000
    seed: int | None = None
    out: str | None = None
    format: str = "csv"

    @property
    def eta_s(self) -> float:
        return signal_efficiency(self.eta_insertion, self.eta_modulator)

    def grid(self) -> np.ndarray:
        return np.linspace(self.grid_min, self.grid_max, self.grid_points)

    def check_common(self) -> None:
        if self.model not in MODELS:
            raise ConfigError(f"model must be one of {MODELS}, got {self.model!r}")
        if self.format not in FORMATS:
            raise ConfigError(f"format must be one of {FORMATS}, got {self.format!r}")
        for name in ("eta_m", "eta_insertion", "eta_modulator"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ConfigError(f"{name} must lie in [0, 1], got {value}")
        if not self.v_in >= 1.0:
            raise ConfigError(f"v_in must be >= 1, got {self.v_in}")
        try:
            SNRReference(self.snr_reference)
        except ValueError:
            raise ConfigError(f"unknown snr_reference {self.snr_reference!r}") from None

    def check_single_point(self) -> None:
        self.check_common()
        if (self.tapoff is None) == (self.xi is None):
            raise ConfigError("single-point mode needs exactly one of tapoff or xi")

    def check_sweep(self) -> None:
        self.check_common()
        if self.tapoff is not None or self.xi is not None:
            raise ConfigError("sweep mode does not accept tapoff or xi")
        if not 0.0 < self.grid_min < self.grid_max < 1.0:
            raise ConfigError("grid must satisfy 0 < grid_min < grid_max < 1")
        if self.grid_points < 2:
            raise ConfigError("grid_points must be at least 2")

    def check_scan(self) -> None:
        if not self.g_min < self.g_max:
            raise ConfigError(f"empty gain range [{self.g_min}, {self.g_max}]")
        if self.steps < 3:
            raise ConfigError("steps must be at least 3")


_FIELD_TYPES = {f.name: f.type for f in fields(RunConfig)}


def _coerce(key: str, value):
    kind = _FIELD_TYPES[key]
    if value is None:
        if "None" in kind:
            return None
        raise ConfigError(f"{key} may not be null")
    try:
        if kind.startswith("float"):
            if isinstance(value, bool):
                raise TypeError
            out = float(value)
            if not math.isfinite(out):
                raise ConfigError(f"{key} must be finite")
            return out
        if kind.startswith("int"):
            if isinstance(value, bool) or (isinstance(value, float) and not value.is_integer()):
                raise TypeError
            return int(value)
        if kind == "bool":
            if not isinstance(value, bool):
                raise TypeError
            return value
        if not isinstance(value, str):
            raise TypeError
        return value
    except (TypeError, ValueError):
        raise ConfigError(f"bad value for {key}: {value!r}") from None


def load_config_file(path: str | Path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed config {path}: {exc.msg} at line {exc.lineno}") from None
    if not isinstance(data, dict):
        raise ConfigError(f"config {path} must be a JSON object")
    for key, value in data.items():
        if key not in _FIELD_TYPES:
            raise ConfigError(f"unknown config key {key!r}")
        if isinstance(value, (dict, list)):
            raise ConfigError(f"config key {key!r} must be a scalar")
    return data


def resolve(file_values: dict, flag_values: dict, default_preset: str | None = None) -> RunConfig:
    """Merge preset, config file and flag values into a :class:`RunConfig`."""
    preset = flag_values.get("preset") or file_values.get("preset") or default_preset
    merged: dict = {}
    if preset is not None:
        if preset not in PRESETS:
            raise ConfigError(f"unknown preset {preset!r}; choose from {sorted(PRESETS)}")
        merged.update(PRESETS[preset])
        merged["preset"] = preset
    merged.update(file_values)
    merged.update({k: v for k, v in flag_values.items() if v is not None})
    merged["preset"] = preset
    return replace(RunConfig(), **{k: _coerce(k, v) for k, v in merged.items()})
