"""Linearized amplitude-quadrature noise propagation.

Every field fluctuation is a real linear combination of five independent,
zero-mean Gaussian sources. A field is therefore stored as its coefficient
vector over those sources, and variances and covariances follow from the
source variances alone. All variances are in shot-noise units.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import InvalidParameterError
from .tapoff import TapOffMatrix, TapOffSpec

#: Source order used by every coefficient vector.
SOURCES = ("signal_in", "meter_in", "tapoff_vac", "signal_arm_vac", "meter_arm_vac")
N_SOURCES = len(SOURCES)


def _frozen_array(values, name: str) -> np.ndarray:
    arr = np.array(values, dtype=float)
    if arr.shape != (N_SOURCES,):
        raise InvalidParameterError(f"{name} needs {N_SOURCES} entries, got shape {arr.shape}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class NoiseBasis:
    """Variances of the five independent noise sources."""

    variances: np.ndarray

    def __post_init__(self):
        arr = _frozen_array(self.variances, "variances")
        if not np.all(np.isfinite(arr)) or np.any(arr < 0):
            raise InvalidParameterError(f"source variances must be finite and >= 0: {arr}")
        object.__setattr__(self, "variances", arr)

    @classmethod
    def for_input(cls, v_in: float) -> NoiseBasis:
        """Noisy signal input with every other port at the vacuum level."""
        return cls([v_in, 1.0, 1.0, 1.0, 1.0])

    def __getitem__(self, source: str) -> float:
        return float(self.variances[SOURCES.index(source)])


@dataclass(frozen=True, eq=False)
class FluctuationVector:
    """Coefficients of a field fluctuation over :data:`SOURCES`."""

    coeffs: np.ndarray

    def __post_init__(self):
        arr = _frozen_array(self.coeffs, "coeffs")
        if not np.all(np.isfinite(arr)):
            raise InvalidParameterError(f"non-finite fluctuation coefficients: {arr}")
        object.__setattr__(self, "coeffs", arr)

    def __getitem__(self, source: str) -> float:
        return float(self.coeffs[SOURCES.index(source)])


@dataclass(frozen=True)
class SystemParams:
    """Operating point of a noise eater.

    ``eta_s`` is the net signal-arm transmission (tap-off insertion loss times
    modulator loss, see :func:`signal_efficiency`) and ``eta_m`` the meter
    detection efficiency.
    """

    tapoff: TapOffSpec
    v_in: float = 10.0
    gain: float = 0.0
    eta_m: float = 1.0
    eta_s: float = 1.0

    def __post_init__(self):
        for name in ("v_in", "gain", "eta_m", "eta_s"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise InvalidParameterError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)
        if self.v_in < 1.0:
            raise InvalidParameterError(f"v_in must be >= 1 (shot noise), got {self.v_in}")
        for name in ("eta_m", "eta_s"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise InvalidParameterError(f"{name} must lie in [0, 1], got {getattr(self, name)}")

    def with_gain(self, gain: float) -> SystemParams:
        return replace(self, gain=gain)

    @property
    def basis(self) -> NoiseBasis:
        return NoiseBasis.for_input(self.v_in)


def signal_efficiency(eta_insertion: float, eta_modulator: float) -> float:
    """Net signal-arm transmission from the tap-off insertion and modulator losses."""
    for name, value in (("eta_insertion", eta_insertion), ("eta_modulator", eta_modulator)):
        if not 0.0 <= value <= 1.0:
            raise InvalidParameterError(f"{name} must lie in [0, 1], got {value!r}")
    return float(eta_insertion) * float(eta_modulator)


def propagate(
    tapoff_matrix: TapOffMatrix, params: SystemParams
) -> tuple[FluctuationVector, FluctuationVector]:
    """Output (signal, meter) fluctuations after tap-off, detection loss,
    feedforward and signal-arm loss.

    The detected meter photocurrent, including the detector's vacuum noise,
    is amplified by ``params.gain`` and written onto the signal before the
    signal-arm loss.
    """
    a, b, c, d, e, f = tapoff_matrix.entries()
    g, eta_s, eta_m = params.gain, params.eta_s, params.eta_m
    rs, rm = math.sqrt(eta_s), math.sqrt(eta_m)
    k = g * rm
    signal = FluctuationVector([
        rs * (a + k * d),
        rs * (b + k * e),
        rs * (c + k * f),
        math.sqrt(1.0 - eta_s),
        g * math.sqrt(eta_s * (1.0 - eta_m)),
    ])
    meter = FluctuationVector([rm * d, rm * e, rm * f, 0.0, math.sqrt(1.0 - eta_m)])
    return signal, meter


def propagate_system(params: SystemParams) -> tuple[FluctuationVector, FluctuationVector]:
    return propagate(params.tapoff.matrix(), params)


def variance(f: FluctuationVector, basis: NoiseBasis) -> float:
    return float(np.sum(f.coeffs ** 2 * basis.variances))


def covariance(f: FluctuationVector, g: FluctuationVector, basis: NoiseBasis) -> float:
    return float(np.sum(f.coeffs * g.coeffs * basis.variances))


def to_db(v: float) -> float:
    """Variance in dB relative to shot noise."""
    return 10.0 * math.log10(v)
