"""Feedforward gain optimization.

The output signal variance is exactly quadratic in the (real) gain,
``alpha*g**2 + beta*g + gamma``, so the optimum is found in closed form.
Gain scans exist to produce curve data and to cross-check the optimum.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import DegenerateSystemError, InvalidParameterError
from .metrics import MetricsReport, SNRReference, evaluate
from .noise import SystemParams, propagate_system, to_db, variance
from .tapoff import TapOffKind, TapOffSpec

DEFAULT_GAIN_RANGE = (-5.0, 5.0)
DEFAULT_GAIN_STEPS = 10_001
DEFAULT_TAPOFF_GRID = (0.005, 0.995, 200)


def default_tapoff_grid() -> np.ndarray:
    lo, hi, n = DEFAULT_TAPOFF_GRID
    return np.linspace(lo, hi, n)


def gain_coefficients(params: SystemParams) -> tuple[float, float, float]:
    """``(alpha, beta, gamma)`` of the signal variance as a function of gain.

    ``params.gain`` is ignored.
    """
    a, b, c, d, e, f = params.tapoff.matrix().entries()
    v, eta_s, eta_m = params.v_in, params.eta_s, params.eta_m
    alpha = eta_s * (eta_m * (d * d * v + e * e + f * f) + (1.0 - eta_m))
    beta = 2.0 * eta_s * math.sqrt(eta_m) * (a * d * v + b * e + c * f)
    gamma = eta_s * (a * a * v + b * b + c * c) + (1.0 - eta_s)
    return alpha, beta, gamma


def variance_of_gain(params: SystemParams, g: float) -> float:
    """Signal output variance at gain ``g``, via full propagation."""
    p = params.with_gain(g)
    signal, _ = propagate_system(p)
    return variance(signal, p.basis)


def meter_variance(params: SystemParams) -> float:
    _, meter = propagate_system(params)
    return variance(meter, params.basis)


def optimal_gain(params: SystemParams) -> tuple[float, float]:
    """Gain minimizing the output signal variance, and that minimum."""
    alpha, beta, gamma = gain_coefficients(params)
    if not alpha > 0.0:
        raise DegenerateSystemError(
            "signal variance does not depend on gain (eta_s = 0 or noiseless meter)")
    g_star = -beta / (2.0 * alpha)
    v_star = gamma - beta * beta / (4.0 * alpha)
    return g_star, v_star


@dataclass(frozen=True, eq=False)
class GainCurve:
    gains: np.ndarray
    v_s_out: np.ndarray
    v_m_out: np.ndarray
    g_star: float
    v_star: float

    @property
    def scan_min(self) -> tuple[float, float]:
        i = int(np.argmin(self.v_s_out))
        return float(self.gains[i]), float(self.v_s_out[i])


def gain_scan(
    params: SystemParams,
    g_min: float = DEFAULT_GAIN_RANGE[0],
    g_max: float = DEFAULT_GAIN_RANGE[1],
    steps: int = DEFAULT_GAIN_STEPS,
) -> GainCurve:
    if not g_min < g_max:
        raise InvalidParameterError(f"empty gain range [{g_min}, {g_max}]")
    if steps < 3:
        raise InvalidParameterError(f"gain scan needs at least 3 steps, got {steps}")
    gains = np.linspace(g_min, g_max, int(steps))
    # the propagated signal vector is affine in gain: s(g) = s(0) + g*(s(1) - s(0))
    s0 = propagate_system(params.with_gain(0.0))[0].coeffs
    s1 = propagate_system(params.with_gain(1.0))[0].coeffs - s0
    coeffs = s0[None, :] + gains[:, None] * s1[None, :]
    v_s = (coeffs ** 2) @ params.basis.variances
    v_m = np.full_like(gains, meter_variance(params))
    g_star, v_star = optimal_gain(params)
    return GainCurve(gains, v_s, v_m, g_star, v_star)


@dataclass(frozen=True)
class SweepPoint:
    tapoff: float
    g_star: float
    v_star: float
    metrics: MetricsReport

    @property
    def v_star_db(self) -> float:
        return to_db(self.v_star)


@dataclass(frozen=True, eq=False)
class SweepResult:
    tapoff_grid: np.ndarray
    records: dict[TapOffKind, list[SweepPoint]] = field(default_factory=dict)

    def v_star(self, kind: TapOffKind | str) -> np.ndarray:
        return np.array([r.v_star for r in self.records[TapOffKind(kind)]])

    @property
    def diff_db(self) -> np.ndarray:
        """BS minus SHG optimal output noise, in dB."""
        return (10.0 * np.log10(self.v_star(TapOffKind.BEAMSPLITTER))
                - 10.0 * np.log10(self.v_star(TapOffKind.SECOND_HARMONIC)))


def optimal_point(
    spec: TapOffSpec,
    v_in: float,
    eta_m: float,
    eta_s: float,
    snr_reference: SNRReference | str = SNRReference.QUANTUM_LIMIT,
) -> SweepPoint:
    params = SystemParams(spec, v_in=v_in, eta_m=eta_m, eta_s=eta_s)
    g_star, v_star = optimal_gain(params)
    return SweepPoint(1.0 - spec.eta, g_star, v_star,
                      evaluate(params.with_gain(g_star), snr_reference))


def optimal_sweep(
    tapoff_grid,
    v_in: float = 10.0,
    eta_m: float = 1.0,
    eta_s: float = 1.0,
    snr_reference: SNRReference | str = SNRReference.QUANTUM_LIMIT,
) -> SweepResult:
    """Optimal-gain performance of both tap-off models at equal power tap-off.

    ``tapoff_grid`` holds tap-off fractions ``1 - eta`` in (0, 1), strictly
    increasing.
    """
    grid = np.asarray(tapoff_grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise InvalidParameterError("tap-off grid must be a non-empty 1-D sequence")
    if np.any(grid <= 0.0) or np.any(grid >= 1.0):
        raise InvalidParameterError("tap-off grid values must lie in (0, 1)")
    if np.any(np.diff(grid) <= 0.0):
        raise InvalidParameterError("tap-off grid must be strictly increasing")

    records = {}
    for kind in TapOffKind:
        points = []
        for t in grid:
            point = optimal_point(TapOffSpec.at_tapoff(kind, t), v_in, eta_m, eta_s, snr_reference)
            # keep the grid value rather than 1 - sech^2(xi) with its rounding
            points.append(replace(point, tapoff=float(t)))
        records[kind] = points
    return SweepResult(grid, records)

