"""QND figures of merit for the (signal, meter) output pair."""
from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass

import numpy as np
from scipy import optimize

from .errors import DegenerateSystemError, UndefinedReferenceError
from .noise import (
    NoiseBasis,
    SystemParams,
    covariance,
    propagate_system,
    to_db,
    variance,
)
from .tapoff import TapOffKind, TapOffSpec


class SNRReference(str, enum.Enum):
    """Noise floor used for an output field's signal-to-noise ratio.

    ``QUANTUM_LIMIT`` takes the output variance the same device produces
    for a shot-noise-limited input; a transfer coefficient is then the
    squared correlation between input and output. ``SHOT_NOISE`` uses the
    bare shot-noise level 1 for every field.
    """

    QUANTUM_LIMIT = "quantum_limit"
    SHOT_NOISE = "shot_noise"


def snr(v: float, noise: float = 1.0) -> float:
    """``(S - N) / N`` for measured variance ``v`` over noise floor ``noise``.

    Negative for a field quieter than its noise floor.
    """
    if noise <= 0:
        raise DegenerateSystemError(f"noise floor must be positive, got {noise}")
    return (v - noise) / noise


def transfer_coefficients(
    v_s_out: float,
    v_m_out: float,
    v_s_in: float,
    noise_s: float = 1.0,
    noise_m: float = 1.0,
) -> tuple[float, float, float]:
    """Signal, meter and total information transfer coefficients.

    Both output SNRs are referenced to the SNR of the noisy input signal;
    the meter input is vacuum and carries no SNR of its own.
    """
    if not v_s_in > 1.0:
        raise UndefinedReferenceError(
            f"input signal variance {v_s_in} has no excess noise to transfer")
    snr_in = snr(v_s_in)
    t_s = snr(v_s_out, noise_s) / snr_in
    t_m = snr(v_m_out, noise_m) / snr_in
    return t_s, t_m, t_s + t_m


def conditional_variance(v_s_out: float, v_m_out: float, cov_sm: float) -> float:
    if v_m_out <= 0:
        raise DegenerateSystemError("meter variance is zero; conditioning is undefined")
    return v_s_out - cov_sm ** 2 / v_m_out


def correlation(v1: float, v2: float, cov: float) -> float:
    if v1 <= 0 or v2 <= 0:
        raise DegenerateSystemError(f"correlation needs positive variances, got {v1}, {v2}")
    return cov ** 2 / (v1 * v2)


@dataclass(frozen=True)
class MetricsReport:
    v_s_out: float
    v_m_out: float
    cov_sm: float
    t_s: float
    t_m: float
    t_total: float
    v_cond: float
    corr_sm: float
    v_s_out_db: float
    v_m_out_db: float

    def as_dict(self) -> dict[str, float]:
        return asdict(self)


def evaluate(
    params: SystemParams,
    snr_reference: SNRReference | str = SNRReference.QUANTUM_LIMIT,
) -> MetricsReport:
    """Full metric suite at the physical outputs of the device in ``params``."""
    snr_reference = SNRReference(snr_reference)
    basis = params.basis
    signal, meter = propagate_system(params)
    v_s = variance(signal, basis)
    v_m = variance(meter, basis)
    cov = covariance(signal, meter, basis)

    if snr_reference is SNRReference.QUANTUM_LIMIT:
        if not params.v_in > 1.0:
            raise UndefinedReferenceError("input signal has no excess noise to transfer")
        # The excess over the floor is exactly c0**2 * (v_in - 1), so T = c0**2 / N;
        # forming (V - N) / (v_in - 1) instead cancels badly as v_in -> 1.
        floor = NoiseBasis.for_input(1.0)
        t_s = signal.coeffs[0] ** 2 / variance(signal, floor)
        t_m = meter.coeffs[0] ** 2 / variance(meter, floor)
        t_s, t_m, t_total = float(t_s), float(t_m), float(t_s + t_m)
    else:
        t_s, t_m, t_total = transfer_coefficients(v_s, v_m, params.v_in)

    return MetricsReport(
        v_s_out=v_s,
        v_m_out=v_m,
        cov_sm=cov,
        t_s=t_s,
        t_m=t_m,
        t_total=t_total,
        v_cond=conditional_variance(v_s, v_m, cov),
        corr_sm=correlation(v_s, v_m, cov),
        v_s_out_db=to_db(v_s),
        v_m_out_db=to_db(v_m),
    )


def _lossless_at(kind: TapOffKind, tapoff: float, v_in: float) -> MetricsReport:
    return evaluate(SystemParams(TapOffSpec.at_tapoff(kind, tapoff), v_in=v_in))


def find_correlation_crossing(
    v_in: float = 10.0,
    lo: float = 0.005,
    hi: float = 0.995,
    points: int = 200,
    xtol: float = 1e-6,
) -> float:
    """Smallest tap-off fraction where the lossless SHG and BS signal/meter
    correlations are equal, at zero gain.

    A coarse grid brackets the first sign change, bisection refines it.
    """
    def diff(t):
        return (_lossless_at(TapOffKind.SECOND_HARMONIC, t, v_in).corr_sm
                - _lossless_at(TapOffKind.BEAMSPLITTER, t, v_in).corr_sm)

    grid = np.linspace(lo, hi, points)
    values = np.array([diff(t) for t in grid])
    flips = np.nonzero(np.sign(values[:-1]) != np.sign(values[1:]))[0]
    if flips.size == 0:
        raise DegenerateSystemError("correlation curves do not cross on the grid")
    i = int(flips[0])
    return float(optimize.bisect(diff, grid[i], grid[i + 1], xtol=xtol))


def is_finite_report(report: MetricsReport) -> bool:
    return all(math.isfinite(v) for v in report.as_dict().values())
