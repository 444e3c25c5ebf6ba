"""Monte-Carlo check of the analytic variances.

Draws the five noise sources directly and pushes each sample through the
device stage by stage (tap-off, detection, feedforward, signal-arm loss)
without going through the coefficient vectors in :mod:`noise_eater.noise`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError
from .noise import SystemParams, covariance, propagate_system, variance

MIN_SAMPLES = 100_000
CHUNK = 1_000_000
SIGMA_LIMIT = 5.0


@dataclass(frozen=True)
class OracleComparison:
    quantity: str
    analytic: float
    sampled: float
    stderr: float

    @property
    def z_score(self) -> float:
        return (self.sampled - self.analytic) / self.stderr

    @property
    def agree(self) -> bool:
        return abs(self.z_score) <= SIGMA_LIMIT


def _simulate_chunk(params: SystemParams, rng: np.random.Generator, n: int):
    x_s, x_m, x_v, x_vs, x_vm = rng.standard_normal((5, n))
    x_s *= math.sqrt(params.v_in)

    m = params.tapoff.matrix()
    sig_to = m.a * x_s + m.b * x_m + m.c * x_v
    met_to = m.d * x_s + m.e * x_m + m.f * x_v

    eta_s, eta_m, g = params.eta_s, params.eta_m, params.gain
    # beamsplitter model of detector inefficiency
    detected = math.sqrt(eta_m) * met_to + math.sqrt(1.0 - eta_m) * x_vm
    corrected = sig_to + g * detected
    sig_out = math.sqrt(eta_s) * corrected + math.sqrt(1.0 - eta_s) * x_vs
    return sig_out, detected


def sample_moments(
    params: SystemParams, samples: int, seed: int
) -> list[OracleComparison]:
    """Compare analytic ``V_s``, ``V_m`` and ``Cov(s, m)`` with sample estimates.

    Sources are zero mean, so the raw second moments are unbiased; their
    standard errors come from the sample spread of the per-draw products.
    """
    samples = int(samples)
    if samples < MIN_SAMPLES:
        raise InvalidParameterError(f"need at least {MIN_SAMPLES} samples, got {samples}")
    rng = np.random.default_rng(seed)

    sums = np.zeros(3)
    sq_sums = np.zeros(3)
    done = 0
    while done < samples:
        n = min(CHUNK, samples - done)
        s, m = _simulate_chunk(params, rng, n)
        for k, prod in enumerate((s * s, m * m, s * m)):
            sums[k] += prod.sum()
            sq_sums[k] += np.dot(prod, prod)
        done += n

    means = sums / samples
    spread = sq_sums / samples - means ** 2
    stderr = np.sqrt(spread * samples / (samples - 1) / samples)

    basis = params.basis
    signal, meter = propagate_system(params)
    analytic = (variance(signal, basis), variance(meter, basis),
                covariance(signal, meter, basis))
    names = ("v_s_out", "v_m_out", "cov_sm")
    return [OracleComparison(q, float(a), float(mu), float(se))
            for q, a, mu, se in zip(names, analytic, means, stderr)]
