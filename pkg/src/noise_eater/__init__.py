"""Quadrature noise model of feedforward intensity noise eaters with
beamsplitter or single-pass second harmonic tap-off."""

from .errors import (
    DegenerateSystemError,
    InvalidParameterError,
    NoiseEaterError,
    NumericalFailure,
    UndefinedReferenceError,
)
from .metrics import (
    MetricsReport,
    SNRReference,
    conditional_variance,
    correlation,
    evaluate,
    find_correlation_crossing,
    snr,
    transfer_coefficients,
)
from .noise import (
    SOURCES,
    FluctuationVector,
    NoiseBasis,
    SystemParams,
    covariance,
    propagate,
    propagate_system,
    signal_efficiency,
    to_db,
    variance,
)
from .optimizer import (
    GainCurve,
    SweepPoint,
    SweepResult,
    gain_coefficients,
    gain_scan,
    optimal_gain,
    optimal_sweep,
    variance_of_gain,
)
from .tapoff import (
    XI_MAX,
    TapOffKind,
    TapOffMatrix,
    TapOffSpec,
    bs_matrix,
    shg_matrix,
    shg_tapoff_ratio,
    xi_from_tapoff,
)

__version__ = "0.1.0"
