"""Tap-off stage transfer matrices.

Two lossless tap-off processes are modelled: a plain beamsplitter and
single-pass second harmonic generation followed by a dichroic mirror.
Both map the amplitude-quadrature fluctuations of (signal in, meter in,
tap-off loss vacuum) onto (signal, meter) immediately after the stage.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError

#: Largest interaction strength accepted; sech^2(7) ~ 3.3e-6.
XI_MAX = 7.0


class TapOffKind(str, enum.Enum):
    BEAMSPLITTER = "bs"
    SECOND_HARMONIC = "shg"


@dataclass(frozen=True)
class TapOffMatrix:
    """Real 2x3 transfer matrix ``[[a, b, c], [d, e, f]]``.

    Rows are the (signal, meter) outputs, columns the (signal in, meter in,
    tap-off vacuum) inputs.
    """

    a: float
    b: float
    c: float
    d: float
    e: float
    f: float

    def __post_init__(self):
        if not all(math.isfinite(x) for x in self.entries()):
            raise InvalidParameterError(f"non-finite tap-off matrix entry: {self}")

    def entries(self) -> tuple[float, ...]:
        return (self.a, self.b, self.c, self.d, self.e, self.f)

    def as_array(self) -> np.ndarray:
        return np.array(self.entries()).reshape(2, 3)

    def scaled(self, s: float) -> TapOffMatrix:
        return TapOffMatrix(*(s * x for x in self.entries()))


def _check_eta(eta: float) -> float:
    eta = float(eta)
    if not 0.0 < eta <= 1.0:
        raise InvalidParameterError(f"tap-off ratio must lie in (0, 1], got {eta!r}")
    return eta


def _check_xi(xi: float) -> float:
    xi = float(xi)
    if not 0.0 <= xi <= XI_MAX:
        raise InvalidParameterError(
            f"interaction strength must lie in [0, {XI_MAX}], got {xi!r}")
    return xi


def bs_matrix(eta: float) -> TapOffMatrix:
    """Lossless beamsplitter with power transmission ``eta`` into the signal arm."""
    eta = _check_eta(eta)
    t = math.sqrt(eta)
    r = math.sqrt(1.0 - eta)
    return TapOffMatrix(t, -r, 0.0, r, t, 0.0)


def shg_matrix(xi: float) -> TapOffMatrix:
    """Lossless single-pass SHG at normalized interaction strength ``xi``.

    The signal output is the depleted fundamental and the meter output is
    the generated second harmonic.
    """
    xi = _check_xi(xi)
    sech = 1.0 / math.cosh(xi)
    tanh = math.tanh(xi)
    return TapOffMatrix(
        a=(1.0 - xi * tanh) * sech,
        b=math.sqrt(2.0) * tanh * sech,
        c=0.0,
        d=-(tanh + xi * sech * sech) / math.sqrt(2.0),
        e=sech * sech,
        f=0.0,
    )


def shg_tapoff_ratio(xi: float) -> float:
    """Fraction of fundamental power surviving the SHG stage, ``sech(xi)**2``."""
    xi = _check_xi(xi)
    return 1.0 / math.cosh(xi) ** 2


def xi_from_tapoff(eta: float) -> float:
    """Interaction strength that leaves a fraction ``eta`` of the fundamental.

    Inverse of :func:`shg_tapoff_ratio`. ``arccosh(1/sqrt(eta))`` is written as
    ``asinh(sqrt((1 - eta)/eta))``, which avoids cancellation as ``eta -> 1``.
    """
    eta = _check_eta(eta)
    return math.asinh(math.sqrt((1.0 - eta) / eta))


@dataclass(frozen=True)
class TapOffSpec:
    """Which tap-off process to use and its operating point.

    ``parameter`` is the transmission ``eta`` for a beamsplitter and the
    interaction strength ``xi`` for second harmonic generation.
    """

    kind: TapOffKind
    parameter: float

    def __post_init__(self):
        object.__setattr__(self, "kind", TapOffKind(self.kind))
        if self.kind is TapOffKind.BEAMSPLITTER:
            _check_eta(self.parameter)
        else:
            _check_xi(self.parameter)

    @classmethod
    def beamsplitter(cls, eta: float) -> TapOffSpec:
        return cls(TapOffKind.BEAMSPLITTER, eta)

    @classmethod
    def second_harmonic(cls, xi: float) -> TapOffSpec:
        return cls(TapOffKind.SECOND_HARMONIC, xi)

    @classmethod
    def at_tapoff(cls, kind: TapOffKind | str, tapoff: float) -> TapOffSpec:
        """Build a spec that diverts a fraction ``tapoff = 1 - eta`` of the power."""
        kind = TapOffKind(kind)
        tapoff = float(tapoff)
        if not 0.0 <= tapoff < 1.0:
            raise InvalidParameterError(f"tap-off fraction must lie in [0, 1), got {tapoff!r}")
        eta = 1.0 - tapoff
        if kind is TapOffKind.BEAMSPLITTER:
            return cls.beamsplitter(eta)
        return cls.second_harmonic(xi_from_tapoff(eta))

    @property
    def eta(self) -> float:
        if self.kind is TapOffKind.BEAMSPLITTER:
            return float(self.parameter)
        return shg_tapoff_ratio(self.parameter)

    @property
    def xi(self) -> float | None:
        return float(self.parameter) if self.kind is TapOffKind.SECOND_HARMONIC else None

    def matrix(self) -> TapOffMatrix:
        if self.kind is TapOffKind.BEAMSPLITTER:
            return bs_matrix(self.parameter)
        return shg_matrix(self.parameter)
