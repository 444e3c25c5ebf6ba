"""Exception types raised by the noise eater model."""


class NoiseEaterError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParameterError(NoiseEaterError, ValueError):
    """A physical parameter lies outside its allowed domain."""


class UndefinedReferenceError(NoiseEaterError, ValueError):
    """The input signal carries no excess noise, so no reference SNR exists."""


class DegenerateSystemError(NoiseEaterError, ArithmeticError):
    """A quantity needed as a divisor vanishes (zero variance, zero curvature)."""


class NumericalFailure(NoiseEaterError, ArithmeticError):
    """A computed result is NaN or infinite."""
