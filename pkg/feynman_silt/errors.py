from typing import Dict, Optional


class SiltError(Exception):
    """Base class of every error raised by feynman_silt."""


class InputError(SiltError, ValueError):
    """Invalid argument: bad grid, regularizer, interval, basis or branch cut."""


class PreconditionError(InputError):
    """A mathematical precondition of the operation does not hold."""


class DegreeOverflowError(InputError):
    """A chaos product produced a kernel above the degree cap."""


class ConfigError(InputError):
    """Unparseable or inconsistent experiment configuration."""


class ManifestError(InputError):
    """Missing or corrupt run manifest."""


class UnsupportedCaseError(SiltError, NotImplementedError):
    """The request lies outside the cases the construction covers."""


class QuadratureError(SiltError, ArithmeticError):

    """
    A deterministic quadrature did not reach its tolerance.

    :param message: description of the failing integral
    :param achieved: the absolute error estimate that was reached
    :param partial: partial results, keyed by integration region
    """

    def __init__(self, message: str, achieved: float, partial: Optional[Dict[str, float]] = None) -> None:
        super().__init__("{} (achieved absolute error {:.3e})".format(message, achieved))
        self.achieved = achieved
        self.partial = dict(partial or {})
