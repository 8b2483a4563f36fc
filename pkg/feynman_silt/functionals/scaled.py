"""
Complex-scaled exponential functionals of the SILT and the Feynman propagator with coincident end points.

With g = k / 2 hbar the coupling and z = -g i^{-1/2} the scaled exponent (principal branch, Re i^{-1/2} >= 0), the
propagator reads K(x0, T; x0, 0) = (2 pi i T)^{-1/2} E[exp(z I)] where I is the full-square SILT of the Brownian
bridge from x0 to x0.
"""
import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np

from feynman_silt import utils
from feynman_silt.errors import InputError, UnsupportedCaseError
from feynman_silt.silt.montecarlo import SiltSampling, silt_samples

logger = logging.getLogger(__name__)

MODULUS_SLACK = 1e-12
"""Rounding slack when checking that a summand lies in the unit disk"""


class CouplingParams(object):

    """Physical parameters of the propagator: coupling g, duration T, start point x0 and end point xT."""

    def __init__(self, g: float, T: float, x0: float = 0., xT: Optional[float] = None) -> None:
        if not np.isfinite(g) or g < 0:
            raise InputError("The coupling must be nonnegative, got g={}".format(g))
        if not np.isfinite(T) or T <= 0:
            raise InputError("Duration must be positive, got T={}".format(T))
        self.g = float(g)
        self.T = float(T)
        self.x0 = float(x0)
        self.xT = self.x0 if xT is None else float(xT)

    def to_dict(self) -> dict:
        return {"g": self.g, "T": self.T, "x0": self.x0, "xT": self.xT}

    def __repr__(self) -> str:
        return "CouplingParams(g={}, T={}, x0={}, xT={})".format(self.g, self.T, self.x0, self.xT)


class ComplexEstimate(object):

    """Monte Carlo estimate of a complex expectation."""

    def __init__(self, value: complex, std_error: float, n_samples: int, epsilon: float, n_grid: int,
                 max_modulus: float = 1., modulus_violations: int = 0) -> None:
        self.value = complex(value)
        self.std_error = float(std_error)
        self.n_samples = int(n_samples)
        self.epsilon = float(epsilon)
        self.n_grid = int(n_grid)
        self.max_modulus = float(max_modulus)
        self.modulus_violations = int(modulus_violations)

    def to_dict(self) -> dict:
        return {"value_re": self.value.real, "value_im": self.value.imag, "std_error": self.std_error,
                "n_samples": self.n_samples, "epsilon": self.epsilon, "n_grid": self.n_grid,
                "max_modulus": self.max_modulus, "modulus_violations": self.modulus_violations}

    def __repr__(self) -> str:
        return "ComplexEstimate({:.6g} ± {:.2g}, eps={:g}, n={}, N={})".format(
            self.value, self.std_error, self.epsilon, self.n_grid, self.n_samples)


def scaled_exponent(g: float) -> complex:
    """
    The exponent z = -g i^{-1/2} = -g e^{-i pi/4}.

    :param g: coupling, nonnegative
    :return: z, with Re z = -g / sqrt(2) and Im z = g / sqrt(2)
    """
    if not np.isfinite(g) or g < 0:
        raise InputError("The coupling must be nonnegative, got g={}".format(g))
    if g == 0:
        return 0j
    return complex(-g / np.sqrt(2), g / np.sqrt(2))


def free_propagator(T: float, x0: float = 0., xT: float = 0.) -> complex:
    """Free kernel (2 pi i T)^{-1/2} exp(-(xT - x0)^2 / 2 i T) on the principal branch."""
    if T <= 0:
        raise InputError("Duration must be positive, got T={}".format(T))
    return utils.principal_inverse_sqrt(2j * np.pi * T) * np.exp(-(xT - x0) ** 2 / (2j * T))


def exp_silt_mc(params: CouplingParams, eps: float, grid_n: int, n_samples: int, seed: int,
                convention: str = "full-square", process: str = "bridge", exponent: Optional[complex] = None,
                n_shards: int = 1, workers: int = 1, stream: int = 0) -> ComplexEstimate:
    """
    Monte Carlo estimate of E[exp(z I_eps)] for the pair-sum SILT.

    The bridge (process "bridge") is pinned at x0 at both ends. The motion (process "motion") starts from x0. Since
    the SILT only depends on differences of the path, x0 does not change the value.

    :param params: the coupling parameters, z = scaled_exponent(g)
    :param eps: regularization, positive
    :param grid_n: number of grid intervals
    :param n_samples: number of paths
    :param seed: experiment seed
    :param convention: full-square (default) or ordered
    :param process: bridge or motion
    :param exponent: an explicit exponent overriding z, e.g. a real negative one
    :param n_shards: number of shards
    :param workers: number of worker processes
    :param stream: index of the estimated quantity
    :return: the estimate
    """
    z = scaled_exponent(params.g) if exponent is None else complex(exponent)
    if z.real > 0:
        raise InputError("The exponent must have a nonpositive real part, got {}".format(z))
    job = SiltSampling(params.T, eps, grid_n, process, convention, params.x0, params.x0)
    if z == 0:
        if eps <= 0:
            raise InputError("Pair sums need eps > 0, got {}".format(eps))
        return ComplexEstimate(1 + 0j, 0., n_samples, eps, grid_n)
    summands = np.exp(z * silt_samples(job, n_samples, seed, n_shards, workers, stream))
    moduli = np.abs(summands)
    violations = int(np.count_nonzero(moduli > 1 + MODULUS_SLACK))
    if violations:
        logger.warning("{} summands lie outside the unit disk".format(violations))
    return ComplexEstimate(np.mean(summands), utils.standard_error(summands), summands.size, eps, grid_n,
                           max_modulus=float(moduli.max()), modulus_violations=violations)


def richardson_extrapolate(values: Sequence[complex], eps_schedule: Sequence[float], order: float = 0.5,
                           std_errors: Optional[Sequence[float]] = None) -> Tuple[complex, float]:
    """
    Extrapolate a sequence of estimates to eps = 0, assuming an error of the form C eps^order.

    Only the last two points of the schedule are combined.

    :param values: estimates along the schedule
    :param eps_schedule: the regularizations, decreasing
    :param order: assumed convergence order
    :param std_errors: standard errors of the estimates, assumed independent
    :return: the extrapolated value and its standard error
    """
    if len(values) != len(eps_schedule) or not values:
        raise InputError("Expected one value per regularization")
    std_errors = [0.] * len(values) if std_errors is None else list(std_errors)
    if len(values) == 1:
        logger.warning("A single regularization cannot be extrapolated, returning the raw estimate")
        return complex(values[0]), float(std_errors[0])
    ratio = (eps_schedule[-1] / eps_schedule[-2]) ** order
    value = (complex(values[-1]) - ratio * complex(values[-2])) / (1 - ratio)
    error = np.hypot(std_errors[-1], ratio * std_errors[-2]) / (1 - ratio)
    return value, float(error)


class PropagatorEstimate(object):

    """The extrapolated propagator, with the raw sequence of expectations along the eps schedule."""

    def __init__(self, params: CouplingParams, prefactor: complex, expectation: complex, std_error: float,
                 sequence: List[ComplexEstimate], order: float) -> None:
        self.params = params
        self.prefactor = prefactor
        self.expectation = expectation
        self.value = prefactor * expectation
        self.std_error = abs(prefactor) * std_error
        self.sequence = sequence
        self.order = order

    @property
    def eps_schedule(self) -> List[float]:
        return [estimate.epsilon for estimate in self.sequence]

    @property
    def raw_values(self) -> List[complex]:
        """Propagator values before extrapolation, one per regularization."""
        return [self.prefactor * estimate.value for estimate in self.sequence]

    @property
    def gaps(self) -> List[float]:
        """Distances between successive raw propagator values."""
        raw = self.raw_values
        return [abs(b - a) for a, b in zip(raw[:-1], raw[1:])]

    def __repr__(self) -> str:
        return "PropagatorEstimate({:.6g} ± {:.2g}, {})".format(self.value, self.std_error, self.params)


def propagator(params: CouplingParams, eps_schedule: Sequence[float], grid_n: int, n_samples: int, seed: int,
               convention: str = "full-square", order: float = 0.5, n_shards: int = 1, workers: int = 1) \
        -> PropagatorEstimate:
    """
    Feynman propagator K(x0, T; x0, 0) with SILT interaction.

    The prefactor is evaluated exactly. The expectation is estimated for each regularization, with the same random
    paths along the schedule, and extrapolated to eps = 0.

    :param params: the coupling parameters, with xT = x0
    :param eps_schedule: decreasing regularizations
    :param grid_n: number of grid intervals
    :param n_samples: number of paths
    :param seed: experiment seed
    :param convention: SILT convention, full-square by default
    :param order: assumed convergence order in eps
    :param n_shards: number of shards
    :param workers: number of worker processes
    :return: the propagator estimate
    """
    if params.xT != params.x0:
        raise UnsupportedCaseError("Only coincident end points are supported, got x0={} xT={}".format(
            params.x0, params.xT))
    eps_schedule = [float(eps) for eps in eps_schedule]
    if not eps_schedule or any(eps <= 0 for eps in eps_schedule):
        raise InputError("The eps schedule must be made of positive values")
    if any(b >= a for a, b in zip(eps_schedule[:-1], eps_schedule[1:])):
        raise InputError("The eps schedule must be decreasing, got {}".format(eps_schedule))
    sequence = [exp_silt_mc(params, eps, grid_n, n_samples, seed, convention=convention, n_shards=n_shards,
                            workers=workers)
                for eps in eps_schedule]
    expectation, error = richardson_extrapolate([estimate.value for estimate in sequence], eps_schedule, order,
                                                [estimate.std_error for estimate in sequence])
    prefactor = free_propagator(params.T, params.x0, params.xT)
    logger.info("Propagator at {}: expectation {:.6g} from {}".format(params, expectation,
                                                                       [e.value for e in sequence]))
    return PropagatorEstimate(params, prefactor, expectation, error, sequence, order)
