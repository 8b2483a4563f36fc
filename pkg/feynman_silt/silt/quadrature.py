"""
Deterministic moment quadratures of the regularized SILT.

The mean reduces to a one-dimensional integral over the lag u = t - s. The second moment is an integral over pairs
of ordered time pairs (s1 < t1, s2 < t2), split into three regions of the half-domain t1 < t2:

- D1: disjoint intervals, s1 < t1 < s2 < t2, overlap m = 0,
- D2: crossing intervals, s1 < s2 < t1 < t2, overlap m = t1 - s2,
- D3: nested intervals, s2 < s1 < t1 < t2, overlap m = t1 - s1.

Within each region the integrand only depends on the lengths u1, u2 and on the overlap m. The integrals over
positions and over m are done in closed form, leaving an adaptive two-dimensional quadrature over (u1, u2), with the
substitution u = v^2 absorbing the u^{-1/2} singularities of the diagonal.
"""
import logging
import math
import warnings
from typing import Callable, Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from scipy import integrate

from feynman_silt.errors import InputError, QuadratureError
from feynman_silt.paths.sampling import PROCESSES, covariance_matrix
from feynman_silt.silt.estimators import convention_factor

logger = logging.getLogger(__name__)

REGIONS = ("D1", "D2", "D3")

DEFAULT_RTOL = 1e-8
ABS_FLOOR = 1e-12
WARNING_SLACK = 1e3
"""An integration warning is tolerated when the error estimate stays below this multiple of the target"""


class OverlapGeometry(NamedTuple):
    s1: float
    t1: float
    s2: float
    t2: float
    m: float
    region: str


def _check_process(process: str) -> None:
    if process not in PROCESSES:
        raise InputError("Unknown process {}, expected one of {}".format(process, PROCESSES))


def _checked_quad(integrator: Callable, description: str, rtol: float, atol: float, *args, **kwargs) \
        -> Tuple[float, float]:
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", integrate.IntegrationWarning)
        value, abserr = integrator(*args, **kwargs)
    target = max(rtol * abs(value), atol)
    if not np.isfinite(value) or (caught and abserr > WARNING_SLACK * target):
        raise QuadratureError("Quadrature of {} did not converge".format(description), abserr)
    if caught:
        logger.warning("Quadrature of {}: {} (error estimate {:.2e})".format(
            description, caught[0].message, abserr))
    return value, abserr


def mean_silt_closed_form(T: float, process: str = "bridge", convention: str = "ordered") -> float:
    """
    The eps -> 0 limit of the mean SILT, a Beta integral.

    :param T: duration
    :param process: motion or bridge (centered)
    :param convention: ordered or full-square
    :return: sqrt(pi / 8) T^{3/2} for the bridge, 4 T^{3/2} / (3 sqrt(2 pi)) for the motion, times the convention
    """
    _check_process(process)
    if T <= 0:
        raise InputError("Duration must be positive, got T={}".format(T))
    value = np.sqrt(np.pi / 8) if process == "bridge" else 4 / (3 * np.sqrt(2 * np.pi))
    return convention_factor(convention) * value * T ** 1.5


def mean_silt_quadrature(T: float, eps: float, process: str = "bridge", convention: str = "ordered",
                         a: float = 0., b: float = 0., rtol: float = DEFAULT_RTOL) -> float:
    """
    Mean of the regularized SILT, E int int_{s<t} p_eps(X_t - X_s) ds dt.

    Uses E p_eps(X_t - X_s) = (2 pi (sigma^2 + eps))^{-1/2} exp(-mu^2 / 2 (sigma^2 + eps)) where the increment has
    variance sigma^2 = u (T - u) / T (bridge) or u (motion) and mean mu = (b - a) u / T (bridge only), with u = t - s.

    :param T: duration
    :param eps: regularization, eps = 0 is allowed
    :param process: motion or bridge
    :param convention: ordered or full-square
    :param a: bridge start point
    :param b: bridge end point
    :param rtol: relative tolerance
    :return: the mean
    """
    _check_process(process)
    factor = convention_factor(convention)
    if T <= 0 or not np.isfinite(T):
        raise InputError("Duration must be positive, got T={}".format(T))
    if eps < 0 or not np.isfinite(eps):
        raise InputError("Regularization must be nonnegative, got {}".format(eps))
    drift = (b - a) / T if process == "bridge" else 0.

    def integrand(v: float) -> float:
        u = v * v
        variance = (u * (T - u) / T if process == "bridge" else u) + eps
        if variance <= 0:
            return 0.
        return 2 * v * (T - u) * math.exp(-(drift * u) ** 2 / (2 * variance)) / math.sqrt(2 * math.pi * variance)

    points = [math.sqrt(eps)] if 0 < eps < T else None
    value, _ = _checked_quad(integrate.quad, "the mean SILT", rtol, ABS_FLOOR, integrand, 0., math.sqrt(T),
                             epsabs=0., epsrel=rtol, limit=200, points=points)
    return factor * value


def overlap_length(s1: float, t1: float, s2: float, t2: float) -> OverlapGeometry:
    """
    Length of the intersection of [s1, t1] and [s2, t2], and the region of the pair configuration.

    The pairs are first ordered by their right end. Then D1 means disjoint, D2 crossing and D3 nested.

    :return: the overlap geometry
    """
    if not (s1 < t1 and s2 < t2):
        raise InputError("Degenerate intervals [{}, {}], [{}, {}]".format(s1, t1, s2, t2))
    (a1, b1), (a2, b2) = sorted([(s1, t1), (s2, t2)], key=lambda pair: pair[1])
    if b1 <= a2:
        region, m = "D1", 0.
    elif a1 < a2:
        region, m = "D2", b1 - a2
    else:
        region, m = "D3", b1 - a1
    return OverlapGeometry(s1, t1, s2, t2, float(m), region)


def _check_intervals(T: float, *times: float) -> None:
    if T <= 0:
        raise InputError("Duration must be positive, got T={}".format(T))
    if any(not 0 <= t <= T for t in times):
        raise InputError("Times {} must lie in [0, {}]".format(times, T))


def increment_covariance(s1: float, t1: float, s2: float, t2: float, T: float, process: str = "bridge") \
        -> np.ndarray:
    """
    Covariance matrix of the increments (X_{t1} - X_{s1}, X_{t2} - X_{s2}), assembled from the process covariance.
    """
    _check_intervals(T, s1, t1, s2, t2)
    cov = covariance_matrix(np.array([s1, t1, s2, t2]), T, process)
    weights = np.array([[-1., 1., 0., 0.], [0., 0., -1., 1.]])
    return weights @ cov @ weights.T


def increment_cov_det(s1: float, t1: float, s2: float, t2: float, T: float) -> float:
    """
    Determinant of the covariance of two bridge increments.

    det = [(t1 - s1)(t2 - s2)(T - (t1 - s1) - (t2 - s2) + 2m) - T m^2] / T, with m the overlap length.
    """
    _check_intervals(T, s1, t1, s2, t2)
    m = overlap_length(s1, t1, s2, t2).m
    u1, u2 = t1 - s1, t2 - s2
    return (u1 * u2 * (T - u1 - u2 + 2 * m) - T * m ** 2) / T


def inverse_sqrt_quadratic_integral(b: float, c: float, lo: Optional[float] = None, hi: Optional[float] = None) \
        -> float:
    """
    Integral of p(x)^{-1/2} for p(x) = -x^2 + b x + c over an interval where p >= 0.

    The value is an arcsine difference, bounded by pi, which is reached on the whole interval between the roots.

    :param b: linear coefficient
    :param c: constant coefficient
    :param lo: lower bound, defaults to the smaller root
    :param hi: upper bound, defaults to the larger root
    :return: the integral
    """
    radius_sq = b * b / 4 + c
    if radius_sq <= 0:
        raise InputError("The polynomial has no positive part")
    centre, radius = b / 2, math.sqrt(radius_sq)
    lo = centre - radius if lo is None else lo
    hi = centre + radius if hi is None else hi
    if lo > hi or lo < centre - radius * (1 + 1e-12) or hi > centre + radius * (1 + 1e-12):
        raise InputError("Interval [{}, {}] leaves the positive part of the polynomial".format(lo, hi))
    return math.asin(min(1., (hi - centre) / radius)) - math.asin(max(-1., (lo - centre) / radius))


class _Regularization(NamedTuple):
    weight: float
    eps: float
    delta: float


class _RegionDensity(object):

    """
    Integrand over (u1, u2) of det(Sigma + diag(eps, delta))^{-1/2} for one region, positions and overlap integrated.
    """

    def __init__(self, region: str, T: float, process: str, terms: Sequence[_Regularization]) -> None:
        self.region = region
        self.T = T
        self.bridge = process == "bridge"
        self.terms = list(terms)

    def variance(self, u: float) -> float:
        return u * (self.T - u) / self.T if self.bridge else u

    def __call__(self, u1: float, u2: float) -> float:
        T = self.T
        v1, v2 = self.variance(u1), self.variance(u2)
        total = 0.
        if self.region == "D1":
            base = u1 * u2 * (T - u1 - u2) / T if self.bridge else u1 * u2
            for term in self.terms:
                det = base + term.eps * v2 + term.delta * v1 + term.eps * term.delta
                total += term.weight / math.sqrt(det)
            return total * (T - u1 - u2) ** 2 / 2
        if self.region == "D3":
            base = u1 * (u2 - u1) * (T - u2) / T if self.bridge else u1 * (u2 - u1)
            for term in self.terms:
                det = base + term.eps * v2 + term.delta * v1 + term.eps * term.delta
                total += term.weight / math.sqrt(det)
            return total * (u2 - u1) * (T - u2)
        # D2: det(m) = R^2 - (m - p)^2, integrated against the positional weight T - u1 - u2 + m
        p = u1 * u2 / T if self.bridge else 0.
        base = u1 * u2 * (T - u1) * (T - u2) / T ** 2 if self.bridge else u1 * u2
        lo, hi = max(0., u1 + u2 - T), min(u1, u2)
        if hi <= lo:
            return 0.
        alpha = T - u1 - u2 + p
        for term in self.terms:
            radius_sq = base + term.eps * v2 + term.delta * v1 + term.eps * term.delta
            if radius_sq <= 0:
                continue
            radius = math.sqrt(radius_sq)
            x_lo = max(-1., min(1., (lo - p) / radius))
            x_hi = max(-1., min(1., (hi - p) / radius))
            arc = math.asin(x_hi) - math.asin(x_lo)
            chord = radius * (math.sqrt(max(0., 1 - x_lo * x_lo)) - math.sqrt(max(0., 1 - x_hi * x_hi)))
            total += term.weight * (alpha * arc + chord)
        return total

    def substituted(self, y: float, x: float) -> float:
        """The integrand in the variables u1 = x^2, u2 = y^2, in scipy's inner-first argument order."""
        if x <= 0 or y <= 0:
            return 0.
        return 4 * x * y * self(x * x, y * y)

    def ranges(self) -> List:
        root = math.sqrt(self.T)
        if self.region == "D1":
            inner = lambda x: [0., math.sqrt(max(0., self.T - x * x))]
        elif self.region == "D3":
            inner = lambda x: [x, root]
        else:
            inner = [0., root]
        return [inner, [0., root]]

    def options(self, rtol: float, atol: float) -> List:
        options = {"epsabs": atol, "epsrel": rtol, "limit": 200}
        if self.region != "D2":
            return [options, options]
        # kinks of the overlap range at u1 = u2 and u1 + u2 = T
        root = math.sqrt(self.T)

        def inner(x: float) -> dict:
            kinks = (x, math.sqrt(max(0., self.T - x * x)))
            return dict(options, points=[pt for pt in kinks if 0 < pt < root])
        return [inner, options]


def _integrate_regions(T: float, process: str, terms: Sequence[_Regularization], rtol: float, atol: float,
                       description: str) -> Dict[str, float]:
    _check_process(process)
    if T <= 0 or not np.isfinite(T):
        raise InputError("Duration must be positive, got T={}".format(T))
    results = {}
    for region in REGIONS:
        density = _RegionDensity(region, T, process, terms)
        try:
            value, abserr = _checked_quad(integrate.nquad, "{} over {}".format(description, region), rtol, atol,
                                          density.substituted, density.ranges(), opts=density.options(rtol, atol))
        except QuadratureError as error:
            raise QuadratureError("Quadrature of {} failed over {}".format(description, region), error.achieved,
                                  partial=results)
        logger.info("{} over {}: {:.10g} (error estimate {:.2e})".format(description, region, value, abserr))
        results[region] = value
    return results


def _check_regularizer(value: float, allow_zero: bool = True) -> None:
    if not np.isfinite(value) or value < 0 or (value == 0 and not allow_zero):
        raise InputError("Invalid regularization {}".format(value))


def gamma2_regions(T: float, eps: float = 0., delta: Optional[float] = None, process: str = "bridge",
                   rtol: float = DEFAULT_RTOL) -> Dict[str, float]:
    """
    The region integrals gamma_2^l = 2 pi int_{D_l} det(Sigma + diag(eps, delta))^{-1/2}.

    Pair 1 (the one with the smaller right end) carries eps and pair 2 carries delta. For eps = delta = 0 and the
    bridge, gamma_2^1 = 2 pi^2 T^3 / 5.

    :param T: duration
    :param eps: regularization of pair 1
    :param delta: regularization of pair 2, defaults to eps
    :param process: motion or bridge
    :param rtol: relative tolerance
    :return: a dict region -> gamma_2^l
    """
    delta = eps if delta is None else delta
    _check_regularizer(eps)
    _check_regularizer(delta)
    regions = _integrate_regions(T, process, [_Regularization(1., eps, delta)], rtol, ABS_FLOOR, "gamma_2")
    return {region: 2 * np.pi * value for region, value in regions.items()}


def second_moment_quadrature(T: float, eps: float, delta: Optional[float] = None, process: str = "bridge",
                             convention: str = "ordered", rtol: float = DEFAULT_RTOL) -> float:
    """
    Second moment E[I_eps I_delta] of the regularized SILT, centered process.

    The half-domain t1 < t2 is integrated once with (eps, delta) and once with the regularizers swapped, which covers
    the whole domain of pairs of ordered pairs. For eps = delta this is gamma_2 / (2 pi^2).

    :param T: duration
    :param eps: regularization of the first factor, eps = 0 allowed
    :param delta: regularization of the second factor, defaults to eps
    :param process: motion or bridge
    :param convention: ordered or full-square
    :param rtol: relative tolerance
    :return: the second moment
    """
    delta = eps if delta is None else delta
    _check_regularizer(eps)
    _check_regularizer(delta)
    factor = convention_factor(convention)
    terms = [_Regularization(1., eps, delta), _Regularization(1., delta, eps)]
    regions = _integrate_regions(T, process, terms, rtol, ABS_FLOOR, "the second moment")
    return factor ** 2 * sum(regions.values()) / (2 * np.pi)


def cauchy_gap(T: float, eps: float, delta: float, process: str = "bridge", rtol: float = DEFAULT_RTOL,
               atol: float = 1e-10) -> float:
    """
    L^2 distance E[(I_eps - I_delta)^2] between two regularizations of the ordered SILT.

    The three terms E I_eps^2 + E I_delta^2 - 2 E[I_eps I_delta] are combined inside a single integrand, so that they
    cancel pointwise rather than after integration.

    :param T: duration
    :param eps: first regularization, positive
    :param delta: second regularization, positive
    :param process: motion or bridge
    :param rtol: relative tolerance
    :param atol: absolute tolerance
    :return: the gap, nonnegative
    """
    _check_regularizer(eps, allow_zero=False)
    _check_regularizer(delta, allow_zero=False)
    if eps == delta:
        return 0.
    eps, delta = sorted((eps, delta))
    terms = [_Regularization(2., eps, eps), _Regularization(2., delta, delta),
             _Regularization(-2., eps, delta), _Regularization(-2., delta, eps)]
    regions = _integrate_regions(T, process, terms, rtol, atol, "the Cauchy gap")
    gap = sum(regions.values()) / (2 * np.pi)
    if gap < -WARNING_SLACK * atol:
        raise QuadratureError("Negative Cauchy gap {:.3e}".format(gap), abs(gap), partial=regions)
    return max(gap, 0.)
