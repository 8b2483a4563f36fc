"""
Pair-sum estimators of the regularized self-intersection local time (SILT) of a sampled path.

With t_k = kT/n, k = 1..n, the ordered estimator is (T/n)^2 sum_{k>l} p_eps(X_{t_k} - X_{t_l}) and the
full-square estimator is twice that. Diagonal terms k = l are always excluded.
"""
import logging
from typing import NamedTuple, Tuple

import numpy as np

from feynman_silt.errors import InputError
from feynman_silt.paths.grid import TimeGrid
from feynman_silt.paths.sampling import PathSample, covariance_matrix
from feynman_silt.silt.kernels import heat_kernel

logger = logging.getLogger(__name__)

CONVENTIONS = ("ordered", "full-square")

PAIR_BLOCK = 2 ** 22
"""Maximum number of pair differences held in memory at once"""


def check_convention(convention: str) -> None:
    if convention not in CONVENTIONS:
        raise InputError("Unknown SILT convention {}, expected one of {}".format(convention, CONVENTIONS))


def convention_factor(convention: str) -> float:
    """Ratio of the convention's value to the ordered value."""
    check_convention(convention)
    return 2. if convention == "full-square" else 1.


class SiltEstimate(object):

    """A SILT value, or a Monte Carlo mean of SILT values, with its regularization and sample statistics."""

    def __init__(self, value: float, epsilon: float, convention: str, n_grid: int, n_samples: int = 1,
                 std_error: float = 0.) -> None:
        check_convention(convention)
        if value < 0 or epsilon <= 0 or std_error < 0:
            raise InputError("Invalid SILT estimate value={} eps={} std_error={}".format(value, epsilon, std_error))
        self.value = float(value)
        self.epsilon = float(epsilon)
        self.convention = convention
        self.n_grid = int(n_grid)
        self.n_samples = int(n_samples)
        self.std_error = float(std_error)

    def z_score(self, reference: float) -> float:
        """Distance to a reference value in units of the standard error."""
        if self.std_error == 0:
            return 0. if self.value == reference else np.inf
        return (self.value - reference) / self.std_error

    def to_dict(self) -> dict:
        return {"value": self.value, "epsilon": self.epsilon, "convention": self.convention,
                "n_grid": self.n_grid, "n_samples": self.n_samples, "std_error": self.std_error}

    def __repr__(self) -> str:
        return "SiltEstimate({:.6g} ± {:.2g}, eps={:g}, {}, n={}, N={})".format(
            self.value, self.std_error, self.epsilon, self.convention, self.n_grid, self.n_samples)


def _uniform_step(grid: TimeGrid) -> float:
    if not grid.is_uniform:
        raise InputError("SILT estimators require a uniform grid, got {}".format(grid))
    return grid.step


def pair_sums(values: np.ndarray, grid: TimeGrid, eps: float, convention: str = "ordered") -> np.ndarray:
    """
    Vectorized pair-sum estimator over a batch of paths.

    :param values: array of shape (n_paths, n + 1) of path values on the grid
    :param grid: a uniform time grid
    :param eps: regularization [space^2], positive
    :param convention: ordered or full-square
    :return: array of n_paths estimates
    """
    factor = convention_factor(convention)
    step = _uniform_step(grid)
    if not np.isfinite(eps) or eps <= 0:
        raise InputError("Pair sums need eps > 0, got {}".format(eps))
    values = np.atleast_2d(np.asarray(values, dtype=float))
    x = values[:, 1:]
    n = x.shape[1]
    rows, cols = np.tril_indices(n, -1)
    sums = np.zeros(x.shape[0])
    if rows.size == 0:
        return sums
    chunk = max(1, PAIR_BLOCK // rows.size)
    for start in range(0, x.shape[0], chunk):
        block = x[start:start + chunk]
        sums[start:start + chunk] = heat_kernel(block[:, rows] - block[:, cols], eps).sum(axis=1)
    return factor * step ** 2 * sums


def silt_pair_sum(path: PathSample, eps: float, convention: str = "ordered") -> float:
    """
    Regularized SILT of a sampled path.

    :param path: a path on a uniform grid
    :param eps: regularization [space^2], positive
    :param convention: ordered (pairs s < t) or full-square (all pairs s != t, twice the ordered value)
    :return: the estimate
    """
    return float(pair_sums(path.values[np.newaxis], path.grid, eps, convention)[0])


class OccupationResult(NamedTuple):
    value: float
    degenerate: bool


def matched_epsilon(bin_width: float) -> float:
    """Kernel variance matching the shift-averaged occupation bins of a given width."""
    return bin_width ** 2 / 6


def silt_local_time_oracle(path: PathSample, bin_width: float, shifts: int = 4) -> OccupationResult:
    """
    Full-square SILT computed as the integral of the squared occupation density.

    The occupation time of each spatial bin is accumulated from the grid samples, self-pairs are removed, and the
    result is averaged over several shifted bin origins. A constant path puts all its mass in one bin: the value then
    scales as T^2 / bin_width and the result is flagged as degenerate.

    :param path: a path on a uniform grid
    :param bin_width: width of the spatial bins, positive
    :param shifts: number of shifted bin origins to average over
    :return: the estimate and the degeneracy flag
    """
    if not np.isfinite(bin_width) or bin_width <= 0:
        raise InputError("Bin width must be positive, got {}".format(bin_width))
    if shifts < 1:
        raise InputError("At least one bin origin is required")
    step = _uniform_step(path.grid)
    x = path.values[1:]
    degenerate = bool(np.ptp(x) == 0)
    if degenerate:
        logger.warning("Constant path: the occupation density is a point mass, value scales as 1/bin_width")
    values = []
    for j in range(shifts):
        bins = np.floor((x - x.min() + j * bin_width / shifts) / bin_width).astype(np.int64)
        occupation = step * np.bincount(bins)
        values.append((np.sum(occupation ** 2) - x.size * step ** 2) / bin_width)
    return OccupationResult(float(np.mean(values)), degenerate)


def _pair_indices(n: int) -> Tuple[np.ndarray, np.ndarray]:
    rows, cols = np.tril_indices(n, -1)
    return rows + 1, cols + 1


def pair_sum_moments(T: float, n: int, eps: float, process: str = "bridge", convention: str = "ordered",
                     second: bool = True) -> Tuple[float, float]:
    """
    Exact first and second moments of the pair-sum estimator on a uniform grid with n intervals.

    These are the expectations of the discrete estimator itself, without any discretization error, and serve as
    Monte Carlo oracles. The second moment costs O(n^4) operations.

    :param T: duration
    :param n: number of grid intervals
    :param eps: regularization, positive
    :param process: motion or bridge, centered
    :param convention: ordered or full-square
    :param second: whether to compute the second moment
    :return: (mean, second moment), the latter being nan when not requested
    """
    factor = convention_factor(convention)
    if eps <= 0:
        raise InputError("Pair sums need eps > 0, got {}".format(eps))
    grid = TimeGrid.uniform(T, n)
    h = grid.step
    cov = covariance_matrix(grid.points, T, process)
    k, l = _pair_indices(n)
    variances = cov[k, k] + cov[l, l] - 2 * cov[k, l]
    mean = h ** 2 * np.sum(1 / np.sqrt(2 * np.pi * (variances + eps)))
    if not second:
        return factor * float(mean), np.nan
    total = 0.
    chunk = max(1, PAIR_BLOCK // k.size)
    for start in range(0, k.size, chunk):
        kp, lp = k[start:start + chunk, None], l[start:start + chunk, None]
        cross = cov[kp, k] - cov[kp, l] - cov[lp, k] + cov[lp, l]
        det = (variances[start:start + chunk, None] + eps) * (variances[None, :] + eps) - cross ** 2
        total += np.sum(1 / np.sqrt(det))
    second_moment = h ** 4 * total / (2 * np.pi)
    return factor * float(mean), factor ** 2 * float(second_moment)
