from typing import Optional, Tuple

import numpy as np

from feynman_silt.errors import InputError
from feynman_silt.paths.grid import TimeGrid
from feynman_silt.paths.rng import RandomSource, make_rng

PROCESSES = ("motion", "bridge")


class PathSample(object):

    """
    Values of a one-dimensional Brownian motion or Brownian bridge on a time grid.

    A motion starts at 0. A bridge from a to b takes the values a and b exactly at both ends of the grid.
    """

    def __init__(self, grid: TimeGrid, values: np.ndarray, kind: str = "motion",
                 endpoints: Optional[Tuple[float, float]] = None) -> None:
        values = np.asarray(values, dtype=float)
        if values.shape != grid.points.shape:
            raise InputError("Expected {} values, got {}".format(len(grid), values.shape))
        if kind not in PROCESSES:
            raise InputError("Unknown process kind {}".format(kind))
        if kind == "motion" and values[0] != 0:
            raise InputError("A Brownian motion starts at 0")
        if kind == "bridge":
            if endpoints is None:
                raise InputError("A bridge needs its endpoints")
            if values[0] != endpoints[0] or values[-1] != endpoints[1]:
                raise InputError("Bridge values must hit their endpoints exactly")
        self.grid = grid
        self.values = values
        self.kind = kind
        self.endpoints = tuple(endpoints) if endpoints is not None else None

    def __repr__(self) -> str:
        return "PathSample({}, {})".format(self.kind, self.grid)


def motion_increments(grid: TimeGrid, n_paths: int, rng: RandomSource) -> np.ndarray:
    """
    Independent centered Gaussian increments with variances t_{k+1} - t_k.

    :param grid: the time grid
    :param n_paths: number of paths
    :param rng: a seeded random source
    :return: array of shape (n_paths, n)
    """
    rng = make_rng(rng)
    return rng.standard_normal((n_paths, grid.n)) * np.sqrt(np.diff(grid.points))


def sample_motion_batch(grid: TimeGrid, n_paths: int, rng: RandomSource) -> np.ndarray:
    """Values of n_paths Brownian motions, as an array of shape (n_paths, n + 1)."""
    if n_paths < 1:
        raise InputError("At least one path is required")
    values = np.zeros((n_paths, len(grid)))
    np.cumsum(motion_increments(grid, n_paths, rng), axis=1, out=values[:, 1:])
    return values


def pivot_to_bridge(motion_values: np.ndarray, grid: TimeGrid, a: float = 0., b: float = 0.) -> np.ndarray:
    """
    Pin motion values into bridge values, X_t = a(1 - t/T) + b t/T + B_t - (t/T) B_T.

    The first and last values are set to a and b exactly.

    :param motion_values: array of shape (..., n + 1) of motion values
    :param grid: the time grid
    :param a: start point
    :param b: end point
    :return: bridge values with the same shape
    """
    ratio = grid.points / grid.T
    values = a * (1 - ratio) + b * ratio + motion_values - ratio * motion_values[..., -1:]
    values[..., 0] = a
    values[..., -1] = b
    return values


def sample_bridge_batch(grid: TimeGrid, n_paths: int, rng: RandomSource, a: float = 0., b: float = 0.) \
        -> np.ndarray:
    """Values of n_paths Brownian bridges from a to b, as an array of shape (n_paths, n + 1)."""
    return pivot_to_bridge(sample_motion_batch(grid, n_paths, rng), grid, a, b)


def sample_motion(grid: TimeGrid, rng: RandomSource) -> PathSample:
    """
    Sample a Brownian motion on a grid.

    :param grid: the time grid
    :param rng: a seeded random source
    :return: a motion path starting at 0
    """
    return PathSample(grid, sample_motion_batch(grid, 1, rng)[0], "motion")


def bridge_from_motion(motion: PathSample, a: float = 0., b: float = 0.) -> PathSample:
    """Build the bridge from a to b associated with a motion sample."""
    if motion.kind != "motion":
        raise InputError("Expected a motion path")
    return PathSample(motion.grid, pivot_to_bridge(motion.values, motion.grid, a, b), "bridge", (a, b))


def sample_bridge(grid: TimeGrid, a: float, b: float, rng: RandomSource) -> PathSample:
    """
    Sample a Brownian bridge from a to b, by pivoting a motion sample.

    :param grid: the time grid
    :param a: value at time 0
    :param b: value at time T
    :param rng: a seeded random source
    :return: a bridge path
    """
    return bridge_from_motion(sample_motion(grid, rng), a, b)


def _check_times(T: float, *times: float) -> None:
    if T <= 0:
        raise InputError("Duration must be positive, got T={}".format(T))
    for t in times:
        if not 0 <= t <= T:
            raise InputError("Time {} lies outside [0, {}]".format(t, T))


def bridge_cov(s: float, t: float, T: float) -> float:
    """
    Covariance s∧t - st/T of the Brownian bridge, written (s∧t)(T - s∨t)/T so that it is exactly 0 at the pins.

    :param s: first time, in [0, T]
    :param t: second time, in [0, T]
    :param T: duration
    :return: the covariance
    """
    _check_times(T, s, t)
    return min(s, t) * (T - max(s, t)) / T


def bridge_mean(t: float, T: float, a: float, b: float) -> float:
    """Mean a(1 - t/T) + b t/T of the bridge from a to b."""
    _check_times(T, t)
    return a * (1 - t / T) + b * t / T


def motion_cov(s: float, t: float) -> float:
    if s < 0 or t < 0:
        raise InputError("Times must be nonnegative")
    return min(s, t)


def covariance_matrix(points: np.ndarray, T: float, process: str = "bridge") -> np.ndarray:
    """
    Covariance matrix of a process at given times.

    :param points: times in [0, T]
    :param T: duration
    :param process: motion or bridge
    :return: the matrix [cov(t_i, t_j)]
    """
    points = np.asarray(points, dtype=float)
    _check_times(T, float(points.min()), float(points.max()))
    cov = np.minimum.outer(points, points)
    if process == "bridge":
        cov = cov * (T - np.maximum.outer(points, points)) / T
    elif process != "motion":
        raise InputError("Unknown process {}".format(process))
    return cov
