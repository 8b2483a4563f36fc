from typing import Sequence

import numpy as np

from feynman_silt import utils
from feynman_silt.errors import InputError


class TimeGrid(object):

    """
    A partition 0 = t_0 < t_1 < ... < t_n = T of the interval [0, T].

    Paths are sampled at every point of the grid. Grids may be non-uniform, but the self-intersection
    estimators only accept uniform ones (see :py:attr:`is_uniform`).
    """

    UNIFORM_RTOL: float = 1e-9
    """Relative tolerance on the steps of a uniform grid"""

    def __init__(self, T: float, points: Sequence[float]) -> None:
        points = np.asarray(points, dtype=float)
        if not np.isfinite(T) or T <= 0:
            raise InputError("Grid duration must be positive, got T={}".format(T))
        if points.ndim != 1 or points.size < 2:
            raise InputError("A grid needs at least 2 points")
        if points[0] != 0 or not np.isclose(points[-1], T, rtol=1e-12, atol=0):
            raise InputError("Grid must start at 0 and end at T={}".format(T))
        if np.any(np.diff(points) <= 0):
            raise InputError("Grid points must be strictly increasing")
        points = points.copy()
        points[-1] = T
        points.setflags(write=False)
        self.T = float(T)
        self.points = points

    @classmethod
    def uniform(cls, T: float, n: int) -> "TimeGrid":
        """
        Uniform grid with n intervals, i.e. n + 1 points.

        :param T: duration [time]
        :param n: number of intervals
        :return: the grid
        """
        if int(n) != n or n < 1:
            raise InputError("A uniform grid needs n >= 1 intervals, got {}".format(n))
        return cls(T, np.linspace(0., T, int(n) + 1))

    @property
    def n(self) -> int:
        """Number of intervals."""
        return self.points.size - 1

    @property
    def is_uniform(self) -> bool:
        return utils.is_uniform(self.points, rtol=self.UNIFORM_RTOL)

    @property
    def step(self) -> float:
        """Step T/n of a uniform grid."""
        if not self.is_uniform:
            raise InputError("Grid is not uniform")
        return self.T / self.n

    def __len__(self) -> int:
        return self.points.size

    def __eq__(self, other: object) -> bool:
        return isinstance(other, TimeGrid) and self.T == other.T and np.array_equal(self.points, other.points)

    def __repr__(self) -> str:
        return "TimeGrid(T={}, n={}{})".format(self.T, self.n, ", uniform" if self.is_uniform else "")
