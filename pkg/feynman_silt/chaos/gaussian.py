"""L^p norms under centered Gaussian measures and the comparison of two such measures."""
import itertools
from typing import Callable, Optional, Tuple

import numpy as np
from numpy.polynomial import hermite_e

from feynman_silt.errors import InputError, PreconditionError

DEFAULT_NODES = 32


def _check_covariance(matrix: np.ndarray, name: str) -> np.ndarray:
    matrix = np.atleast_2d(np.asarray(matrix, dtype=float))
    if matrix.shape[0] != matrix.shape[1] or not np.allclose(matrix, matrix.T, rtol=0, atol=1e-12):
        raise InputError("{} must be a symmetric matrix".format(name))
    if np.linalg.eigvalsh(matrix).min() <= 0:
        raise InputError("{} must be positive definite".format(name))
    return matrix


def gaussian_cubature(cov: np.ndarray, nodes: int = DEFAULT_NODES) -> Tuple[np.ndarray, np.ndarray]:
    """
    Tensor Gauss-Hermite rule for the centered Gaussian measure with covariance cov.

    :return: points of shape (nodes^d, d) and weights summing to 1
    """
    cov = _check_covariance(cov, "The covariance")
    root = np.linalg.cholesky(cov)
    points, weights = hermite_e.hermegauss(nodes)
    weights = weights / np.sqrt(2 * np.pi)
    d = cov.shape[0]
    grid = np.array(list(itertools.product(points, repeat=d)))
    grid_weights = np.prod(np.array(list(itertools.product(weights, repeat=d))), axis=1)
    return grid @ root.T, grid_weights


def _gaussian_density(x: np.ndarray, cov: np.ndarray) -> np.ndarray:
    inverse = np.linalg.inv(cov)
    quadratic = np.einsum("ni,ij,nj->n", x, inverse, x)
    return np.exp(-quadratic / 2) / np.sqrt(np.linalg.det(2 * np.pi * cov))


def gaussian_lp_norm(f: Callable[[np.ndarray], np.ndarray], cov: np.ndarray, p: float,
                     nodes: int = DEFAULT_NODES) -> float:
    """
    ||f||_{L^p(mu_cov)} by Gauss-Hermite cubature.

    :param f: vectorized function of points (n, d)
    :param cov: covariance matrix
    :param p: exponent, at least 1
    :param nodes: nodes per dimension
    :return: the norm
    """
    if p < 1:
        raise InputError("The exponent must be at least 1, got {}".format(p))
    points, weights = gaussian_cubature(cov, nodes)
    return float(np.sum(weights * np.abs(f(points)) ** p) ** (1 / p))


def gaussian_norm_inequality_check(M: np.ndarray, N: np.ndarray, f: Callable[[np.ndarray], np.ndarray], p: float,
                                   nodes: int = DEFAULT_NODES, rtol: float = 1e-9,
                                   details: Optional[dict] = None) -> bool:
    """
    Check ||f||_{L^p(mu_N)} <= (det M / det N)^{1/2p} ||f||_{L^p(mu_M)} for covariances 0 < N <= M.

    Both sides use the cubature nodes of mu_M, the left one through the density ratio d mu_N / d mu_M, which is
    bounded when N <= M.

    :param M: the larger covariance
    :param N: the smaller covariance
    :param f: vectorized function of points (n, d)
    :param p: exponent, at least 1
    :param nodes: nodes per dimension
    :param rtol: relative slack for rounding
    :param details: if given, filled with both sides and the constant
    :return: whether the inequality holds
    """
    M, N = _check_covariance(M, "M"), _check_covariance(N, "N")
    if M.shape != N.shape:
        raise InputError("M and N must have the same dimension")
    if p < 1:
        raise InputError("The exponent must be at least 1, got {}".format(p))
    if np.linalg.eigvalsh(M - N).min() < -1e-12 * np.abs(M).max():
        raise PreconditionError("N <= M does not hold")
    points, weights = gaussian_cubature(M, nodes)
    values = np.abs(f(points)) ** p
    ratio = _gaussian_density(points, N) / _gaussian_density(points, M)
    lhs = np.sum(weights * values * ratio) ** (1 / p)
    constant = (np.linalg.det(M) / np.linalg.det(N)) ** (1 / (2 * p))
    rhs = constant * np.sum(weights * values) ** (1 / p)
    if details is not None:
        details.update(lhs=float(lhs), rhs=float(rhs), constant=float(constant))
    return bool(lhs <= rhs * (1 + rtol))
