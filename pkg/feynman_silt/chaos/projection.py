"""
Projection operators removing the dependence of a functional on a direction eta, |eta| = 1.

On first-order vectors, P_perp xi = xi - <xi, eta> eta. On chaos vectors,

    P_eta phi = sum_n sum_{k <= n/2} n! (-1)^k / (k! (n-2k)! 2^k)
                <:.^{⊗(n-2k)}:, P_perp^{⊗(n-2k)} (eta^{⊗2k} ⊗_{2k} phi^(n))>,

which amounts to evaluating phi on the orthogonal complement of eta.
"""
import math
from typing import Sequence

import numpy as np

from feynman_silt.chaos import tensors
from feynman_silt.chaos.basis import BasisVector, as_basis_vector, check_same_dim
from feynman_silt.chaos.vector import ChaosVector
from feynman_silt.errors import UnsupportedCaseError


def orthogonal_projector(eta: BasisVector) -> np.ndarray:
    """Matrix of P_perp, I - eta eta^T, for a real unit eta."""
    eta = as_basis_vector(eta)
    eta.check_unit()
    unit = np.real(eta.coefficients)
    return np.eye(eta.dim) - np.outer(unit, unit)


def project_orth(xi: BasisVector, eta: BasisVector) -> BasisVector:
    """
    Orthogonal projection of xi on the complement of eta.

    :param xi: the projected vector
    :param eta: a real unit vector
    :return: xi - <xi, eta> eta
    """
    xi, eta = as_basis_vector(xi), as_basis_vector(eta)
    eta.check_unit()
    check_same_dim(xi.dim, eta.dim)
    return xi - xi.dot(eta) * eta


def projection_coefficient(n: int, k: int) -> float:
    return math.factorial(n) * (-1) ** k / (math.factorial(k) * math.factorial(n - 2 * k) * 2 ** k)


def project_eta(phi: ChaosVector, eta: BasisVector) -> ChaosVector:
    """
    The projection operator P_eta acting on a chaos vector.

    :param phi: a chaos vector
    :param eta: a real unit vector of the same basis
    :return: the projected vector, with the same truncation
    """
    eta = as_basis_vector(eta)
    projector = orthogonal_projector(eta)
    check_same_dim(phi.basis_dim, eta.dim)
    unit = np.real(eta.coefficients)
    kernels = [np.zeros((phi.basis_dim,) * n, dtype=complex) for n in range(phi.max_degree + 1)]
    for n, kernel in enumerate(phi.kernels):
        if not np.any(kernel):
            continue
        for k in range(n // 2 + 1):
            traced = tensors.apply_vector(kernel, unit, 2 * k)
            kernels[n - 2 * k] = kernels[n - 2 * k] + projection_coefficient(n, k) * \
                tensors.apply_matrix(traced, projector)
    return ChaosVector(kernels, phi.basis_dim, phi.max_degree, symmetrize=False)


def gram_matrix(vectors: Sequence[BasisVector]) -> np.ndarray:
    rows = np.array([as_basis_vector(v).coefficients for v in vectors])
    return rows @ rows.T


def projection_norm_constant(eta: BasisVector, xis: Sequence[BasisVector]) -> float:
    """
    Constant C = (det M / det N)^{1/2} bounding ||P_eta f(<., xi_1>, ...)||_{L^p} by C ||f(<., xi_1>, ...)||_{L^p}.

    M is the Gram matrix of the xi_j and N the Gram matrix of their projections P_perp xi_j.

    :param eta: a real unit vector
    :param xis: real directions, linearly independent together with eta
    :return: the constant, at least 1
    """
    projected = [project_orth(xi, eta) for xi in xis]
    det_m = np.linalg.det(gram_matrix(xis))
    det_n = np.linalg.det(gram_matrix(projected))
    if det_n <= 1e-14 * max(det_m, 1e-300):
        raise UnsupportedCaseError("eta lies in the span of the directions, the constant is infinite")
    return float(np.sqrt(det_m / det_n))


def in_span(eta: BasisVector, directions: np.ndarray, rtol: float = 1e-10) -> bool:
    """Check whether eta is a linear combination of the columns of a matrix."""
    eta = as_basis_vector(eta)
    if directions.size == 0 or not np.any(directions):
        return False
    coefficients, *_ = np.linalg.lstsq(directions, eta.coefficients, rcond=None)
    residual = np.linalg.norm(directions @ coefficients - eta.coefficients)
    return bool(residual <= rtol * max(eta.norm, 1.))


def generating_directions(phi: ChaosVector) -> np.ndarray:
    """Matrix whose columns span the directions the chaos vector depends on."""
    columns = [kernel.reshape(phi.basis_dim, -1) for kernel in phi.kernels[1:] if np.any(kernel)]
    return np.hstack(columns) if columns else np.zeros((phi.basis_dim, 0))
