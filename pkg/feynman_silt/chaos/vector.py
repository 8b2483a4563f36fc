"""
Truncated chaos expansions over a finite orthonormal basis.

A chaos vector phi = sum_n <:w^{⊗n}:, phi^(n)> is stored as its symmetric kernels phi^(n), n = 0..N. In the
coordinates w_i = <w, e_i>, which are independent standard Gaussians, the Wick power :w^{⊗n}: has the components
prod_j He_{a_j}(w_j), where a_j counts the occurrences of the index j and He are the probabilists' Hermite
polynomials.
"""
import collections
import itertools
import math
from typing import List, Optional, Sequence

import numpy as np
from numpy.polynomial import hermite_e

from feynman_silt.chaos import tensors
from feynman_silt.chaos.basis import BasisVector, as_basis_vector, check_same_dim
from feynman_silt.errors import DegreeOverflowError, InputError

DEFAULT_DIM = 8
DEFAULT_DEGREE = 6


class ChaosVector(object):

    """
    A chaos expansion truncated at degree N over d basis vectors.

    Kernels are dense complex arrays of shape (d,) * n, symmetrized at construction. Instances are immutable.
    """

    def __init__(self, kernels: Sequence, basis_dim: int = DEFAULT_DIM, max_degree: Optional[int] = None,
                 symmetrize: bool = True) -> None:
        max_degree = len(kernels) - 1 if max_degree is None else int(max_degree)
        if max_degree < 0 or basis_dim < 1:
            raise InputError("Invalid truncation d={} N={}".format(basis_dim, max_degree))
        if len(kernels) > max_degree + 1:
            raise DegreeOverflowError("{} kernels exceed the degree cap {}".format(len(kernels), max_degree))
        self.basis_dim = int(basis_dim)
        self.max_degree = max_degree
        self.kernels: List[np.ndarray] = []
        for n in range(max_degree + 1):
            shape = (basis_dim,) * n
            kernel = np.zeros(shape, dtype=complex) if n >= len(kernels) or kernels[n] is None \
                else np.array(kernels[n], dtype=complex)
            if kernel.shape != shape:
                raise InputError("Kernel of order {} must have shape {}, got {}".format(n, shape, kernel.shape))
            if symmetrize and n > 1 and np.any(kernel):
                kernel = tensors.symmetrize(kernel)
            kernel.setflags(write=False)
            self.kernels.append(kernel)

    @classmethod
    def vacuum(cls, basis_dim: int = DEFAULT_DIM, max_degree: int = 0) -> "ChaosVector":
        """The constant 1."""
        return cls([1.], basis_dim, max_degree)

    @classmethod
    def first_order(cls, xi: BasisVector, max_degree: int = 1) -> "ChaosVector":
        """The Gaussian variable <., xi>."""
        xi = as_basis_vector(xi)
        return cls([0., xi.coefficients], xi.dim, max_degree)

    @property
    def degree(self) -> int:
        """Highest order with a nonzero kernel, 0 for constants."""
        nonzero = [n for n, kernel in enumerate(self.kernels) if np.any(kernel)]
        return max(nonzero) if nonzero else 0

    def kernel(self, n: int) -> np.ndarray:
        return self.kernels[n] if n <= self.max_degree else np.zeros((self.basis_dim,) * n, dtype=complex)

    @property
    def expectation(self) -> complex:
        return complex(self.kernels[0])

    def truncated(self, max_degree: int) -> "ChaosVector":
        return ChaosVector([self.kernel(n) for n in range(max_degree + 1)], self.basis_dim, max_degree,
                           symmetrize=False)

    def _combine(self, other: "ChaosVector", sign: float) -> "ChaosVector":
        check_same_dim(self.basis_dim, other.basis_dim)
        degree = max(self.max_degree, other.max_degree)
        return ChaosVector([self.kernel(n) + sign * other.kernel(n) for n in range(degree + 1)], self.basis_dim,
                           degree, symmetrize=False)

    def __add__(self, other: "ChaosVector") -> "ChaosVector":
        return self._combine(other, 1.)

    def __sub__(self, other: "ChaosVector") -> "ChaosVector":
        return self._combine(other, -1.)

    def __mul__(self, scalar: complex) -> "ChaosVector":
        return ChaosVector([kernel * scalar for kernel in self.kernels], self.basis_dim, self.max_degree,
                           symmetrize=False)

    __rmul__ = __mul__

    def allclose(self, other: "ChaosVector", atol: float = 1e-10) -> bool:
        degree = max(self.max_degree, other.max_degree)
        return self.basis_dim == other.basis_dim and all(
            np.allclose(self.kernel(n), other.kernel(n), rtol=0, atol=atol) for n in range(degree + 1))

    def __repr__(self) -> str:
        return "ChaosVector(d={}, N={}, degree={})".format(self.basis_dim, self.max_degree, self.degree)


def norm_q(phi: ChaosVector, q: int = 0) -> float:
    """
    The norm ||phi||_q^2 = sum_n n! 2^{qn} |phi^(n)|^2. For q = 0 this is the L^2 norm.

    :param phi: a chaos vector
    :param q: nonnegative index
    :return: the norm
    """
    if q < 0:
        raise InputError("The norm index must be nonnegative, got {}".format(q))
    total = sum(math.factorial(n) * 2. ** (q * n) * float(np.sum(np.abs(kernel) ** 2))
                for n, kernel in enumerate(phi.kernels))
    return math.sqrt(total)


def wick_exponential(xi: BasisVector, N: int = DEFAULT_DEGREE) -> ChaosVector:
    """
    Truncated Wick exponential :exp<., xi>:, with kernels xi^{⊗n} / n!.

    :param xi: the direction
    :param N: degree cap
    :return: the chaos vector
    """
    if N < 0:
        raise InputError("Degree cap must be nonnegative, got {}".format(N))
    xi = as_basis_vector(xi)
    return ChaosVector([tensors.tensor_power(xi.coefficients, n) / math.factorial(n) for n in range(N + 1)],
                       xi.dim, N, symmetrize=False)


def s_transform(phi: ChaosVector, xi: BasisVector) -> complex:
    """
    S-transform S phi(xi) = sum_n <phi^(n), xi^{⊗n}>, the pairing of phi with :exp<., xi>:.

    :param phi: a chaos vector
    :param xi: a possibly complex direction
    :return: the value
    """
    xi = as_basis_vector(xi)
    check_same_dim(phi.basis_dim, xi.dim)
    return complex(sum(tensors.apply_vector(kernel, xi.coefficients, n) for n, kernel in enumerate(phi.kernels)))


def wick_product(phi: ChaosVector, psi: ChaosVector, max_degree: Optional[int] = None) -> ChaosVector:
    """
    Wick product, with kernels (phi ⋄ psi)^(n) = sum_{k+l=n} sym(phi^(k) ⊗ psi^(l)).

    :param phi: a chaos vector
    :param psi: a chaos vector on the same basis
    :param max_degree: truncation of the result, by default the sum of the degree caps (no truncation)
    :return: the product
    """
    check_same_dim(phi.basis_dim, psi.basis_dim)
    degree = phi.max_degree + psi.max_degree if max_degree is None else max_degree
    kernels = []
    for n in range(degree + 1):
        kernel = np.zeros((phi.basis_dim,) * n, dtype=complex)
        for k in range(max(0, n - psi.max_degree), min(n, phi.max_degree) + 1):
            kernel = kernel + np.multiply.outer(phi.kernels[k], psi.kernels[n - k])
        kernels.append(kernel)
    return ChaosVector(kernels, phi.basis_dim, degree)


def multiply(phi: ChaosVector, psi: ChaosVector, max_degree: Optional[int] = None) -> ChaosVector:
    """
    Pointwise product, by the Hermite product formula
    <:w^{⊗n}:, f><:w^{⊗m}:, g> = sum_r r! C(n, r) C(m, r) <:w^{⊗(n+m-2r)}:, f ⊗_r g>.

    :param phi: a chaos vector
    :param psi: a chaos vector on the same basis
    :param max_degree: degree cap of the result, by default the sum of the degrees
    :return: the product
    :raises DegreeOverflowError: if the product has a nonzero kernel above the cap
    """
    check_same_dim(phi.basis_dim, psi.basis_dim)
    full_degree = phi.degree + psi.degree
    if max_degree is not None and full_degree > max_degree:
        raise DegreeOverflowError("The product has degree {} above the cap {}".format(full_degree, max_degree))
    kernels = [np.zeros((phi.basis_dim,) * n, dtype=complex) for n in range(full_degree + 1)]
    for n, f in enumerate(phi.kernels[:phi.degree + 1]):
        if not np.any(f):
            continue
        for m, g in enumerate(psi.kernels[:psi.degree + 1]):
            if not np.any(g):
                continue
            for r in range(min(n, m) + 1):
                coefficient = math.factorial(r) * math.comb(n, r) * math.comb(m, r)
                kernels[n + m - 2 * r] = kernels[n + m - 2 * r] + coefficient * tensors.contract_slots(f, g, r)
    return ChaosVector(kernels, phi.basis_dim, full_degree if max_degree is None else max_degree)


def evaluate_pointwise(phi: ChaosVector, omega: np.ndarray) -> np.ndarray:
    """
    Value of a chaos vector at Gaussian coordinates.

    :param phi: a chaos vector
    :param omega: coordinates of shape (d,) or (M, d)
    :return: a complex value, or M values
    """
    omega = np.asarray(omega, dtype=float)
    single = omega.ndim == 1
    omega = np.atleast_2d(omega)
    if omega.shape[1] != phi.basis_dim:
        raise InputError("Expected {} coordinates, got {}".format(phi.basis_dim, omega.shape[1]))
    hermite = hermite_e.hermevander(omega, max(phi.max_degree, 1))
    values = np.zeros(omega.shape[0], dtype=complex)
    for n, kernel in enumerate(phi.kernels):
        if not np.any(kernel):
            continue
        for index in itertools.combinations_with_replacement(range(phi.basis_dim), n):
            counts = collections.Counter(index)
            multiplicity = math.factorial(n)
            term = np.ones(omega.shape[0])
            for j, count in counts.items():
                multiplicity //= math.factorial(count)
                term = term * hermite[:, j, count]
            values += multiplicity * kernel[index] * term
    return values[0] if single else values


def polynomial_functional(coefficients: Sequence[float], xi: BasisVector, max_degree: Optional[int] = None) \
        -> ChaosVector:
    """
    Chaos vector of f(<., xi>) for a polynomial f(y) = sum_j c_j y^j and a real direction xi.

    With s = |xi| and u = xi / s, the monomials are re-expanded as (s x)^j = sum_k b_jk He_k(x) and
    He_k(<., u>) = <:w^{⊗k}:, u^{⊗k}>.

    :param coefficients: c_0, c_1, ... in increasing powers
    :param xi: the real direction
    :param max_degree: degree cap, by default the polynomial degree
    :return: the chaos vector
    """
    xi = as_basis_vector(xi)
    if not xi.is_real:
        raise InputError("Polynomial functionals need a real direction")
    coefficients = np.atleast_1d(np.asarray(coefficients, dtype=float))
    degree = coefficients.size - 1 if max_degree is None else max_degree
    if coefficients.size - 1 > degree and np.any(coefficients[degree + 1:]):
        raise DegreeOverflowError("Polynomial of degree {} above the cap {}".format(coefficients.size - 1, degree))
    scale = xi.norm
    if scale == 0:
        return ChaosVector([coefficients[0]], xi.dim, degree)
    unit = np.real(xi.coefficients) / scale
    hermite = hermite_e.poly2herme(coefficients * scale ** np.arange(coefficients.size))
    kernels = [hermite[k] * tensors.tensor_power(unit, k) if k < hermite.size else None for k in range(degree + 1)]
    return ChaosVector(kernels, xi.dim, degree, symmetrize=False)
