"""
Distributions represented by their S-transform: Donsker's delta, chaos vectors, functions of finitely many
Gaussian variables, and their Wick products.
"""
import itertools
import logging
from typing import Callable, Optional, Sequence, Union

import numpy as np
from numpy.polynomial import hermite_e

from feynman_silt.chaos.basis import BasisVector, as_basis_vector, check_same_dim
from feynman_silt.chaos.projection import generating_directions, in_span, project_eta, project_orth
from feynman_silt.chaos.vector import ChaosVector, s_transform
from feynman_silt.errors import InputError, UnsupportedCaseError

logger = logging.getLogger(__name__)

KINDS = ("chaos-derived", "donsker-delta", "wick-product")


class STransformObject(object):

    """
    A regular distribution given by its S-transform, a function of complex directions xi.

    The value at xi = 0 is the generalized expectation.
    """

    def __init__(self, evaluator: Callable[[BasisVector], complex], kind: str, basis_dim: int) -> None:
        if kind not in KINDS:
            raise InputError("Unknown S-transform kind {}".format(kind))
        self.evaluator = evaluator
        self.kind = kind
        self.basis_dim = basis_dim

    @classmethod
    def from_chaos(cls, phi: ChaosVector) -> "STransformObject":
        return cls(lambda xi: s_transform(phi, xi), "chaos-derived", phi.basis_dim)

    def __call__(self, xi: Union[BasisVector, np.ndarray]) -> complex:
        xi = as_basis_vector(xi)
        check_same_dim(self.basis_dim, xi.dim)
        return complex(self.evaluator(xi))

    def expectation(self) -> complex:
        return self(np.zeros(self.basis_dim))

    def wick(self, other: "STransformObject") -> "STransformObject":
        """Wick product, whose S-transform is the pointwise product."""
        check_same_dim(self.basis_dim, other.basis_dim)
        return STransformObject(lambda xi: self(xi) * other(xi), "wick-product", self.basis_dim)

    def scaled(self, factor: complex) -> "STransformObject":
        return STransformObject(lambda xi: factor * self(xi), self.kind, self.basis_dim)

    def __repr__(self) -> str:
        return "STransformObject({}, d={})".format(self.kind, self.basis_dim)


def donsker_delta(eta: BasisVector, a: complex = 0.) -> STransformObject:
    """
    Donsker's delta delta(<., eta> - a), by its closed-form S-transform
    (2 pi <eta, eta>)^{-1/2} exp(-(a - <xi, eta>)^2 / 2 <eta, eta>).

    :param eta: a possibly complex direction, with <eta, eta> off the cut (-inf, 0]
    :param a: a possibly complex level
    :return: the S-transform object
    """
    eta = as_basis_vector(eta)
    norm_sq = complex(eta.dot(eta))
    if norm_sq.imag == 0 and norm_sq.real <= 0:
        raise InputError("<eta, eta> = {} lies on the branch cut".format(norm_sq))
    prefactor = 1 / np.sqrt(2 * np.pi * norm_sq)
    a = complex(a)

    def evaluator(xi: BasisVector) -> complex:
        return prefactor * np.exp(-(a - xi.dot(eta)) ** 2 / (2 * norm_sq))
    return STransformObject(evaluator, "donsker-delta", eta.dim)


class GaussianFunctional(object):

    """
    A function f(<., xi_1>, ..., <., xi_k>) of finitely many Gaussian variables, with real directions.

    The S-transform is E[f(Y + (<xi, xi_j>)_j)] with Y ~ N(0, Gram(xi_j)), computed by a Gauss-Hermite rule. For
    complex xi, f must accept complex arguments.

    :param directions: the k directions, rows of a (k, d) array
    :param f: vectorized function of an array (..., k)
    :param nodes: Gauss-Hermite nodes per dimension
    """

    def __init__(self, directions: Sequence, f: Callable[[np.ndarray], np.ndarray], nodes: int = 24) -> None:
        directions = np.atleast_2d(np.array([as_basis_vector(v).coefficients for v in directions], dtype=float))
        self.directions = directions
        self.f = f
        self.nodes = nodes

    @property
    def basis_dim(self) -> int:
        return self.directions.shape[1]

    def _cubature(self):
        gram = self.directions @ self.directions.T
        values, vectors = np.linalg.eigh(gram)
        root = vectors * np.sqrt(np.clip(values, 0., None))
        points, weights = hermite_e.hermegauss(self.nodes)
        weights = weights / np.sqrt(2 * np.pi)
        k = gram.shape[0]
        grid = np.array(list(itertools.product(points, repeat=k)))
        grid_weights = np.prod(np.array(list(itertools.product(weights, repeat=k))), axis=1)
        return grid @ root.T, grid_weights

    def s_transform(self, xi: BasisVector) -> complex:
        shift = self.directions @ as_basis_vector(xi).coefficients
        samples, weights = self._cubature()
        return complex(np.sum(weights * self.f(samples + shift)))

    def expectation(self) -> complex:
        return self.s_transform(np.zeros(self.basis_dim))

    def project(self, eta: BasisVector) -> "GaussianFunctional":
        """The functional with every direction projected on the complement of eta."""
        projected = [project_orth(BasisVector(row), eta).coefficients for row in self.directions]
        return GaussianFunctional(projected, self.f, self.nodes)


def wick_formula_product(eta: BasisVector, phi: Union[ChaosVector, GaussianFunctional]) -> STransformObject:
    """
    Product of Donsker's delta delta(<., eta>) with a functional phi, as the Wick product delta ⋄ P phi where P removes
    the dependence on eta / |eta|.

    :param eta: a real nonzero direction
    :param phi: a chaos vector or a function of Gaussian variables
    :return: the S-transform object of the product
    :raises UnsupportedCaseError: if eta lies in the span of the directions phi depends on
    """
    eta = as_basis_vector(eta)
    if not eta.is_real or eta.norm == 0:
        raise InputError("Expected a real nonzero direction")
    unit = eta / eta.norm
    if isinstance(phi, ChaosVector):
        check_same_dim(phi.basis_dim, eta.dim)
        if in_span(unit, generating_directions(phi)):
            raise UnsupportedCaseError("eta lies in the span of the directions of the functional")
        projected = STransformObject.from_chaos(project_eta(phi, unit))
    elif isinstance(phi, GaussianFunctional):
        check_same_dim(phi.basis_dim, eta.dim)
        if in_span(unit, phi.directions.T):
            raise UnsupportedCaseError("eta lies in the span of the directions of the functional")
        functional = phi.project(unit)
        projected = STransformObject(functional.s_transform, "chaos-derived", eta.dim)
    else:
        raise InputError("Unsupported functional {!r}".format(phi))
    return donsker_delta(eta).wick(projected)
