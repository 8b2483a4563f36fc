from typing import Union

import numpy as np

from feynman_silt.errors import InputError, PreconditionError

UNIT_TOLERANCE = 1e-12


class BasisVector(object):

    """
    A vector of span{e_1, ..., e_d}, given by its coefficients.

    Pairings are bilinear: <x, y> = sum_i x_i y_i, also for complex coefficients.
    """

    def __init__(self, coefficients) -> None:
        coefficients = np.array(coefficients)
        if coefficients.ndim != 1 or coefficients.size == 0:
            raise InputError("Coefficients must be a nonempty vector")
        if not np.iscomplexobj(coefficients):
            coefficients = coefficients.astype(float)
        coefficients.setflags(write=False)
        self.coefficients = coefficients

    @classmethod
    def unit(cls, d: int, i: int) -> "BasisVector":
        """The basis vector e_{i+1} of a d-dimensional space."""
        coefficients = np.zeros(d)
        coefficients[i] = 1.
        return cls(coefficients)

    @property
    def dim(self) -> int:
        return self.coefficients.size

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.coefficients))

    @property
    def is_real(self) -> bool:
        return not np.iscomplexobj(self.coefficients) or not np.any(self.coefficients.imag)

    def dot(self, other: "BasisVector") -> complex:
        other = as_basis_vector(other)
        check_same_dim(self.dim, other.dim)
        value = np.dot(self.coefficients, other.coefficients)
        return value.item()

    def check_unit(self) -> None:
        """Check that the vector is real with norm 1."""
        if not self.is_real or abs(self.norm - 1) > UNIT_TOLERANCE:
            raise PreconditionError("Expected a real unit vector, got norm {}".format(self.norm))

    def __add__(self, other: "BasisVector") -> "BasisVector":
        other = as_basis_vector(other)
        check_same_dim(self.dim, other.dim)
        return BasisVector(self.coefficients + other.coefficients)

    def __sub__(self, other: "BasisVector") -> "BasisVector":
        return self + (-1) * as_basis_vector(other)

    def __mul__(self, scalar: complex) -> "BasisVector":
        return BasisVector(self.coefficients * scalar)

    __rmul__ = __mul__

    def __truediv__(self, scalar: complex) -> "BasisVector":
        return BasisVector(self.coefficients / scalar)

    def __neg__(self) -> "BasisVector":
        return BasisVector(-self.coefficients)

    def __repr__(self) -> str:
        return "BasisVector({})".format(np.array2string(self.coefficients, precision=4))


def as_basis_vector(value: Union[BasisVector, np.ndarray, list]) -> BasisVector:
    return value if isinstance(value, BasisVector) else BasisVector(value)


def check_same_dim(d1: int, d2: int) -> None:
    if d1 != d2:
        raise InputError("Basis dimensions differ: {} and {}".format(d1, d2))


def haar_matrix(d: int) -> np.ndarray:
    """
    Orthonormal Haar transform of size d = 2^J.

    Row 0 is the normalized constant. The other rows are normalized Haar wavelets, coarse to fine.
    """
    if d < 1 or d & (d - 1):
        raise InputError("The Haar basis needs a power of 2 dimension, got {}".format(d))
    matrix = np.ones((1, 1))
    while matrix.shape[0] < d:
        size = matrix.shape[0]
        coarse = np.kron(matrix, [1., 1.])
        fine = np.kron(np.eye(size), [1., -1.])
        matrix = np.vstack([coarse, fine]) / np.sqrt(2)
    return matrix


class TimeBasis(object):

    """
    An orthonormal family of d functions of L^2[0, T] built on the dyadic cells [jT/d, (j+1)T/d).

    Kind "cells" uses the normalized cell indicators, kind "haar" the Haar wavelets. Indicators of intervals with
    dyadic end points are represented exactly. Other intervals carry a projection error.
    """

    KINDS = ("haar", "cells")

    def __init__(self, T: float, d: int = 8, kind: str = "haar") -> None:
        if T <= 0:
            raise InputError("Duration must be positive, got T={}".format(T))
        if kind not in self.KINDS:
            raise InputError("Unknown basis {}".format(kind))
        self.T = float(T)
        self.d = int(d)
        self.kind = kind
        self.transform = haar_matrix(d) if kind == "haar" else np.eye(d)

    def _cell_overlaps(self, lo: float, hi: float) -> np.ndarray:
        if not 0 <= lo <= hi <= self.T:
            raise InputError("Interval [{}, {}) must lie in [0, {}]".format(lo, hi, self.T))
        edges = np.linspace(0., self.T, self.d + 1)
        return np.clip(np.minimum(edges[1:], hi) - np.maximum(edges[:-1], lo), 0., None)

    def project_interval(self, lo: float, hi: float) -> BasisVector:
        """Coefficients of the orthogonal projection of 1_[lo, hi) on the basis."""
        cells = self._cell_overlaps(lo, hi) * np.sqrt(self.d / self.T)
        return BasisVector(self.transform @ cells)

    def indicator(self, t: float) -> BasisVector:
        """Coefficients of the projection of 1_[0, t)."""
        return self.project_interval(0., t)

    def projection_error(self, lo: float, hi: float) -> float:
        """L^2 distance between 1_[lo, hi) and its projection."""
        return float(np.sqrt(max(0., (hi - lo) - self.project_interval(lo, hi).norm ** 2)))



def cell_basis(T: float, d: int = 8) -> TimeBasis:
    return TimeBasis(T, d, kind="cells")


def haar_basis(T: float, d: int = 8) -> TimeBasis:
    return TimeBasis(T, d, kind="haar")
