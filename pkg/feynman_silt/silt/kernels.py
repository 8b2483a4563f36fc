from typing import Union

import numpy as np

from feynman_silt.errors import InputError

Real = Union[float, np.ndarray]


def _check_eps(eps: float) -> None:
    if not np.isfinite(eps) or eps <= 0:
        raise InputError("The regularization eps must be positive, got {}".format(eps))


def heat_kernel(x: Real, eps: float) -> Real:
    """
    Gaussian heat kernel p_eps(x) = (2 pi eps)^{-1/2} exp(-x^2 / 2 eps).

    :param x: position(s)
    :param eps: variance of the kernel [space^2]
    :return: kernel value(s)
    """
    _check_eps(eps)
    value = np.exp(-np.square(x) / (2 * eps)) / np.sqrt(2 * np.pi * eps)
    return float(value) if np.ndim(value) == 0 else value


def schrodinger_kernel(x: Union[complex, np.ndarray], eps: float) -> Union[complex, np.ndarray]:
    """
    Free Schrödinger kernel q_eps(x) = (2 pi i eps)^{-1/2} exp(-x^2 / 2 i eps), on the principal branch.

    For real x it has modulus (2 pi eps)^{-1/2}. Evaluated along the rotated axis sqrt(i) x it reduces to the heat
    kernel: q_eps(sqrt(i) x) = p_eps(x) / sqrt(i).

    :param x: position(s), possibly complex
    :param eps: time of the kernel
    :return: kernel value(s)
    """
    _check_eps(eps)
    x = np.asarray(x, dtype=complex)
    value = np.exp(-np.square(x) / (2j * eps)) / np.sqrt(2j * np.pi * eps)
    return complex(value) if value.ndim == 0 else value
