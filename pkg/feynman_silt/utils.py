import importlib
from typing import Callable, List, Optional

import numpy as np


def class_from_path(path: str) -> Callable:
    module_name, class_name = path.rsplit(".", 1)
    class_object = getattr(importlib.import_module(module_name), class_name)
    return class_object


def near_split(x: int, num_bins: Optional[int] = None, size_bins: Optional[int] = None) -> List[int]:
    """
    Split a number into several bins with near-even distribution.

    You can either set the number of bins, or their size.
    The sum of bins always equals the total.
    :param x: number to split
    :param num_bins: number of bins
    :param size_bins: size of bins
    :return: list of bin sizes
    """
    if num_bins:
        quotient, remainder = divmod(x, num_bins)
        return [quotient + 1] * remainder + [quotient] * (num_bins - remainder)
    elif size_bins:
        return near_split(x, num_bins=int(np.ceil(x / size_bins)))


def is_uniform(points: np.ndarray, rtol: float = 1e-9) -> bool:
    """
    Check that a sorted array of times has constant spacing.

    :param points: increasing times
    :param rtol: relative tolerance on each step
    :return: whether all steps equal the mean step
    """
    steps = np.diff(points)
    if steps.size == 0:
        return False
    return bool(np.allclose(steps, steps.mean(), rtol=rtol, atol=0.))


def principal_inverse_sqrt(z: complex) -> complex:
    """z^{-1/2} on the principal branch, with the cut on the negative real axis."""
    return 1 / np.sqrt(complex(z))


def standard_error(samples: np.ndarray) -> float:
    """
    Standard error of the mean of real or complex samples.

    For complex samples the real and imaginary variances are added.
    """
    samples = np.asarray(samples)
    if samples.size < 2:
        return 0.
    if np.iscomplexobj(samples):
        variance = np.var(samples.real, ddof=1) + np.var(samples.imag, ddof=1)
    else:
        variance = np.var(samples, ddof=1)
    return float(np.sqrt(variance / samples.size))
