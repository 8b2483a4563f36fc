import numpy as np
import pytest

from feynman_silt.chaos.vector import ChaosVector


@pytest.fixture
def rng():
    return np.random.default_rng(2016)


@pytest.fixture
def random_chaos(rng):
    """Factory of chaos vectors with random Gaussian kernels."""
    def make(basis_dim: int, degree: int, complex_kernels: bool = True) -> ChaosVector:
        kernels = []
        for n in range(degree + 1):
            kernel = rng.normal(size=(basis_dim,) * n)
            if complex_kernels:
                kernel = kernel + 1j * rng.normal(size=(basis_dim,) * n)
            kernels.append(kernel)
        return ChaosVector(kernels, basis_dim)
    return make
