import numpy as np
import pytest
from scipy import integrate

from feynman_silt.errors import InputError
from feynman_silt.silt.kernels import heat_kernel, schrodinger_kernel


def test_heat_kernel_values():
    assert heat_kernel(0., 1.) == pytest.approx(0.3989422804014327)
    eps = 0.3
    assert heat_kernel(eps, eps) == pytest.approx(np.exp(-eps / 2) / np.sqrt(2 * np.pi * eps))
    assert isinstance(heat_kernel(0.5, 1.), float)
    assert heat_kernel(np.array([-1., 1.]), 2.).shape == (2,)


def test_heat_kernel_is_a_density():
    eps = 1e-3
    mass, _ = integrate.quad(heat_kernel, -10 * np.sqrt(eps), 10 * np.sqrt(eps), args=(eps,), epsabs=1e-14,
                             epsrel=1e-14)
    assert mass == pytest.approx(1., abs=1e-12)


@pytest.mark.parametrize("eps", [0., -1., np.inf, np.nan])
def test_invalid_regularization(eps):
    with pytest.raises(InputError):
        heat_kernel(0., eps)
    with pytest.raises(InputError):
        schrodinger_kernel(0., eps)


def test_heat_kernel_decreases_in_eps_beyond_the_squared_difference():
    rng = np.random.default_rng(3)
    for x in rng.normal(size=50):
        eps = x * x * (1 + rng.uniform(0.01, 2.))
        assert heat_kernel(x, eps * 1.5) < heat_kernel(x, eps)


def test_schrodinger_kernel():
    eps = 0.7
    x = np.linspace(-2., 2., 9)
    assert np.abs(schrodinger_kernel(x, eps)) == pytest.approx(np.full(9, 1 / np.sqrt(2 * np.pi * eps)))
    rotated = schrodinger_kernel(np.sqrt(1j) * x, eps)
    assert rotated == pytest.approx(heat_kernel(x, eps) / np.sqrt(1j))
    assert isinstance(schrodinger_kernel(0.3, eps), complex)
