import numpy as np
import pytest

from feynman_silt import utils
from feynman_silt.experiments.silt import SiltMeanExperiment


def test_class_from_path():
    assert utils.class_from_path("feynman_silt.experiments.silt.SiltMeanExperiment") is SiltMeanExperiment


@pytest.mark.parametrize("x, kwargs, expected", [
    (10, {"num_bins": 3}, [4, 3, 3]),
    (9, {"num_bins": 3}, [3, 3, 3]),
    (2, {"num_bins": 4}, [1, 1, 0, 0]),
    (130, {"size_bins": 64}, [44, 43, 43]),
])
def test_near_split(x, kwargs, expected):
    assert utils.near_split(x, **kwargs) == expected


def test_is_uniform():
    assert utils.is_uniform(np.linspace(0., 1., 11))
    assert not utils.is_uniform(np.array([0., 0.1, 0.3]))
    assert not utils.is_uniform(np.array([0.]))


def test_principal_inverse_sqrt():
    assert utils.principal_inverse_sqrt(4.) == pytest.approx(0.5)
    assert utils.principal_inverse_sqrt(1j) == pytest.approx(np.exp(-1j * np.pi / 4))
    assert utils.principal_inverse_sqrt(-1 + 0j).imag < 0


def test_standard_error():
    assert utils.standard_error(np.array([1.])) == 0
    assert utils.standard_error(np.array([1., 3.])) == pytest.approx(1.)
    samples = np.array([1 + 1j, 3 - 1j])
    assert utils.standard_error(samples) == pytest.approx(np.sqrt(2.))
