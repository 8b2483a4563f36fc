import numpy as np
import pytest

from feynman_silt.chaos.gaussian import gaussian_cubature, gaussian_lp_norm, gaussian_norm_inequality_check
from feynman_silt.errors import InputError, PreconditionError


def _random_covariance(rng, d):
    a = rng.normal(size=(d, d))
    return a @ a.T + 0.1 * np.eye(d)


def test_cubature_moments(rng):
    cov = _random_covariance(rng, 2)
    points, weights = gaussian_cubature(cov, 8)
    assert weights.sum() == pytest.approx(1.)
    np.testing.assert_allclose(points.T @ (weights[:, None] * points), cov, rtol=1e-12, atol=1e-12)


@pytest.mark.parametrize("p, expected", [(2, 1.), (4, 3 ** 0.25), (6, 15 ** (1 / 6))])
def test_lp_norm(p, expected):
    assert gaussian_lp_norm(lambda x: x[:, 0], [[1.]], p) == pytest.approx(expected, rel=1e-12)


def test_equal_covariances_give_equality(rng):
    cov = _random_covariance(rng, 2)
    details = {}
    assert gaussian_norm_inequality_check(cov, cov, lambda x: np.cos(x[:, 0]) + x[:, 1] ** 2, 2, nodes=12,
                                          details=details)
    assert details["constant"] == pytest.approx(1.)
    assert details["lhs"] == pytest.approx(details["rhs"], rel=1e-12)


def test_one_dimensional_example():
    details = {}
    assert gaussian_norm_inequality_check([[2.]], [[1.]], lambda x: x[:, 0] ** 2, 2, details=details)
    assert details["lhs"] == pytest.approx(np.sqrt(3), rel=1e-8)
    assert details["rhs"] == pytest.approx(2 ** 0.25 * 2 * np.sqrt(3), rel=1e-12)
    assert details["constant"] == pytest.approx(2 ** 0.25)


def test_random_inequalities(rng):
    for _ in range(20):
        n_cov = _random_covariance(rng, 2)
        m_cov = n_cov + _random_covariance(rng, 2)
        p = rng.uniform(1., 4.)
        shift = rng.normal(size=2)
        assert gaussian_norm_inequality_check(m_cov, n_cov, lambda x: np.exp(x @ shift / 4) * np.sin(x[:, 0]), p,
                                              nodes=12)


def test_inequality_preconditions():
    with pytest.raises(PreconditionError):
        gaussian_norm_inequality_check([[1.]], [[2.]], lambda x: x[:, 0], 2)
    with pytest.raises(InputError):
        gaussian_norm_inequality_check([[1., 0.5], [0., 1.]], [[1., 0.], [0., 1.]], lambda x: x[:, 0], 2)
    with pytest.raises(InputError):
        gaussian_norm_inequality_check([[1.]], [[-1.]], lambda x: x[:, 0], 2)
    with pytest.raises(InputError):
        gaussian_norm_inequality_check([[1.]], [[1., 0.], [0., 1.]], lambda x: x[:, 0], 2)
    with pytest.raises(InputError):
        gaussian_norm_inequality_check([[1.]], [[1.]], lambda x: x[:, 0], 0.5)
