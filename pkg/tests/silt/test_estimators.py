import numpy as np
import pytest

from feynman_silt.errors import InputError
from feynman_silt.paths.grid import TimeGrid
from feynman_silt.paths.sampling import PathSample, sample_bridge, sample_bridge_batch
from feynman_silt.silt.estimators import SiltEstimate, matched_epsilon, pair_sum_moments, pair_sums, \
    silt_local_time_oracle, silt_pair_sum
from feynman_silt.silt.quadrature import mean_silt_quadrature


def linear_path(T: float, n: int) -> PathSample:
    grid = TimeGrid.uniform(T, n)
    return PathSample(grid, grid.points.copy(), "motion")


def constant_path(T: float, n: int, value: float = 0.) -> PathSample:
    grid = TimeGrid.uniform(T, n)
    return PathSample(grid, np.full(len(grid), value), "bridge", (value, value))


@pytest.mark.parametrize("n, eps", [(4, 1.), (10, 0.1), (33, 0.01)])
def test_constant_path(n, eps):
    expected = 0.5 * (1 - 1 / n) / np.sqrt(2 * np.pi * eps)
    assert silt_pair_sum(constant_path(1., n), eps) == pytest.approx(expected, rel=1e-12)
    assert silt_pair_sum(constant_path(2., n), eps) == pytest.approx(4 * expected, rel=1e-12)


def test_full_square_is_twice_ordered():
    grid = TimeGrid.uniform(1., 64)
    values = sample_bridge_batch(grid, 20, 11)
    for eps in [1e-1, 1e-3]:
        ordered = pair_sums(values, grid, eps, "ordered")
        full = pair_sums(values, grid, eps, "full-square")
        assert np.array_equal(full, 2 * ordered)


def test_shift_invariance():
    path = sample_bridge(TimeGrid.uniform(1., 128), 0., 0., rng=5)
    shifted = PathSample(path.grid, path.values + 3.25, "bridge", (3.25, 3.25))
    assert silt_pair_sum(shifted, 1e-2) == pytest.approx(silt_pair_sum(path, 1e-2), rel=1e-10)


def test_linear_path_full_square():
    assert silt_pair_sum(linear_path(1., 4096), 1e-4, "full-square") == pytest.approx(1., abs=0.03)


def test_pair_sum_validation():
    path = sample_bridge(TimeGrid.uniform(1., 8), 0., 0., rng=0)
    with pytest.raises(InputError):
        silt_pair_sum(path, 0.)
    with pytest.raises(InputError):
        silt_pair_sum(path, 1e-2, "diagonal")
    grid = TimeGrid(1., [0., 0.1, 0.5, 1.])
    with pytest.raises(InputError):
        silt_pair_sum(PathSample(grid, np.zeros(4), "motion"), 1e-2)


def test_local_time_oracle_linear_path():
    result = silt_local_time_oracle(linear_path(1., 16384), 0.02)
    assert not result.degenerate
    assert result.value == pytest.approx(1., abs=0.02)


def test_local_time_oracle_constant_path():
    n, width = 100, 0.1
    result = silt_local_time_oracle(constant_path(1., n), width)
    assert result.degenerate
    assert result.value == pytest.approx((1 - 1 / n) / width)
    with pytest.raises(InputError):
        silt_local_time_oracle(constant_path(1., n), 0.)


def test_local_time_oracle_matches_pair_sum():
    grid = TimeGrid.uniform(1., 2048)
    width = 0.05
    values = sample_bridge_batch(grid, 100, 99)
    pair = pair_sums(values, grid, matched_epsilon(width), "full-square")
    for row, expected in zip(values, pair):
        path = PathSample(grid, row, "bridge", (0., 0.))
        assert silt_local_time_oracle(path, width, shifts=8).value == pytest.approx(expected, rel=0.05)


def test_silt_estimate():
    estimate = SiltEstimate(1.2, 1e-2, "ordered", 64, n_samples=100, std_error=0.1)
    assert estimate.z_score(1.) == pytest.approx(2.)
    assert estimate.to_dict()["n_grid"] == 64
    assert SiltEstimate(1., 1e-2, "ordered", 64).z_score(1.) == 0.
    for value, eps, se in [(-1., 1e-2, 0.), (1., 0., 0.), (1., 1e-2, -1.)]:
        with pytest.raises(InputError):
            SiltEstimate(value, eps, "ordered", 64, std_error=se)


def test_discrete_moments_approach_the_quadrature():
    quadrature = mean_silt_quadrature(1., 1e-2)
    coarse, _ = pair_sum_moments(1., 128, 1e-2, second=False)
    fine, _ = pair_sum_moments(1., 512, 1e-2, second=False)
    assert abs(fine - quadrature) < abs(coarse - quadrature)
    assert fine == pytest.approx(quadrature, rel=0.03)


def test_discrete_moments_conventions():
    mean, second = pair_sum_moments(1., 16, 0.1)
    full_mean, full_second = pair_sum_moments(1., 16, 0.1, convention="full-square")
    assert full_mean == pytest.approx(2 * mean)
    assert full_second == pytest.approx(4 * second)
    assert second > mean ** 2
    assert np.isnan(pair_sum_moments(1., 16, 0.1, second=False)[1])
