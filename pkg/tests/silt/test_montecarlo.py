import numpy as np
import pytest

from feynman_silt.errors import InputError
from feynman_silt.silt.estimators import pair_sum_moments
from feynman_silt.silt.montecarlo import SiltSampling, estimate_second_moment, estimate_silt, silt_samples

SIGMAS = 4


@pytest.mark.parametrize("process", ["bridge", "motion"])
def test_mean_matches_exact_discrete_moment(process):
    job = SiltSampling(T=1., eps=0.05, grid_n=32, process=process)
    mean, _ = pair_sum_moments(1., 32, 0.05, process, second=False)
    estimate = estimate_silt(job, 4000, seed=11)
    assert estimate.n_samples == 4000
    assert estimate.std_error > 0
    assert abs(estimate.z_score(mean)) < SIGMAS


def test_second_moment_matches_exact_discrete_moment():
    job = SiltSampling(T=1., eps=0.05, grid_n=16)
    _, second = pair_sum_moments(1., 16, 0.05)
    estimate = estimate_second_moment(job, 4000, seed=12)
    assert abs(estimate.value - second) < SIGMAS * estimate.std_error


def test_full_square_samples_double_ordered():
    ordered = silt_samples(SiltSampling(1., 0.1, 16), 50, seed=3)
    full = silt_samples(SiltSampling(1., 0.1, 16, convention="full-square"), 50, seed=3)
    np.testing.assert_array_equal(full, 2 * ordered)


def test_samples_are_reproducible():
    job = SiltSampling(1., 0.1, 16)
    first = silt_samples(job, 200, seed=5, n_shards=3)
    np.testing.assert_array_equal(first, silt_samples(job, 200, seed=5, n_shards=3))
    assert first.shape == (200,)
    assert not np.array_equal(first, silt_samples(job, 200, seed=5, n_shards=3, stream=1))
    assert not np.array_equal(first, silt_samples(job, 200, seed=6, n_shards=3))


def test_samples_do_not_depend_on_workers():
    job = SiltSampling(1., 0.1, 16)
    serial = silt_samples(job, 100, seed=7, n_shards=2, workers=1)
    parallel = silt_samples(job, 100, seed=7, n_shards=2, workers=2)
    np.testing.assert_array_equal(serial, parallel)


def test_bridge_end_points_do_not_change_a_centered_shift():
    pinned = silt_samples(SiltSampling(1., 0.1, 16, a=2., b=2.), 50, seed=9)
    centered = silt_samples(SiltSampling(1., 0.1, 16), 50, seed=9)
    np.testing.assert_allclose(pinned, centered, rtol=1e-10)


@pytest.mark.parametrize("job, n_samples", [
    (SiltSampling(1., 0.1, 16, process="levy"), 10),
    (SiltSampling(1., 0.1, 16, convention="diagonal"), 10),
    (SiltSampling(1., 0., 16), 10),
    (SiltSampling(1., 0.1, 0), 10),
    (SiltSampling(1., 0.1, 16), 0),
])
def test_sampling_validation(job, n_samples):
    with pytest.raises(InputError):
        silt_samples(job, n_samples, seed=1)
