"""Sharded Monte Carlo sampling of pair-sum SILT values."""
import logging
from concurrent.futures import ProcessPoolExecutor
from typing import List, NamedTuple

import numpy as np

from feynman_silt import utils
from feynman_silt.errors import InputError
from feynman_silt.paths.grid import TimeGrid
from feynman_silt.paths.rng import shard_sequences
from feynman_silt.paths.sampling import PROCESSES, pivot_to_bridge, sample_motion_batch
from feynman_silt.silt.estimators import SiltEstimate, check_convention, pair_sums

logger = logging.getLogger(__name__)

PATH_BATCH = 64
"""Number of paths sampled at once within a shard"""


class SiltSampling(NamedTuple):
    T: float
    eps: float
    grid_n: int
    process: str = "bridge"
    convention: str = "ordered"
    a: float = 0.
    b: float = 0.


def _shard_samples(job: SiltSampling, n_paths: int, sequence: np.random.SeedSequence) -> np.ndarray:
    rng = np.random.default_rng(sequence)
    grid = TimeGrid.uniform(job.T, job.grid_n)
    samples = []
    for size in utils.near_split(n_paths, size_bins=PATH_BATCH) if n_paths else []:
        values = sample_motion_batch(grid, size, rng)
        if job.process == "bridge":
            values = pivot_to_bridge(values, grid, job.a, job.b)
        samples.append(pair_sums(values, grid, job.eps, job.convention))
    return np.concatenate(samples) if samples else np.zeros(0)


def _run_shard(args) -> np.ndarray:
    return _shard_samples(*args)


def silt_samples(job: SiltSampling, n_samples: int, seed: int, n_shards: int = 1, workers: int = 1,
                 stream: int = 0) -> np.ndarray:
    """
    Sample SILT pair sums of independent paths.

    Samples are split over shards with independent seed sequences and concatenated in shard order, so that the
    output only depends on (seed, stream, n_shards) and not on the number of workers.

    :param job: the sampling parameters
    :param n_samples: total number of paths
    :param seed: experiment seed
    :param n_shards: number of shards
    :param workers: number of worker processes
    :param stream: index of the estimated quantity, to decorrelate e.g. the points of an eps schedule
    :return: array of n_samples values
    """
    if job.process not in PROCESSES:
        raise InputError("Unknown process {}".format(job.process))
    check_convention(job.convention)
    if n_samples < 1:
        raise InputError("At least one sample is required")
    if job.eps <= 0:
        raise InputError("Pair sums need eps > 0, got {}".format(job.eps))
    TimeGrid.uniform(job.T, job.grid_n)
    sequences = shard_sequences(seed, n_shards, stream)
    tasks = [(job, size, sequence) for size, sequence in zip(utils.near_split(n_samples, num_bins=n_shards),
                                                             sequences)]
    if workers > 1 and n_shards > 1:
        logger.info("Sampling {} paths over {} shards on {} workers".format(n_samples, n_shards, workers))
        with ProcessPoolExecutor(max_workers=workers) as executor:
            results: List[np.ndarray] = list(executor.map(_run_shard, tasks))
    else:
        results = [_run_shard(task) for task in tasks]
    return np.concatenate(results)


def estimate_silt(job: SiltSampling, n_samples: int, seed: int, n_shards: int = 1, workers: int = 1,
                  stream: int = 0) -> SiltEstimate:
    """Monte Carlo mean of the SILT pair sum with its standard error."""
    samples = silt_samples(job, n_samples, seed, n_shards, workers, stream)
    return SiltEstimate(value=float(np.mean(samples)), epsilon=job.eps, convention=job.convention,
                        n_grid=job.grid_n, n_samples=samples.size, std_error=utils.standard_error(samples))


def estimate_second_moment(job: SiltSampling, n_samples: int, seed: int, n_shards: int = 1, workers: int = 1,
                           stream: int = 0) -> SiltEstimate:
    """Monte Carlo second moment E[I_eps^2] of the SILT pair sum with its standard error."""
    squares = silt_samples(job, n_samples, seed, n_shards, workers, stream) ** 2
    return SiltEstimate(value=float(np.mean(squares)), epsilon=job.eps, convention=job.convention,
                        n_grid=job.grid_n, n_samples=squares.size, std_error=utils.standard_error(squares))
