import numpy as np
import pytest

from feynman_silt.errors import InputError
from feynman_silt.paths.grid import TimeGrid
from feynman_silt.paths.rng import describe, make_rng, shard_sequences


def test_uniform_grid():
    grid = TimeGrid.uniform(2., 4)
    assert grid.n == 4
    assert len(grid) == 5
    assert grid.is_uniform
    assert grid.step == pytest.approx(0.5)
    assert grid.points[-1] == 2.
    assert grid == TimeGrid(2., [0., 0.5, 1., 1.5, 2.])


def test_grid_is_read_only():
    grid = TimeGrid.uniform(1., 8)
    with pytest.raises(ValueError):
        grid.points[1] = 0.3


def test_non_uniform_grid():
    grid = TimeGrid(1., [0., 0.1, 0.5, 1.])
    assert not grid.is_uniform
    with pytest.raises(InputError):
        grid.step


@pytest.mark.parametrize("T, points", [
    (1., [0.]),
    (1., [0.1, 1.]),
    (1., [0., 0.5]),
    (1., [0., 0.6, 0.4, 1.]),
    (0., [0., 0.]),
    (-1., [0., -1.]),
])
def test_invalid_grids(T, points):
    with pytest.raises(InputError):
        TimeGrid(T, points)


@pytest.mark.parametrize("n", [0, -2, 1.5])
def test_invalid_uniform_size(n):
    with pytest.raises(InputError):
        TimeGrid.uniform(1., n)


def test_make_rng():
    assert make_rng(3).standard_normal() == make_rng(3).standard_normal()
    generator = np.random.default_rng(1)
    assert make_rng(generator) is generator
    for source in [None, -1, "seed", True]:
        with pytest.raises(InputError):
            make_rng(source)


def test_shard_sequences_are_reproducible_and_independent():
    first, second = shard_sequences(42, 3), shard_sequences(42, 3)
    assert [describe(s) for s in first] == [describe(s) for s in second]
    draws = [np.random.default_rng(s).standard_normal() for s in first]
    assert len(set(draws)) == 3
    other_stream = shard_sequences(42, 3, stream=1)
    assert describe(other_stream[0]) != describe(first[0])
    assert describe(first[2]) == {"entropy": 42, "spawn_key": [0, 2]}
    with pytest.raises(InputError):
        shard_sequences(42, 0)
