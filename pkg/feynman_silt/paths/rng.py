from typing import Dict, List, Union

import numpy as np

from feynman_silt.errors import InputError

RandomSource = Union[int, np.random.Generator, np.random.SeedSequence]


def make_rng(source: RandomSource) -> np.random.Generator:
    """
    Turn a seed, seed sequence or generator into a generator.

    Unseeded sources are rejected: every stream must be reproducible.
    """
    if isinstance(source, np.random.Generator):
        return source
    if isinstance(source, np.random.SeedSequence):
        return np.random.default_rng(source)
    if isinstance(source, (int, np.integer)) and not isinstance(source, bool):
        if source < 0:
            raise InputError("Seeds must be nonnegative, got {}".format(source))
        return np.random.default_rng(int(source))
    raise InputError("Expected a seed or a seeded generator, got {!r}".format(source))


def shard_sequences(seed: int, n_shards: int, stream: int = 0) -> List[np.random.SeedSequence]:
    """
    Independent seed sequences, one per shard.

    The sequence of shard i only depends on (seed, stream, i), so that results do not depend on how shards
    are scheduled on workers.

    :param seed: the experiment seed
    :param n_shards: number of shards
    :param stream: index of the quantity being estimated, e.g. the position in an eps schedule
    :return: the list of seed sequences
    """
    if n_shards < 1:
        raise InputError("At least one shard is required")
    root = np.random.SeedSequence(entropy=int(seed), spawn_key=(int(stream),))
    return root.spawn(int(n_shards))


def describe(sequence: np.random.SeedSequence) -> Dict[str, object]:
    """JSON-friendly description of a seed sequence, for run manifests."""
    return {"entropy": int(sequence.entropy), "spawn_key": [int(k) for k in sequence.spawn_key]}
