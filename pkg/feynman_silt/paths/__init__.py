from feynman_silt.paths.grid import TimeGrid
from feynman_silt.paths.rng import make_rng, shard_sequences
from feynman_silt.paths.sampling import PathSample, PROCESSES, sample_motion, sample_bridge, bridge_from_motion, \
    bridge_cov, bridge_mean, motion_cov, covariance_matrix, sample_motion_batch, sample_bridge_batch, \
    pivot_to_bridge
