"""Run every experiment kind on a reduced configuration: the oracle suite."""
import logging
import tempfile
from pathlib import Path
from typing import Dict, List, Optional, Union

from feynman_silt import EXPERIMENTS, experiment_class
from feynman_silt.experiments.common.manifest import RunManifest

logger = logging.getLogger(__name__)

SELFTEST_SEED = 20161
"""Seed of every selftest run"""

REDUCED_CONFIGS: Dict[str, dict] = {
    "silt-mean": {"eps": [1e-1, 1e-2], "grid_n": 64, "n_samples": 4000},
    "silt-second-moment": {"eps": [5e-2], "grid_n": 32, "n_samples": 4000, "determinant_checks": 200},
    "silt-convergence": {"grid_sizes": [16, 32, 64]},
    "exp-silt": {"eps": [1e-1, 1e-2], "grid_n": 64, "n_samples": 2000},
    "propagator": {"g": [0., 0.5], "eps": [1e-1, 1e-2, 1e-3], "grid_n": 64, "n_samples": 1000},
    "dos": {},
    "chaos-verify": {"n_products": 3, "n_inequalities": 20, "n_mc": 20000},
}


def selftest(output: Optional[Union[str, Path]] = None, workers: Optional[int] = None) -> List[RunManifest]:
    """
    Run the reduced configuration of every registered experiment.

    :param output: directory of the runs, a temporary one by default
    :param workers: number of worker processes
    :return: the manifests, in registration order
    """
    with tempfile.TemporaryDirectory(prefix="feynman-silt-selftest-") as scratch:
        root = Path(output) if output is not None else Path(scratch)
        manifests = []
        for kind in EXPERIMENTS:
            config = dict(REDUCED_CONFIGS.get(kind, {}), seed=SELFTEST_SEED)
            if workers is not None:
                config["workers"] = workers
            manifest = experiment_class(kind)(config).run(root / kind)
            logger.info("Selftest {}: {}".format(kind, "pass" if manifest.passed else "FAIL"))
            manifests.append(manifest)
    return manifests
