import logging
import os
from pathlib import Path
from typing import Dict, Iterable, List, NamedTuple, Optional, Union

import numpy as np
import pandas as pd

from feynman_silt import __version__
from feynman_silt.errors import ConfigError
from feynman_silt.experiments.common.config import EXPERIMENT_KEYS, ExperimentConfig, coerce_parameters
from feynman_silt.experiments.common.manifest import OracleComparison, RunManifest, timestamp
from feynman_silt.paths.rng import describe, shard_sequences

logger = logging.getLogger(__name__)


def _environment_workers() -> int:
    raw = os.environ.get("FEYNMAN_SILT_WORKERS", "1")
    try:
        return int(raw)
    except ValueError:
        raise ConfigError("FEYNMAN_SILT_WORKERS must be an integer, got {!r}".format(raw))


class ExperimentResult(NamedTuple):
    tables: Dict[str, pd.DataFrame]
    summary: Dict[str, object]
    comparisons: List[OracleComparison]


class AbstractExperiment(object):

    """
    A reproducible numerical study.

    The configuration is a flat dict merging the experiment keys (seed, output, shards, workers) with the parameters
    of the study. Implementations define their defaults in default_config() and their computation in _run().
    """

    kind: str = None

    ORACLE_SIGMAS = 3.
    """Default tolerance of Monte Carlo oracle comparisons, in standard errors"""

    def __init__(self, config: dict = None) -> None:
        self.config = self.default_config()
        self.configure(config)
        self.check_config()
        self.shard_seeds: Dict[str, List[dict]] = {}

    @classmethod
    def default_config(cls) -> dict:
        """
        Default experiment configuration.

        Can be overloaded in experiment implementations, or by calling configure().
        :return: a configuration dict
        """
        return {
            "seed": None,
            "output": "results",
            "shards": 1,
            "workers": _environment_workers(),
        }

    @classmethod
    def from_config(cls, config: ExperimentConfig) -> "AbstractExperiment":
        """Build an experiment from a parsed configuration file."""
        if config.kind != cls.kind:
            raise ConfigError("Cannot run a {} configuration as {}".format(config.kind, cls.kind))
        parameters = coerce_parameters(config.parameters, cls.default_config())
        parameters.update(seed=config.seed, output=config.output, shards=config.shards)
        if config.workers is not None:
            parameters["workers"] = config.workers
        return cls(parameters)

    def configure(self, config: dict) -> None:
        if config:
            self.config.update(config)

    def check_config(self) -> None:
        """Validate the configuration, raising a ConfigError on the first problem."""
        seed = self.config["seed"]
        if seed is None:
            raise ConfigError("The experiment seed is mandatory")
        if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)) or seed < 0:
            raise ConfigError("The seed must be a nonnegative integer, got {!r}".format(seed))
        self._require_positive("shards", "workers")

    def _require_positive(self, *keys: str) -> None:
        for key in keys:
            values = self.config[key]
            for value in values if isinstance(values, (list, tuple)) else [values]:
                if value is None or not np.isfinite(value) or value <= 0:
                    raise ConfigError("{} must be positive, got {!r}".format(key, values))

    def _require_choice(self, key: str, choices: Iterable[str]) -> None:
        choices = tuple(choices)
        if self.config[key] not in choices:
            raise ConfigError("{} must be one of {}, got {!r}".format(key, choices, self.config[key]))

    def _require_decreasing(self, key: str) -> None:
        values = self.config[key]
        if not values:
            raise ConfigError("{} must not be empty".format(key))
        if any(b >= a for a, b in zip(values[:-1], values[1:])):
            raise ConfigError("{} must be decreasing, got {}".format(key, values))

    @property
    def sampling(self) -> dict:
        """Keyword arguments of the sharded samplers."""
        return {"seed": self.config["seed"], "n_shards": self.config["shards"], "workers": self.config["workers"]}

    def record_stream(self, stream: int) -> None:
        """Record the shard seeds of a random stream in the manifest."""
        sequences = shard_sequences(self.config["seed"], self.config["shards"], stream)
        self.shard_seeds[str(stream)] = [describe(sequence) for sequence in sequences]

    def stream_rng(self, stream: int) -> np.random.Generator:
        """A single generator on a random stream, recorded in the manifest."""
        sequence = shard_sequences(self.config["seed"], 1, stream)[0]
        self.shard_seeds[str(stream)] = [describe(sequence)]
        return np.random.default_rng(sequence)

    def config_echo(self) -> dict:
        experiment = {key: self.config[key] for key in EXPERIMENT_KEYS if key in self.config}
        parameters = {key: value for key, value in self.config.items() if key not in EXPERIMENT_KEYS}
        return ExperimentConfig(self.kind, parameters=parameters, **experiment).to_dict()

    def _run(self) -> ExperimentResult:
        """
        Compute the result tables, summary and oracle comparisons.

        :return: the experiment result
        """
        raise NotImplementedError

    def run(self, output: Optional[Union[str, Path]] = None) -> RunManifest:
        """
        Run the experiment, write its tables and manifest.

        :param output: output directory, defaults to the configured one
        :return: the manifest
        """
        directory = Path(output if output is not None else self.config["output"])
        self.shard_seeds = {}
        started = timestamp()
        logger.info("Running {} with seed {}".format(self.kind, self.config["seed"]))
        result = self._run()
        manifest = RunManifest(self.kind, self.config_echo(), __version__, started, timestamp(), self.shard_seeds,
                               result.summary, result.comparisons, {})
        manifest.save(directory, result.tables)
        for comparison in manifest.failures:
            logger.warning("Oracle comparison failed: {}".format(comparison))
        logger.info("Finished {}: {}".format(self.kind, "pass" if manifest.passed else "FAIL"))
        return manifest

    def __repr__(self) -> str:
        return "{}(seed={})".format(self.__class__.__name__, self.config["seed"])
