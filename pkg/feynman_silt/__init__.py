from typing import Callable, Dict

from feynman_silt import utils
from feynman_silt.errors import ConfigError

__version__ = "0.3.0"

EXPERIMENTS: Dict[str, str] = {}
"""Experiment kinds, mapped to the path of their class"""


def register(kind: str, entry_point: str) -> None:
    EXPERIMENTS[kind] = entry_point


def register_experiments() -> None:
    """Register every experiment kind, by the path of the class implementing it."""

    # silt.py
    register('silt-mean', 'feynman_silt.experiments.silt.SiltMeanExperiment')
    register('silt-second-moment', 'feynman_silt.experiments.silt.SiltSecondMomentExperiment')
    register('silt-convergence', 'feynman_silt.experiments.silt.SiltConvergenceExperiment')

    # scaled.py
    register('exp-silt', 'feynman_silt.experiments.scaled.ExpSiltExperiment')
    register('propagator', 'feynman_silt.experiments.scaled.PropagatorExperiment')
    register('dos', 'feynman_silt.experiments.scaled.DosExperiment')

    # chaos.py
    register('chaos-verify', 'feynman_silt.experiments.chaos.ChaosVerifyExperiment')


def experiment_class(kind: str) -> Callable:
    """
    Resolve an experiment kind into its class.

    :param kind: a registered kind
    :return: the experiment class
    """
    if kind not in EXPERIMENTS:
        raise ConfigError("Unknown experiment kind {!r}, expected one of {}".format(kind, sorted(EXPERIMENTS)))
    return utils.class_from_path(EXPERIMENTS[kind])


register_experiments()
