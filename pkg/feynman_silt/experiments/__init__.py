from feynman_silt.experiments.silt import SiltMeanExperiment, SiltSecondMomentExperiment, SiltConvergenceExperiment
from feynman_silt.experiments.scaled import ExpSiltExperiment, PropagatorExperiment, DosExperiment
from feynman_silt.experiments.chaos import ChaosVerifyExperiment
