"""Experiments on the complex-scaled exponential of the SILT: the functional itself, the propagator, the density of
states."""
import logging

import numpy as np
import pandas as pd

from feynman_silt.errors import ConfigError
from feynman_silt.experiments.common.abstract import AbstractExperiment, ExperimentResult
from feynman_silt.experiments.common.manifest import OracleComparison
from feynman_silt.functionals.dos import DAMPINGS, density_of_states
from feynman_silt.functionals.scaled import CouplingParams, exp_silt_mc, free_propagator, propagator
from feynman_silt.paths.sampling import PROCESSES
from feynman_silt.silt.estimators import CONVENTIONS

logger = logging.getLogger(__name__)


class ScaledExperiment(AbstractExperiment):

    """Common configuration of the experiments sampling exp(z I_eps)."""

    @classmethod
    def default_config(cls) -> dict:
        config = super().default_config()
        config.update({
            "T": 1.,  # [time]
            "x0": 0.,  # [length]
            "eps": [1e-1, 1e-2, 1e-3],  # [time]
            "grid_n": 256,  # [intervals]
            "n_samples": 10000,
            "convention": "full-square",
            "order": 0.5,
            "sigmas": cls.ORACLE_SIGMAS,
        })
        return config

    def check_config(self) -> None:
        super().check_config()
        self._require_positive("T", "eps", "grid_n", "n_samples", "order", "sigmas")
        self._require_choice("convention", CONVENTIONS)
        self._require_decreasing("eps")


class ExpSiltExperiment(ScaledExperiment):

    """
    E[exp(z I_eps)] along an eps schedule, with z = -g i^{-1/2}. Every summand must lie in the closed unit disk.
    """

    kind = "exp-silt"

    @classmethod
    def default_config(cls) -> dict:
        config = super().default_config()
        config.update({
            "g": 1.,
            "process": "bridge",
        })
        return config

    def check_config(self) -> None:
        super().check_config()
        self._require_choice("process", PROCESSES)
        if self.config["g"] < 0:
            raise ConfigError("The coupling must be nonnegative, got {}".format(self.config["g"]))

    def _run(self) -> ExperimentResult:
        c = self.config
        params = CouplingParams(c["g"], c["T"], c["x0"])
        self.record_stream(0)
        rows, comparisons = [], []
        for eps in c["eps"]:
            estimate = exp_silt_mc(params, eps, c["grid_n"], c["n_samples"], convention=c["convention"],
                                   process=c["process"], **self.sampling)
            rows.append(dict(estimate.to_dict(), modulus=abs(estimate.value)))
            comparisons.append(OracleComparison("modulus violations eps={:g}".format(eps),
                                                estimate.modulus_violations, 0., 0.,
                                                detail="summands outside the unit disk"))
        table = pd.DataFrame(rows)
        summary = {"g": c["g"], "evaluations": int(c["n_samples"] * len(c["eps"])),
                   "max_modulus": float(table["max_modulus"].max())}
        return ExperimentResult({"results": table}, summary, comparisons)


class PropagatorExperiment(ScaledExperiment):

    """
    The propagator K(x0, T; x0, 0) for several couplings: raw values along the eps schedule and their extrapolation.
    The free coupling must reproduce (2 pi i T)^{-1/2}, interacting ones must not exceed it in modulus.
    """

    kind = "propagator"

    @classmethod
    def default_config(cls) -> dict:
        config = super().default_config()
        config.update({
            "g": [0., 0.1, 1.],
            "free_tolerance": 1e-12,
        })
        return config

    def check_config(self) -> None:
        super().check_config()
        self._require_positive("free_tolerance")
        if not self.config["g"] or any(g < 0 for g in self.config["g"]):
            raise ConfigError("The couplings must be nonnegative, got {}".format(self.config["g"]))

    def _run(self) -> ExperimentResult:
        c = self.config
        self.record_stream(0)
        free = free_propagator(c["T"])
        rows, raw_rows, comparisons = [], [], []
        for g in c["g"]:
            estimate = propagator(CouplingParams(g, c["T"], c["x0"]), c["eps"], c["grid_n"], c["n_samples"],
                                  convention=c["convention"], order=c["order"], **self.sampling)
            gaps = [np.nan] + estimate.gaps
            for sample, value, gap in zip(estimate.sequence, estimate.raw_values, gaps):
                raw_rows.append({"g": g, "epsilon": sample.epsilon, "value": value,
                                 "std_error": abs(estimate.prefactor) * sample.std_error, "gap": gap})
            rows.append({"g": g, "value": estimate.value, "std_error": estimate.std_error,
                         "modulus": abs(estimate.value), "free_modulus": abs(free)})
            if g == 0:
                comparisons.append(OracleComparison("free propagator", abs(estimate.value - free), 0.,
                                                    c["free_tolerance"], detail="(2 pi i T)^(-1/2)"))
                continue
            bound = abs(free) + c["sigmas"] * estimate.std_error
            comparisons.append(OracleComparison("modulus bound g={:g}".format(g), abs(estimate.value), bound, 0.,
                                                passed=abs(estimate.value) <= bound, detail="|K(g)| <= |K(0)|"))
            if len(estimate.gaps) >= 2:
                slack = c["sigmas"] * abs(estimate.prefactor) * max(s.std_error for s in estimate.sequence)
                comparisons.append(OracleComparison(
                    "gaps shrinking g={:g}".format(g), estimate.gaps[-1], estimate.gaps[0], 0.,
                    passed=estimate.gaps[-1] <= estimate.gaps[0] + slack, detail="last gap below the first"))
        summary = {"T": c["T"], "free_value": free, "eps_schedule": list(c["eps"])}
        return ExperimentResult({"results": pd.DataFrame(rows), "sequence": pd.DataFrame(raw_rows)},
                                summary, comparisons)


class DosExperiment(ScaledExperiment):

    """
    Density of states from the trace propagator on a uniform time grid. For g = 0 the table carries the free-particle
    overlay, computed on the same window and damping, which the transform must reproduce.
    """

    kind = "dos"

    @classmethod
    def default_config(cls) -> dict:
        config = super().default_config()
        config.update({
            "g": 0.,
            "eps": [1e-1, 1e-2],  # [time]
            "grid_n": 128,  # [intervals]
            "n_samples": 2000,
            "T_max": 20.,  # [time]
            "n_times": 64,
            "energy_min": 0.05,  # [energy]
            "energy_max": 3.,  # [energy]
            "n_energies": 60,
            "damping": "gaussian",
            "damping_time": None,  # [time]
            "oversampling": 16,
            "oracle_tolerance": 1e-3,
        })
        return config

    def check_config(self) -> None:
        super().check_config()
        self._require_positive("T_max", "n_times", "n_energies", "oversampling", "oracle_tolerance")
        self._require_choice("damping", DAMPINGS)
        if self.config["g"] < 0:
            raise ConfigError("The coupling must be nonnegative, got {}".format(self.config["g"]))
        if self.config["energy_max"] < self.config["energy_min"]:
            raise ConfigError("energy_max must not be below energy_min")
        if self.config["damping_time"] is not None:
            self._require_positive("damping_time")

    def _run(self) -> ExperimentResult:
        c = self.config
        T_grid = np.linspace(c["T_max"] / c["n_times"], c["T_max"], c["n_times"])
        energies = np.linspace(c["energy_min"], c["energy_max"], c["n_energies"])
        mc_options = {}
        if c["g"] > 0:
            self.record_stream(0)
            mc_options = dict(eps_schedule=c["eps"], grid_n=c["grid_n"], n_samples=c["n_samples"],
                              order=c["order"], **self.sampling)
        dos = density_of_states(c["x0"], c["g"], T_grid, energies, damping=c["damping"],
                                damping_time=c["damping_time"], oversampling=c["oversampling"], **mc_options)
        comparisons = []
        if "free_window_dos" in dos.table:
            deviation = float(np.max(np.abs(dos.table["dos"] - dos.table["free_window_dos"])))
            scale = float(np.max(np.abs(dos.table["free_window_dos"])))
            comparisons.append(OracleComparison("free trace transform", deviation, 0., c["oracle_tolerance"] * scale,
                                                detail="relative to the largest free value"))
        return ExperimentResult({"results": dos.table}, dict(dos.metadata), comparisons)
