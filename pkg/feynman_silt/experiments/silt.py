"""Experiments on the regularized SILT of the Brownian bridge and motion: mean, second moment and L^2 convergence."""
import logging

import numpy as np
import pandas as pd

from feynman_silt.experiments.common.abstract import AbstractExperiment, ExperimentResult
from feynman_silt.experiments.common.manifest import OracleComparison
from feynman_silt.paths.sampling import PROCESSES
from feynman_silt.silt.estimators import CONVENTIONS, pair_sum_moments
from feynman_silt.silt.montecarlo import SiltSampling, estimate_second_moment, estimate_silt
from feynman_silt.silt.quadrature import cauchy_gap, gamma2_regions, increment_cov_det, increment_covariance, \
    mean_silt_closed_form, mean_silt_quadrature, second_moment_quadrature

logger = logging.getLogger(__name__)

ORACLES = ("discrete", "quadrature")

HALVING_FACTOR = 1 / (np.sqrt(2) - 1)
"""Turns |m_n - m_{n/2}| into the error of m_n, for discretization orders between 1/2 and 1"""


class SiltExperiment(AbstractExperiment):

    """Common configuration of the SILT experiments."""

    @classmethod
    def default_config(cls) -> dict:
        config = super().default_config()
        config.update({
            "T": 1.,  # [time]
            "process": "bridge",
            "convention": "ordered",
            "eps": [1e-1, 1e-2, 1e-3],  # [time]
            "grid_n": 512,  # [intervals]
            "n_samples": 100000,
            "oracle": "discrete",
            "rtol": 1e-8,
            "sigmas": cls.ORACLE_SIGMAS,
        })
        return config

    def check_config(self) -> None:
        super().check_config()
        self._require_positive("T", "eps", "grid_n", "n_samples", "rtol", "sigmas")
        self._require_choice("process", PROCESSES)
        self._require_choice("convention", CONVENTIONS)
        self._require_choice("oracle", ORACLES)

    def job(self, eps: float) -> SiltSampling:
        return SiltSampling(self.config["T"], eps, self.config["grid_n"], self.config["process"],
                            self.config["convention"])

    def discretization_allowance(self, eps: float, fine: float, moment: int = 1) -> float:
        """
        Discretization error of the pair sum on the grid, measured by halving the number of intervals.

        The quadrature oracle is the continuous limit, so Monte Carlo estimates on a finite grid need this slack on
        top of their standard errors.

        :param eps: regularization
        :param fine: the exact discrete moment on the grid of the experiment
        :param moment: 1 for the mean, 2 for the second moment
        :return: the allowance
        """
        c = self.config
        coarse = pair_sum_moments(c["T"], max(c["grid_n"] // 2, 1), eps, c["process"], c["convention"],
                                  second=moment == 2)[moment - 1]
        return float(HALVING_FACTOR * abs(fine - coarse))

    def mc_comparison(self, name: str, estimate, reference: float, allowance: float = 0.) -> OracleComparison:
        detail = "{} oracle, {:g} standard errors".format(self.config["oracle"], self.config["sigmas"])
        if allowance:
            detail += " + discretization allowance {:.3g}".format(allowance)
        return OracleComparison(name, estimate.value, reference,
                                self.config["sigmas"] * estimate.std_error + allowance, detail=detail)


class SiltMeanExperiment(SiltExperiment):

    """Monte Carlo mean of the pair-sum SILT along an eps schedule, against the quadrature and exact discrete means."""

    kind = "silt-mean"

    @classmethod
    def default_config(cls) -> dict:
        config = super().default_config()
        config.update({
            "a": 0.,  # [length]
            "b": 0.,  # [length]
            "limit_tolerance": 1e-6,
        })
        return config

    def check_config(self) -> None:
        super().check_config()
        self._require_positive("limit_tolerance")

    def _run(self) -> ExperimentResult:
        c = self.config
        centered = c["a"] == c["b"]
        if c["oracle"] == "discrete" and not centered:
            logger.warning("The discrete oracle assumes a = b, comparing against the quadrature")
        rows, comparisons = [], []
        for stream, eps in enumerate(c["eps"]):
            self.record_stream(stream)
            job = self.job(eps)._replace(a=c["a"], b=c["b"])
            estimate = estimate_silt(job, c["n_samples"], stream=stream, **self.sampling)
            quadrature = mean_silt_quadrature(c["T"], eps, c["process"], c["convention"], c["a"], c["b"], c["rtol"])
            centered_mean = pair_sum_moments(c["T"], c["grid_n"], eps, c["process"], c["convention"], second=False)[0]
            discrete = centered_mean if centered else np.nan
            if c["oracle"] == "discrete" and centered:
                reference, allowance = discrete, 0.
            else:
                # the allowance of the centered sums stands in for the pinned ones
                reference, allowance = quadrature, self.discretization_allowance(eps, centered_mean)
            rows.append({"epsilon": eps, "mc_mean": estimate.value, "std_error": estimate.std_error,
                         "quadrature": quadrature, "discrete": discrete,
                         "z_score": estimate.z_score(quadrature), "z_score_discrete": estimate.z_score(discrete)
                         if centered else np.nan, "discretization_allowance": allowance})
            comparisons.append(self.mc_comparison("mean eps={:g}".format(eps), estimate, reference, allowance))
        summary = {"n_samples": c["n_samples"], "grid_n": c["grid_n"]}
        if centered:
            closed_form = mean_silt_closed_form(c["T"], c["process"], c["convention"])
            limit = mean_silt_quadrature(c["T"], 0., c["process"], c["convention"], rtol=c["rtol"])
            comparisons.append(OracleComparison("quadrature limit eps=0", limit, closed_form, c["limit_tolerance"],
                                                detail="closed-form Beta integral"))
            summary.update(closed_form=closed_form, limit_quadrature=limit)
        return ExperimentResult({"results": pd.DataFrame(rows)}, summary, comparisons)


class SiltSecondMomentExperiment(SiltExperiment):

    """
    Monte Carlo second moment of the ordered SILT against the region quadrature, with the region breakdown and a check
    of the closed-form increment determinant against direct covariance assembly.
    """

    kind = "silt-second-moment"

    DETERMINANT_STREAM = 1000
    """Random stream of the determinant check inputs"""

    @classmethod
    def default_config(cls) -> dict:
        config = super().default_config()
        config.update({
            "eps": [1e-2],  # [time]
            "grid_n": 128,  # [intervals]
            "n_samples": 20000,
            "determinant_checks": 1000,
            "determinant_tolerance": 1e-12,
        })
        return config

    def check_config(self) -> None:
        super().check_config()
        self._require_positive("determinant_tolerance")

    def determinant_error(self) -> float:
        """Largest deviation of the closed-form bridge determinant from the assembled one, over random intervals."""
        n_checks = self.config["determinant_checks"]
        if n_checks <= 0:
            return 0.
        T = self.config["T"]
        rng = self.stream_rng(self.DETERMINANT_STREAM)
        times = np.sort(rng.uniform(0., T, size=(n_checks, 2, 2)), axis=2)
        errors = [abs(increment_cov_det(s1, t1, s2, t2, T) -
                      np.linalg.det(increment_covariance(s1, t1, s2, t2, T, "bridge")))
                  for (s1, t1), (s2, t2) in times]
        return float(max(errors))

    def _run(self) -> ExperimentResult:
        c = self.config
        rows, region_rows, comparisons = [], [], []
        for stream, eps in enumerate(c["eps"]):
            self.record_stream(stream)
            estimate = estimate_second_moment(self.job(eps), c["n_samples"], stream=stream, **self.sampling)
            quadrature = second_moment_quadrature(c["T"], eps, process=c["process"], convention=c["convention"],
                                                  rtol=c["rtol"])
            discrete = pair_sum_moments(c["T"], c["grid_n"], eps, c["process"], c["convention"])[1]
            reference = discrete if c["oracle"] == "discrete" else quadrature
            allowance = self.discretization_allowance(eps, discrete, moment=2) if c["oracle"] == "quadrature" else 0.
            rows.append({"epsilon": eps, "mc_second_moment": estimate.value, "std_error": estimate.std_error,
                         "quadrature": quadrature, "discrete": discrete, "z_score": estimate.z_score(quadrature),
                         "z_score_discrete": estimate.z_score(discrete), "discretization_allowance": allowance})
            comparisons.append(self.mc_comparison("second moment eps={:g}".format(eps), estimate, reference,
                                                  allowance))
            regions = gamma2_regions(c["T"], eps, process=c["process"], rtol=c["rtol"])
            region_rows.append(dict(epsilon=eps, **regions))
        error = self.determinant_error()
        comparisons.append(OracleComparison("determinant formula", error, 0., c["determinant_tolerance"],
                                            detail="{} random interval pairs".format(c["determinant_checks"])))
        summary = {"n_samples": c["n_samples"], "grid_n": c["grid_n"], "determinant_max_error": error}
        return ExperimentResult({"results": pd.DataFrame(rows), "regions": pd.DataFrame(region_rows)},
                                summary, comparisons)


class SiltConvergenceExperiment(AbstractExperiment):

    """
    L^2 convergence of the regularized SILT: the Cauchy gaps E[(I_eps - I_{eps/ratio})^2] along a schedule, and the
    discretization error of the exact discrete mean along a sequence of grid sizes.
    """

    kind = "silt-convergence"

    @classmethod
    def default_config(cls) -> dict:
        config = super().default_config()
        config.update({
            "T": 1.,  # [time]
            "process": "bridge",
            "eps": [1e-1, 1e-2, 1e-3, 1e-4],  # [time]
            "ratio": 10.,
            "gap_threshold": 1e-2,
            "grid_sizes": [32, 64, 128, 256],  # [intervals]
            "grid_eps": 1e-2,  # [time]
            "rtol": 1e-8,
            "atol": 1e-10,
        })
        return config

    def check_config(self) -> None:
        super().check_config()
        self._require_positive("T", "eps", "ratio", "gap_threshold", "grid_sizes", "grid_eps", "rtol", "atol")
        self._require_choice("process", PROCESSES)
        self._require_decreasing("eps")

    def _run(self) -> ExperimentResult:
        c = self.config
        gaps = []
        for eps in c["eps"]:
            gap = cauchy_gap(c["T"], eps, eps / c["ratio"], c["process"], c["rtol"], c["atol"])
            logger.info("Cauchy gap at eps={:g}: {:.6g}".format(eps, gap))
            gaps.append({"epsilon": eps, "delta": eps / c["ratio"], "gap": gap})
        gaps = pd.DataFrame(gaps)
        monotone = bool(np.all(np.diff(gaps["gap"]) < 0))
        comparisons = [
            OracleComparison("gaps decreasing", float(monotone), 1., 0., detail="monotone along the schedule"),
            OracleComparison("final gap", gaps["gap"].iloc[-1], 0., c["gap_threshold"],
                             detail="below the threshold"),
        ]

        quadrature = mean_silt_quadrature(c["T"], c["grid_eps"], c["process"], rtol=c["rtol"])
        grid = []
        for n in c["grid_sizes"]:
            discrete = pair_sum_moments(c["T"], n, c["grid_eps"], c["process"], second=False)[0]
            grid.append({"n": n, "epsilon": c["grid_eps"], "discrete_mean": discrete, "quadrature": quadrature,
                         "relative_error": abs(discrete - quadrature) / quadrature})
        grid = pd.DataFrame(grid)
        shrinking = bool(np.all(np.diff(grid["relative_error"]) < 0))
        comparisons.append(OracleComparison("discretization error decreasing", float(shrinking), 1., 0.,
                                            detail="along the grid sizes"))
        summary = {"ratio": c["ratio"], "final_gap": float(gaps["gap"].iloc[-1]),
                   "finest_relative_error": float(grid["relative_error"].iloc[-1])}
        return ExperimentResult({"gaps": gaps, "grid": grid}, summary, comparisons)
