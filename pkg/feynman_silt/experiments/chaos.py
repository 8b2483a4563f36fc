"""Numerical verification of the chaos calculus: Wick products, projections, Donsker's delta and Gaussian norms."""
import logging
import math
from typing import List, Tuple

import numpy as np
import pandas as pd
from scipy import integrate

from feynman_silt import utils
from feynman_silt.chaos.basis import BasisVector, TimeBasis
from feynman_silt.chaos.delta import donsker_delta, wick_formula_product
from feynman_silt.chaos.gaussian import gaussian_norm_inequality_check
from feynman_silt.chaos.projection import project_eta
from feynman_silt.chaos.tensors import tensor_power
from feynman_silt.chaos.vector import ChaosVector, evaluate_pointwise, multiply, polynomial_functional, s_transform, \
    wick_product
from feynman_silt.errors import ConfigError
from feynman_silt.experiments.common.abstract import AbstractExperiment, ExperimentResult
from feynman_silt.experiments.common.manifest import OracleComparison

logger = logging.getLogger(__name__)

CheckRow = Tuple[str, float, float, int, str]


def _unit(rng: np.random.Generator, d: int) -> BasisVector:
    vector = rng.normal(size=d)
    return BasisVector(vector / np.linalg.norm(vector))


def _random_chaos(rng: np.random.Generator, d: int, degree: int, max_degree: int) -> ChaosVector:
    return ChaosVector([rng.normal(size=(d,) * n) for n in range(degree + 1)], d, max_degree)


def conditioned_expectation(coefficients: np.ndarray, xi: BasisVector, eta: BasisVector) -> float:
    """
    E[delta(<., eta>) f(<., xi>)] for a unit eta and a polynomial f, by quadrature over the conditional law.

    Conditionally on <., eta> = 0, <., xi> is centered Gaussian with variance |xi|^2 - <xi, eta>^2.
    """
    variance = xi.norm ** 2 - np.real(xi.dot(eta)) ** 2
    scale = np.sqrt(max(variance, 0.))
    polynomial = np.polynomial.Polynomial(coefficients)
    if scale == 0:
        return float(polynomial(0.)) / np.sqrt(2 * np.pi)
    value, _ = integrate.quad(lambda y: polynomial(scale * y) * np.exp(-y * y / 2) / np.sqrt(2 * np.pi),
                              -np.inf, np.inf, epsabs=1e-13, epsrel=1e-12)
    return value / np.sqrt(2 * np.pi)


class ChaosVerifyExperiment(AbstractExperiment):

    """
    A table of randomized checks of the chaos algebra, each reported with its largest error and tolerance.
    """

    kind = "chaos-verify"

    @classmethod
    def default_config(cls) -> dict:
        config = super().default_config()
        config.update({
            "basis_dim": 4,
            "max_degree": 6,
            "n_polynomials": 20,
            "n_products": 10,
            "n_inequalities": 100,
            "n_mc": 100000,
            "time_dim": 8,
            "T": 1.,  # [time]
            "wick_tolerance": 1e-8,
            "kernel_tolerance": 1e-10,
            "sigmas": cls.ORACLE_SIGMAS,
        })
        return config

    def check_config(self) -> None:
        super().check_config()
        self._require_positive("basis_dim", "n_polynomials", "n_products", "n_inequalities", "n_mc", "time_dim",
                               "T", "wick_tolerance", "kernel_tolerance", "sigmas")
        if self.config["max_degree"] < 6:
            raise ConfigError("Products of degree 3 vectors need max_degree >= 6, got {}".format(
                self.config["max_degree"]))

    def wick_formula(self) -> CheckRow:
        """Expectation of delta(<., eta>) f(<., xi>) against the conditional quadrature, random quartic f."""
        c, rng = self.config, self.stream_rng(1)
        error = 0.
        for _ in range(c["n_polynomials"]):
            eta, xi = _unit(rng, c["basis_dim"]), BasisVector(rng.normal(size=c["basis_dim"]))
            coefficients = rng.normal(size=rng.integers(1, 6))
            product = wick_formula_product(eta, polynomial_functional(coefficients, xi))
            error = max(error, abs(product.expectation() - conditioned_expectation(coefficients, xi, eta)))
        return "wick formula", error, c["wick_tolerance"], c["n_polynomials"], "random polynomials of degree <= 4"

    def multiplicativity(self) -> CheckRow:
        """P(phi psi) = P(phi) P(psi) at the kernel level, random phi and psi of degree <= 3."""
        c, rng = self.config, self.stream_rng(2)
        error = 0.
        for _ in range(c["n_products"]):
            eta = _unit(rng, c["basis_dim"])
            phi, psi = (_random_chaos(rng, c["basis_dim"], 3, c["max_degree"]) for _ in range(2))
            lhs = project_eta(multiply(phi, psi, c["max_degree"]), eta)
            rhs = multiply(project_eta(phi, eta), project_eta(psi, eta), c["max_degree"])
            degrees = range(c["max_degree"] + 1)
            deviation = max(float(np.max(np.abs(lhs.kernel(n) - rhs.kernel(n)), initial=0.)) for n in degrees)
            scale = max(float(np.max(np.abs(rhs.kernel(n)), initial=0.)) for n in degrees)
            error = max(error, deviation / max(1., scale))
        return "projection multiplicativity", error, c["kernel_tolerance"], c["n_products"], "relative kernel sup norm"

    def wick_s_transform(self) -> CheckRow:
        """S(phi ⋄ psi) = S(phi) S(psi) at random complex directions, relative error."""
        c, rng = self.config, self.stream_rng(3)
        error = 0.
        for _ in range(c["n_products"]):
            phi, psi = (_random_chaos(rng, c["basis_dim"], 3, c["max_degree"]) for _ in range(2))
            product = wick_product(phi, psi, c["max_degree"])
            xi = BasisVector(0.5 * (rng.normal(size=c["basis_dim"]) + 1j * rng.normal(size=c["basis_dim"])))
            expected = s_transform(phi, xi) * s_transform(psi, xi)
            error = max(error, abs(s_transform(product, xi) - expected) / max(1., abs(expected)))
        return "wick product s-transform", error, c["kernel_tolerance"], c["n_products"], "relative error"

    def delta_homogeneity(self) -> CheckRow:
        """delta(<., eta> - a) = delta(<., eta> / z - a / z) / z at the S-transform level, z = i^{1/2}."""
        c, rng = self.config, self.stream_rng(4)
        z = np.sqrt(1j)
        error = 0.
        for _ in range(c["n_polynomials"]):
            eta = _unit(rng, c["basis_dim"])
            a = rng.normal()
            xi = BasisVector(0.5 * (rng.normal(size=c["basis_dim"]) + 1j * rng.normal(size=c["basis_dim"])))
            lhs = donsker_delta(eta, a)(xi)
            rhs = donsker_delta(eta / z, a / z)(xi) / z
            error = max(error, abs(lhs - rhs))
        return "delta homogeneity", error, c["kernel_tolerance"], c["n_polynomials"], "degree -1 with z = i^(1/2)"

    def norm_inequality(self) -> CheckRow:
        """Randomized L^p comparison of two ordered Gaussian measures, count of failures."""
        c, rng = self.config, self.stream_rng(5)
        failures = 0
        for _ in range(c["n_inequalities"]):
            root = np.linalg.cholesky(np.cov(rng.normal(size=(2, 8))) + 0.1 * np.eye(2))
            M = root @ root.T
            N = root @ np.diag(rng.uniform(0.2, 1., size=2)) @ root.T
            N = (N + N.T) / 2
            coefficients = rng.normal(size=(4, 4))
            p = rng.uniform(1., 4.)

            def f(x: np.ndarray, coefficients=coefficients) -> np.ndarray:
                return np.polynomial.polynomial.polyval2d(x[:, 0], x[:, 1], coefficients)
            failures += not gaussian_norm_inequality_check(M, N, f, p, nodes=24)
        return "gaussian norm inequality", failures, 0., c["n_inequalities"], "count of failing random cases"

    def bridge_projection(self) -> CheckRow:
        """P_eta maps <., 1_[0,t)> to <., 1_[0,t) - (t/T) 1_[0,T)> for eta = 1_[0,T) / sqrt(T), dyadic t."""
        c = self.config
        basis = TimeBasis(c["T"], c["time_dim"], "haar")
        eta = basis.indicator(c["T"]) / np.sqrt(c["T"])
        error = 0.
        for j in range(c["time_dim"] + 1):
            t = j * c["T"] / c["time_dim"]
            projected = project_eta(ChaosVector.first_order(basis.indicator(t)), eta)
            expected = basis.indicator(t) - (t / c["T"]) * basis.indicator(c["T"])
            error = max(error, float(np.max(np.abs(projected.kernel(1) - expected.coefficients))))
        return "bridge projection", error, c["kernel_tolerance"], c["time_dim"] + 1, "dyadic times"

    def orthogonality(self) -> List[OracleComparison]:
        """E[<:w^n:, xi^n> <:w^m:, zeta^m>] = delta_nm n! <xi, zeta>^n by Monte Carlo."""
        c, rng = self.config, self.stream_rng(6)
        d = c["basis_dim"]
        xi, zeta = BasisVector(rng.normal(size=d) / np.sqrt(d)), BasisVector(rng.normal(size=d) / np.sqrt(d))
        omega = rng.normal(size=(c["n_mc"], d))
        comparisons = []
        for n, m in [(1, 1), (2, 2), (3, 3), (1, 2), (2, 3), (1, 3)]:
            phi = ChaosVector([None] * n + [tensor_power(xi.coefficients, n)], d, n)
            psi = ChaosVector([None] * m + [tensor_power(zeta.coefficients, m)], d, m)
            samples = np.real(evaluate_pointwise(phi, omega) * evaluate_pointwise(psi, omega))
            reference = float(math.factorial(n) * np.real(xi.dot(zeta)) ** n) if n == m else 0.
            comparisons.append(OracleComparison(
                "orthogonality n={} m={}".format(n, m), np.mean(samples), reference,
                c["sigmas"] * utils.standard_error(samples), detail="{} draws".format(c["n_mc"])))
        return comparisons

    def _run(self) -> ExperimentResult:
        rows, comparisons = [], []
        for check in [self.wick_formula, self.multiplicativity, self.wick_s_transform, self.delta_homogeneity,
                      self.norm_inequality, self.bridge_projection]:
            name, error, tolerance, count, detail = check()
            comparison = OracleComparison(name, error, 0., tolerance, detail=detail)
            logger.info("{}: error {:.3g} over {} cases".format(name, error, count))
            comparisons.append(comparison)
            rows.append({"check": name, "error": error, "tolerance": tolerance, "cases": count,
                         "passed": comparison.passed})
        for comparison in self.orthogonality():
            comparisons.append(comparison)
            rows.append({"check": comparison.name, "error": abs(comparison.value - comparison.reference),
                         "tolerance": comparison.tolerance, "cases": self.config["n_mc"],
                         "passed": comparison.passed})
        table = pd.DataFrame(rows)
        summary = {"checks": len(rows), "failed": int((~table["passed"]).sum())}
        return ExperimentResult({"checks": table}, summary, comparisons)
