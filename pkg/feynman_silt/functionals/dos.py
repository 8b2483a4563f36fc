"""
Density of states from the trace propagator, by a damped Fourier integral in the time variable.

The transform F(E) = int_0^{T_max} K(T) w(T) e^{iET} dT is computed with the substitution T = s^2, which absorbs the
T^{-1/2} singularity of K. The smooth factor E(T) = K(T) (2 pi i T)^{1/2} is interpolated from the T grid.
The density is declared as dos(E) = Re F(E) / pi, in units hbar = m = 1.
"""
import logging
from typing import Dict, Optional, Sequence

import numpy as np
import pandas as pd
from scipy import integrate, interpolate

from feynman_silt import utils
from feynman_silt.errors import InputError
from feynman_silt.functionals.scaled import CouplingParams, free_propagator, propagator

logger = logging.getLogger(__name__)

DAMPINGS = ("gaussian", "exponential")
NORMALIZATION = "dos(E) = Re int_0^Tmax K(T) w(T) exp(iET) dT / pi, hbar = m = 1"


def damping_window(T: np.ndarray, kind: str, tau: float) -> np.ndarray:
    """
    Smooth cutoff of the time integral.

    :param T: times
    :param kind: gaussian, exp(-T^2 / 2 tau^2), or exponential, exp(-T / tau)
    :param tau: damping time, positive
    :return: window values
    """
    if tau <= 0:
        raise InputError("The damping time must be positive, got {}".format(tau))
    if kind == "gaussian":
        return np.exp(-np.square(T) / (2 * tau ** 2))
    elif kind == "exponential":
        return np.exp(-np.asarray(T) / tau)
    else:
        raise InputError("Unknown damping {}".format(kind))


def truncation_error(T_max: float, kind: str, tau: float) -> float:
    """Bound on the part of the damped integral beyond T_max, for expectations of modulus at most 1."""
    value, _ = integrate.quad(lambda T: damping_window(T, kind, tau) / np.sqrt(2 * np.pi * T), T_max, np.inf)
    return float(value)


def free_dos(energy: np.ndarray) -> np.ndarray:
    """Free-particle density of states per unit length, 1 / (pi sqrt(2E)) for E > 0 and 0 otherwise."""
    energy = np.asarray(energy, dtype=float)
    density = np.zeros_like(energy)
    positive = energy > 0
    density[positive] = 1 / (np.pi * np.sqrt(2 * energy[positive]))
    return density


def free_trace_transform(energy: float, T_max: float, kind: str, tau: float) -> complex:
    """
    Transform of the free trace (2 pi i T)^{-1/2} on the window [0, T_max], by adaptive quadrature.

    :return: F(E) for the free particle
    """
    def part(s: float, component: int) -> float:
        value = damping_window(s * s, kind, tau) * np.exp(1j * energy * s * s)
        return value.imag if component else value.real
    real, _ = integrate.quad(part, 0, np.sqrt(T_max), args=(0,), limit=500, epsabs=1e-13, epsrel=1e-11)
    imag, _ = integrate.quad(part, 0, np.sqrt(T_max), args=(1,), limit=500, epsabs=1e-13, epsrel=1e-11)
    return 2 * utils.principal_inverse_sqrt(2j * np.pi) * complex(real, imag)


class DensityOfStates(object):

    """
    An energy table with its metadata.

    Columns: energy, transform_re, transform_im, dos, and optionally free_window_dos (free trace on the same
    window) and free_dos (infinite window).
    """

    def __init__(self, table: pd.DataFrame, metadata: Dict[str, object]) -> None:
        self.table = table
        self.metadata = metadata

    @property
    def transform(self) -> np.ndarray:
        return self.table["transform_re"].to_numpy() + 1j * self.table["transform_im"].to_numpy()


def _check_time_grid(T_grid: np.ndarray, energy_grid: np.ndarray) -> float:
    if T_grid.ndim != 1 or T_grid.size < 4:
        raise InputError("At least 4 times are needed to interpolate the propagator")
    if T_grid[0] <= 0:
        raise InputError("Times must be positive, the propagator is singular at T = 0")
    if not utils.is_uniform(T_grid):
        raise InputError("The T grid must be uniform")
    step = float(T_grid[1] - T_grid[0])
    if energy_grid.size and np.max(np.abs(energy_grid)) * step > np.pi:
        raise InputError("Insufficient T samples: step {} resolves energies up to {}, {} requested".format(
            step, np.pi / step, np.max(np.abs(energy_grid))))
    return step


def trace_propagator(x0: float, g: float, T_grid: Sequence[float], eps_schedule: Sequence[float] = (),
                     grid_n: int = 0, n_samples: int = 0, seed: Optional[int] = None, order: float = 0.5,
                     n_shards: int = 1, workers: int = 1) \
        -> np.ndarray:
    """
    Propagator K(x0, T; x0, 0) at every time of a grid.

    For g = 0 the free propagator is returned without sampling. Otherwise each time is estimated by
    :py:func:`propagator` with the same seed.
    """
    if g == 0:
        return np.array([free_propagator(T) for T in T_grid])
    if seed is None or not eps_schedule or grid_n < 1 or n_samples < 1:
        raise InputError("Sampling the propagator needs a seed, an eps schedule, a grid size and a sample count")
    return np.array([propagator(CouplingParams(g, T, x0), eps_schedule, grid_n, n_samples, seed, order=order,
                                n_shards=n_shards, workers=workers).value
                     for T in T_grid])


def density_of_states(x0: float, g: float, T_grid: Sequence[float], energy_grid: Sequence[float],
                      propagator_values: Optional[Sequence[complex]] = None, damping: str = "gaussian",
                      damping_time: Optional[float] = None, oversampling: int = 16, with_oracle: Optional[bool] = None,
                      **mc_options) -> DensityOfStates:
    """
    Density of states from the trace propagator.

    :param x0: the trace point
    :param g: coupling
    :param T_grid: uniform positive times
    :param energy_grid: energies
    :param propagator_values: K(x0, T; x0, 0) on the T grid, computed with :py:func:`trace_propagator` if missing
    :param damping: gaussian or exponential window
    :param damping_time: window time scale, defaults to T_max / 3
    :param oversampling: points of the substituted grid per time sample
    :param with_oracle: add the free-particle columns, defaults to g == 0
    :param mc_options: sampling options passed to :py:func:`trace_propagator`
    :return: the density of states
    """
    T_grid = np.asarray(T_grid, dtype=float)
    energy_grid = np.asarray(energy_grid, dtype=float)
    step = _check_time_grid(T_grid, energy_grid)
    T_max = float(T_grid[-1])
    tau = T_max / 3 if damping_time is None else float(damping_time)
    damping_window(np.zeros(1), damping, tau)
    if propagator_values is None:
        propagator_values = trace_propagator(x0, g, T_grid, **mc_options)
    values = np.asarray(propagator_values, dtype=complex)
    if values.shape != T_grid.shape:
        raise InputError("Expected one propagator value per time")

    expectation = values * np.sqrt(2j * np.pi * T_grid)
    smooth_re = interpolate.interp1d(T_grid, expectation.real, kind="cubic", fill_value="extrapolate")
    smooth_im = interpolate.interp1d(T_grid, expectation.imag, kind="cubic", fill_value="extrapolate")
    e_max = float(np.max(np.abs(energy_grid))) if energy_grid.size else 0.
    n_points = max(oversampling * T_grid.size, int(np.ceil(16 * e_max * T_max / np.pi)))
    n_points += n_points % 2 == 0
    s = np.linspace(0., np.sqrt(T_max), n_points)
    T = s ** 2
    integrand = (smooth_re(T) + 1j * smooth_im(T)) * damping_window(T, damping, tau)
    phases = np.exp(1j * np.outer(energy_grid, T))
    transform = 2 * utils.principal_inverse_sqrt(2j * np.pi) * integrate.simpson(integrand * phases, x=s, axis=1)

    table = pd.DataFrame({"energy": energy_grid, "transform_re": transform.real, "transform_im": transform.imag,
                          "dos": transform.real / np.pi})
    with_oracle = g == 0 if with_oracle is None else with_oracle
    if with_oracle:
        free = np.array([free_trace_transform(energy, T_max, damping, tau) for energy in energy_grid])
        table["free_window_dos"] = free.real / np.pi
        table["free_dos"] = free_dos(energy_grid)
    metadata = {"x0": x0, "g": g, "window": [0., T_max], "T_step": step, "n_times": int(T_grid.size),
                "damping": damping, "damping_time": tau, "truncation_error": truncation_error(T_max, damping, tau),
                "normalization": NORMALIZATION, "quadrature_points": int(n_points)}
    logger.info("Density of states on {} energies, window [0, {}], {} damping tau={}".format(
        energy_grid.size, T_max, damping, tau))
    return DensityOfStates(table, metadata)
