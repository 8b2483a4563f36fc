import numpy as np
import pytest

from feynman_silt.errors import InputError
from feynman_silt.functionals.dos import damping_window, density_of_states, free_dos, trace_propagator, \
    truncation_error
from feynman_silt.functionals.scaled import free_propagator


@pytest.fixture
def times():
    return np.linspace(0.3125, 20., 64)


def test_free_dos():
    np.testing.assert_allclose(free_dos([-1., 0., 2.]), [0., 0., 1 / (2 * np.pi)])


def test_damping_window():
    assert damping_window(np.array([2.]), "gaussian", 2.)[0] == pytest.approx(np.exp(-0.5))
    assert damping_window(np.array([2.]), "exponential", 2.)[0] == pytest.approx(np.exp(-1))
    with pytest.raises(InputError):
        damping_window(np.zeros(1), "gaussian", 0.)
    with pytest.raises(InputError):
        damping_window(np.zeros(1), "lorentzian", 1.)


def test_truncation_error_decreases_with_window():
    assert 0 < truncation_error(20., "gaussian", 20. / 3) < truncation_error(10., "gaussian", 20. / 3)


def test_trace_propagator_without_coupling(times):
    np.testing.assert_allclose(trace_propagator(0., 0., times[:4]), [free_propagator(T) for T in times[:4]])
    with pytest.raises(InputError):
        trace_propagator(0., 1., times[:4])


def test_free_density_of_states(times):
    energies = np.linspace(0.05, 3., 60)
    dos = density_of_states(0., 0., times, energies)
    assert list(dos.table.columns) == ["energy", "transform_re", "transform_im", "dos", "free_window_dos",
                                       "free_dos"]
    reference = dos.table["free_window_dos"].to_numpy()
    assert np.max(np.abs(dos.table["dos"].to_numpy() - reference)) <= 1e-3 * np.max(np.abs(reference))
    np.testing.assert_allclose(dos.transform.real / np.pi, dos.table["dos"])
    assert dos.metadata["window"] == [0., 20.]
    assert dos.metadata["damping_time"] == pytest.approx(20. / 3)
    assert dos.metadata["T_step"] == pytest.approx(0.3125)
    assert "hbar = m = 1" in dos.metadata["normalization"]


def test_density_of_states_without_oracle(times):
    values = [free_propagator(T) for T in times]
    dos = density_of_states(0., 0.5, times, [1.], propagator_values=values, damping="exponential")
    assert "free_dos" not in dos.table
    assert dos.metadata["damping"] == "exponential"


def test_density_of_states_validation(times):
    with pytest.raises(InputError, match="Insufficient T samples"):
        density_of_states(0., 0., np.linspace(1., 20., 20), [4.])
    with pytest.raises(InputError):
        density_of_states(0., 0., np.linspace(0., 20., 64), [1.])
    with pytest.raises(InputError):
        density_of_states(0., 0., np.geomspace(0.1, 20., 64), [1.])
    with pytest.raises(InputError):
        density_of_states(0., 0., times, [1.], propagator_values=[1j])


def test_density_of_states_of_a_vanishing_trace(times):
    dos = density_of_states(0., 0.5, times, np.linspace(0.1, 2., 8), propagator_values=np.zeros(times.size))
    assert not np.any(dos.table["dos"].to_numpy())
    assert not np.any(dos.transform)


def test_doubling_the_window_stays_within_the_truncation_error(times):
    energies = np.linspace(0.2, 2., 10)
    tau = 20. / 3
    doubled = np.linspace(0.3125, 40., 128)
    short = density_of_states(0., 0., times, energies, damping_time=tau)
    long = density_of_states(0., 0., doubled, energies, damping_time=tau)
    bound = short.metadata["truncation_error"]
    assert bound == pytest.approx(truncation_error(20., "gaussian", tau))
    assert np.max(np.abs(long.transform - short.transform)) <= bound
    assert np.max(np.abs(long.table["free_window_dos"] - short.table["free_window_dos"])) <= bound / np.pi
