import numpy as np
import pytest

from feynman_silt.chaos.basis import BasisVector
from feynman_silt.chaos.delta import GaussianFunctional, STransformObject, donsker_delta, wick_formula_product
from feynman_silt.chaos.vector import ChaosVector, polynomial_functional
from feynman_silt.errors import InputError, UnsupportedCaseError


def test_donsker_delta_expectation():
    e1 = BasisVector.unit(2, 0)
    delta = donsker_delta(e1)
    assert delta.kind == "donsker-delta"
    assert delta.expectation() == pytest.approx(1 / np.sqrt(2 * np.pi))
    assert delta([0.5, 3.]) == pytest.approx(np.exp(-0.125) / np.sqrt(2 * np.pi))
    assert donsker_delta(e1, a=1.)([1., 0.]) == pytest.approx(1 / np.sqrt(2 * np.pi))
    assert donsker_delta(2 * e1).expectation() == pytest.approx(1 / np.sqrt(8 * np.pi))


def test_donsker_delta_complex_scaling():
    eta = BasisVector([0.6, 0.8])
    z = complex(np.sqrt(1j))
    xi = BasisVector([0.3 + 0.1j, -0.2])
    assert donsker_delta(eta * z)(xi) == pytest.approx(donsker_delta(eta)(xi) / z, rel=1e-12)


@pytest.mark.parametrize("eta", [[1j, 0.], [0., 0.]])
def test_donsker_delta_branch_cut(eta):
    with pytest.raises(InputError):
        donsker_delta(BasisVector(eta))


def test_s_transform_object():
    phi = ChaosVector([2., [1., 0.]], 2)
    transform = STransformObject.from_chaos(phi)
    assert transform([3., 0.]) == pytest.approx(5.)
    assert transform.scaled(2j)([3., 0.]) == pytest.approx(10j)
    product = transform.wick(donsker_delta(BasisVector.unit(2, 1)))
    assert product.kind == "wick-product"
    assert product.expectation() == pytest.approx(2 / np.sqrt(2 * np.pi))
    with pytest.raises(InputError):
        transform([1., 2., 3.])
    with pytest.raises(InputError):
        STransformObject(lambda xi: 0., "distribution", 2)


def test_wick_formula_with_chaos_vector():
    xi, eta = BasisVector([0.6, 0.8, 0.]), BasisVector.unit(3, 0)
    product = wick_formula_product(eta, polynomial_functional([0., 0., 1.], xi))
    expected = (xi.norm ** 2 - xi.dot(eta) ** 2) / np.sqrt(2 * np.pi)
    assert product.expectation() == pytest.approx(expected, rel=1e-12)
    zeta = BasisVector([0.1, 0.2, 0.3])
    pinned = xi.dot(zeta) - xi.dot(eta) * eta.dot(zeta)
    assert product(zeta) == pytest.approx(np.exp(-0.005) / np.sqrt(2 * np.pi) * (0.64 + pinned ** 2), rel=1e-12)


def test_wick_formula_with_gaussian_functional():
    xi, eta = BasisVector([0.6, 0.8, 0.]), BasisVector.unit(3, 0)
    functional = GaussianFunctional([xi], lambda y: y[:, 0] ** 2)
    assert functional.expectation() == pytest.approx(1.)
    assert functional.s_transform([1., 0., 0.]) == pytest.approx(1 + 0.36)
    product = wick_formula_product(2 * eta, functional)
    from_chaos = wick_formula_product(2 * eta, polynomial_functional([0., 0., 1.], xi))
    assert product.expectation() == pytest.approx(from_chaos.expectation(), rel=1e-10)
    assert product.expectation() == pytest.approx(0.32 / np.sqrt(2 * np.pi), rel=1e-10)


def test_wick_formula_needs_eta_outside_the_span():
    eta = BasisVector([1., 1., 0.])
    with pytest.raises(UnsupportedCaseError):
        wick_formula_product(eta, polynomial_functional([0., 1.], eta))
    with pytest.raises(UnsupportedCaseError):
        wick_formula_product(eta, GaussianFunctional([[1., 0., 0.], [0., 1., 0.]], lambda y: y[:, 0]))
    with pytest.raises(InputError):
        wick_formula_product(BasisVector([1j, 0., 0.]), ChaosVector.vacuum(3))
    with pytest.raises(InputError):
        wick_formula_product(eta, "x")
