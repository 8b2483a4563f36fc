import numpy as np
import pytest

from feynman_silt.chaos.basis import BasisVector
from feynman_silt.chaos.vector import ChaosVector, evaluate_pointwise, multiply, norm_q, polynomial_functional, \
    s_transform, wick_exponential, wick_product
from feynman_silt.errors import DegreeOverflowError, InputError


def test_chaos_vector_construction():
    phi = ChaosVector([2., [1., 0.]], basis_dim=2, max_degree=3)
    assert phi.expectation == 2
    assert phi.degree == 1
    assert phi.kernel(5).shape == (2,) * 5
    assert ChaosVector.vacuum(3).degree == 0
    np.testing.assert_allclose(ChaosVector([0., np.zeros(2), [[0., 1.], [0., 0.]]], 2).kernels[2],
                               [[0., 0.5], [0.5, 0.]])
    with pytest.raises(InputError):
        ChaosVector([0., [1., 0., 0.]], basis_dim=2)
    with pytest.raises(DegreeOverflowError):
        ChaosVector([0., np.zeros(2), np.zeros((2, 2))], basis_dim=2, max_degree=1)


def test_norm_q():
    phi = ChaosVector.first_order(BasisVector([1., 1.]))
    assert norm_q(phi) == pytest.approx(np.sqrt(2))
    assert norm_q(phi, 1) == pytest.approx(2.)
    square = ChaosVector([0., np.zeros(2), [[1., 0.], [0., 0.]]], 2)
    assert norm_q(square) == pytest.approx(np.sqrt(2))
    with pytest.raises(InputError):
        norm_q(phi, -1)


def test_norm_q_grows_with_q(random_chaos):
    phi = random_chaos(3, 3)
    assert norm_q(phi, 0) < norm_q(phi, 1) < norm_q(phi, 2)


def test_wick_exponential():
    xi = BasisVector([0.3, 0.4])
    assert norm_q(wick_exponential(xi, 6)) ** 2 == pytest.approx(np.exp(0.25), abs=1e-7)
    zeta = BasisVector([1j, 0.5])
    assert s_transform(wick_exponential(xi, 10), zeta) == pytest.approx(np.exp(xi.dot(zeta)), rel=1e-12)
    with pytest.raises(InputError):
        wick_exponential(xi, -1)


def test_s_transform_of_wick_product_is_product(rng, random_chaos):
    phi, psi = random_chaos(3, 2), random_chaos(3, 2)
    product = wick_product(phi, psi)
    assert product.max_degree == 4
    assert wick_product(psi, phi).allclose(product)
    for _ in range(5):
        xi = BasisVector(rng.normal(size=3) + 1j * rng.normal(size=3))
        assert s_transform(product, xi) == pytest.approx(s_transform(phi, xi) * s_transform(psi, xi), rel=1e-10)


def test_wick_product_of_first_orders():
    x, y = BasisVector([1., 0.]), BasisVector([0., 2.])
    product = wick_product(ChaosVector.first_order(x), ChaosVector.first_order(y))
    assert product.expectation == 0
    np.testing.assert_allclose(product.kernels[2], [[0., 1.], [1., 0.]])


def test_multiply_first_orders():
    x, y = BasisVector([1., 2.]), BasisVector([3., -1.])
    product = multiply(ChaosVector.first_order(x), ChaosVector.first_order(y))
    assert product.expectation == pytest.approx(x.dot(y))
    assert product.degree == 2


def test_multiply_matches_pointwise_product(rng, random_chaos):
    phi, psi = random_chaos(2, 3), random_chaos(2, 2)
    product = multiply(phi, psi)
    omega = rng.normal(size=(20, 2))
    np.testing.assert_allclose(evaluate_pointwise(product, omega),
                               evaluate_pointwise(phi, omega) * evaluate_pointwise(psi, omega), rtol=1e-10)
    assert multiply(psi, phi).allclose(product, atol=1e-9)


def test_multiply_overflow(random_chaos):
    phi, psi = random_chaos(2, 2), random_chaos(2, 2)
    with pytest.raises(DegreeOverflowError):
        multiply(phi, psi, max_degree=3)
    assert multiply(phi, psi, max_degree=4).max_degree == 4


def test_evaluate_pointwise():
    e1 = BasisVector.unit(2, 0)
    omega = np.array([[0.5, 2.], [-1., 3.]])
    np.testing.assert_allclose(evaluate_pointwise(ChaosVector.first_order(BasisVector([2., 1.])), omega), [3., 1.])
    wick_square = ChaosVector([0., np.zeros(2), np.outer(e1.coefficients, e1.coefficients)], 2)
    np.testing.assert_allclose(evaluate_pointwise(wick_square, omega), omega[:, 0] ** 2 - 1)
    assert evaluate_pointwise(ChaosVector.vacuum(2), np.zeros(2)) == 1
    with pytest.raises(InputError):
        evaluate_pointwise(ChaosVector.vacuum(2), np.zeros(3))


def test_polynomial_functional(rng):
    xi = BasisVector([0.6, 0.8])
    phi = polynomial_functional([1., 2., 3.], xi)
    assert phi.expectation == pytest.approx(4.)
    omega = rng.normal(size=(10, 2))
    y = omega @ xi.coefficients
    np.testing.assert_allclose(evaluate_pointwise(phi, omega), 1 + 2 * y + 3 * y ** 2, rtol=1e-12)
    cubic = polynomial_functional([0., 0., 0., 1.], 2 * xi)
    np.testing.assert_allclose(evaluate_pointwise(cubic, omega), (2 * y) ** 3, rtol=1e-12)


def test_polynomial_functional_edge_cases():
    constant = polynomial_functional([5., 1.], BasisVector([0., 0.]))
    assert constant.expectation == 5
    assert constant.degree == 0
    assert polynomial_functional([1., 1.], BasisVector([1., 0.]), max_degree=4).max_degree == 4
    with pytest.raises(DegreeOverflowError):
        polynomial_functional([1., 0., 1.], BasisVector([1., 0.]), max_degree=1)
    with pytest.raises(InputError):
        polynomial_functional([1., 1.], BasisVector([1j, 0.]))


def test_multiply_within_a_larger_cap(rng):
    d, cap = 3, 6
    phi, psi = (ChaosVector([rng.normal(size=(d,) * n) for n in range(4)], d, cap) for _ in range(2))
    product = multiply(phi, psi, cap)
    assert product.max_degree == cap
    assert product.degree == 6
    omega = rng.normal(size=(10, d))
    expected = evaluate_pointwise(phi, omega) * evaluate_pointwise(psi, omega)
    np.testing.assert_allclose(evaluate_pointwise(product, omega), expected, rtol=1e-9,
                               atol=1e-9 * np.max(np.abs(expected)))
    with pytest.raises(DegreeOverflowError):
        multiply(phi, psi, cap - 1)
