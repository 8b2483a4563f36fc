from feynman_silt.chaos.basis import BasisVector, TimeBasis, cell_basis, haar_basis, haar_matrix
from feynman_silt.chaos.tensors import symmetrize, contract, tensor_power
from feynman_silt.chaos.vector import ChaosVector, norm_q, wick_exponential, s_transform, wick_product, multiply, \
    evaluate_pointwise, polynomial_functional
from feynman_silt.chaos.projection import project_orth, project_eta, projection_norm_constant
from feynman_silt.chaos.delta import STransformObject, GaussianFunctional, donsker_delta, wick_formula_product
from feynman_silt.chaos.gaussian import gaussian_lp_norm, gaussian_norm_inequality_check
