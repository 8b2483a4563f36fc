from feynman_silt.silt.kernels import heat_kernel, schrodinger_kernel
from feynman_silt.silt.estimators import CONVENTIONS, SiltEstimate, silt_pair_sum, pair_sums, \
    silt_local_time_oracle, matched_epsilon, pair_sum_moments
from feynman_silt.silt.montecarlo import SiltSampling, silt_samples, estimate_silt, estimate_second_moment
from feynman_silt.silt.quadrature import REGIONS, OverlapGeometry, mean_silt_quadrature, mean_silt_closed_form, \
    overlap_length, increment_covariance, increment_cov_det, inverse_sqrt_quadratic_integral, gamma2_regions, \
    second_moment_quadrature, cauchy_gap
