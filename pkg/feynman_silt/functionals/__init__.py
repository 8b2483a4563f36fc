from feynman_silt.functionals.scaled import CouplingParams, ComplexEstimate, PropagatorEstimate, scaled_exponent, \
    free_propagator, exp_silt_mc, richardson_extrapolate, propagator
from feynman_silt.functionals.dos import DensityOfStates, density_of_states, trace_propagator, free_dos, \
    free_trace_transform, damping_window, truncation_error
