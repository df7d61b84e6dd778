"""Luxemburg norms, growth-condition checks and the Hardy-Littlewood maximal
operator for generalized Orlicz integrands on uniform 1-D and 2-D grids."""

from .errors import (ArgumentError, ConfigError, DomainError, EmptyBallError, FieldFormatError, MosmaxError,
                     NonConvergentFamilyError, NumericalError, PreconditionError, UnboundedConjugateError,
                     UndefinedBoundError)
from .grid_field import (Ball, Grid, GridField, ball_average, candidate_radii, load_field, make_field,
                         save_field)
from .maximal import (RadiusBound, RadiusSet, average_decay_bound, localization_check, max_radius,
                      maximal_function, maximal_function_naive, radius_set, radius_table, radius_upper_bound)
from .modular_norm import (NormReport, check_embedding, check_holder, check_norm_modular_comparison,
                           check_smallness_certificate, check_tail_certificate, lp_norm, luxemburg_norm, modular,
                           norm, smallness_threshold, tail_radius)
from .phi_core import (Box, ConditionReport, DecayConstants, PhiFunction, SampleSpec, SearchSpec, check_a0,
                       check_a1_double_phase, check_a1_variable_exponent, check_a2_variable_exponent, check_adec,
                       check_ainc, conjugate, conjugate_phi, decay_constants, eval_phi, example_conditions,
                       left_inverse)
from .reports import VerificationReport
from .sobolev_max import (ContinuityTrace, PerturbationFamily, SobolevField, check_derivative_formula,
                          check_gradient_bound, continuity_experiment, radius_stability, sobolev_norm,
                          uniform_radius_bound_check, weak_gradient)

__version__ = "0.1.0"
