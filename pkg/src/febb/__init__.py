"""Non-local (fractional-derivative) Euler-Bernoulli cantilever toolkit.

Solves the bending of a tip-loaded cantilever whose curvature is measured by
a symmetric two-sided Caputo derivative of the slope over a material length
scale, and identifies the model parameters (order alpha per cross-section,
shared length scale and modulus) from measured stiffness-versus-length data.
"""

from .beam import (BeamProfiles, BeamSpec, DeflectionField, FractionalParams,
                   Grid, LinearSystem, assemble, build_grid, moment_profile,
                   normalized_tip, postprocess, second_moment, solve,
                   solve_deflection, tip_deflection)
from .errors import ConfigError, FebbError, NumericError, SingularMatrixError
from .fractional import (CaputoStencil, apply_rc_slope_derivative,
                         direct_quadrature_left, left_caputo_stencil,
                         right_caputo_stencil, trapezoid_coeffs)
from .identify import (ExperimentRecord, FitResult, SeriesGroup,
                       choose_half_width, fit, objective, optimal_modulus,
                       predict_enl, stiffness_ratio)
from .linalg import (USING_COMPILED, BandedMatrix, PivotedFactorization,
                     lu_factor, lu_solve, residual_norm)

__version__ = "0.1.0"

__all__ = [
    "BeamProfiles", "BeamSpec", "DeflectionField", "FractionalParams", "Grid",
    "LinearSystem", "assemble", "build_grid", "moment_profile",
    "normalized_tip", "postprocess", "second_moment", "solve",
    "solve_deflection", "tip_deflection",
    "ConfigError", "FebbError", "NumericError", "SingularMatrixError",
    "CaputoStencil", "apply_rc_slope_derivative", "direct_quadrature_left",
    "left_caputo_stencil", "right_caputo_stencil", "trapezoid_coeffs",
    "ExperimentRecord", "FitResult", "SeriesGroup", "choose_half_width",
    "fit", "objective", "optimal_modulus", "predict_enl", "stiffness_ratio",
    "USING_COMPILED", "BandedMatrix", "PivotedFactorization", "lu_factor",
    "lu_solve", "residual_norm",
    "__version__",
]
