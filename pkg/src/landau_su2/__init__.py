"""Generalized two-mode su(2) coherent states for Landau levels.

The package builds the states, evaluates all of their closed-form statistics
(normalization, overlaps, ladder moments, quadrature and su(2) squeezing,
Mandel parameters, cross-correlation, resolution-of-identity measure) and
cross-checks every closed form against an independent brute-force two-mode
Fock-space oracle.
"""

from landau_su2.coherent_states import (
    CoherencePoint,
    ModelParams,
    StateVector,
    build_state,
    build_state_deformed,
    deformation_function,
    normalization_constant,
    overlap,
    overlap_cross_r,
)
from landau_su2.observables import (
    PhotonStats,
    QuadratureReport,
    Su2Moments,
    Su2SqueezeReport,
    cross_correlation,
    mandel_q,
    number_moments,
    quadrature_covariances,
    su2_moments,
    su2_squeeze,
)
from landau_su2.measure import MeasureParams, density, identity_resolution_check, moment_residual

__version__ = "0.1.0"

__all__ = [
    "CoherencePoint",
    "ModelParams",
    "StateVector",
    "build_state",
    "build_state_deformed",
    "deformation_function",
    "normalization_constant",
    "overlap",
    "overlap_cross_r",
    "PhotonStats",
    "QuadratureReport",
    "Su2Moments",
    "Su2SqueezeReport",
    "cross_correlation",
    "mandel_q",
    "number_moments",
    "quadrature_covariances",
    "su2_moments",
    "su2_squeeze",
    "MeasureParams",
    "density",
    "identity_resolution_check",
    "moment_residual",
]
