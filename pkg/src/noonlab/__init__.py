"""Lossy N00N-state interferometry: closed forms, a Fock-space oracle, optimizers and sweeps."""

__version__ = "0.1.0"

from .analytic import (  # noqa: E402
    CoincidenceDistribution,
    FringeDescriptor,
    NoonCoefficients,
    ProbeConfig,
    advantage_loss_threshold_two_photon,
    advantage_ratio,
    advantage_ratio_optimal_alpha,
    coincidence_distribution,
    detection_probability,
    duality_alpha,
    fisher_alpha_derivative,
    fisher_at_optimal_alpha,
    fisher_information,
    fisher_information_max,
    fisher_loss_derivative,
    fringe_descriptor,
    noon_coefficients,
    optimal_alpha_for_fisher,
    optimal_alpha_for_visibility,
    optimal_loss_for_visibility,
    superiority_alpha_interval_lossless,
    superiority_loss_bound,
    superiority_loss_bound_optimal_alpha,
    visibility,
)
from .metrology import (  # noqa: E402
    OptimumReport,
    RegimeLabel,
    classify_regime,
    find_advantage_threshold,
    find_superiority_threshold,
    maximize_fisher_over_alpha,
    maximize_visibility_over_alpha,
    verify_point,
)
