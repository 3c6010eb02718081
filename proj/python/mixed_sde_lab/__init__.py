"""Numerical laboratory for mixed SDEs driven by a Wiener process and a
fractional Brownian motion with Hurst index H > 1/2."""

from ._core import (
    BoundReport,
    CoefficientSet,
    GridPath,
    StepFunction,
    J_statistic,
    alpha_max,
    convergence_study,
    duhamel_reconstruct,
    estimate_exp_moment,
    fbm_covariance,
    fractional_inner_product,
    holder_seminorm,
    mixed_inner_product,
    model_zoo,
    model_zoo_names,
    pathwise_bound_check,
    sample_fbm,
    sample_wiener,
    smoothed_driver,
    solve_mixed,
    solve_smoothed,
    solve_variational_fbm,
    solve_variational_wiener,
    sup_norm,
    young_bound,
    young_constant,
    young_integral,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
