"""Quantum speed limit bounds: alpha, beta, forbidden regions and composite-system ratios."""

from ._core import (
    QslError,
    alpha,
    alpha_inverse,
    alpha_lower,
    alpha_upper,
    beta,
    beta_inverse,
    classify_regime,
    convexity_lambda,
    energy_moments,
    entangled_speedup,
    forbidden_floor,
    orthogonality_time,
    qsl_time,
    ratio_curve,
    ratio_lower_bound,
    subadditivity_lambda,
    survival_probability,
    tangent_line,
    time_to_fidelity,
    touch_epsilon,
    two_level_crossing_time,
)

__all__ = [
    "QslError",
    "alpha",
    "alpha_inverse",
    "alpha_lower",
    "alpha_upper",
    "beta",
    "beta_inverse",
    "classify_regime",
    "convexity_lambda",
    "energy_moments",
    "entangled_speedup",
    "forbidden_floor",
    "orthogonality_time",
    "qsl_time",
    "ratio_curve",
    "ratio_lower_bound",
    "subadditivity_lambda",
    "survival_probability",
    "tangent_line",
    "time_to_fidelity",
    "touch_epsilon",
    "two_level_crossing_time",
]
