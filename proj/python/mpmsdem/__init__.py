"""2D coupled material-point / spheropolygon-DEM simulator."""

from ._core import (
    Simulation,
    beverloo_fit,
    bspline_weight,
    builtin_scenarios,
    dp_coefficients,
    gimp_weight,
    gimp_weight_gradient,
    run_scenario,
)

__all__ = [
    "Simulation",
    "beverloo_fit",
    "bspline_weight",
    "builtin_scenarios",
    "dp_coefficients",
    "gimp_weight",
    "gimp_weight_gradient",
    "run_scenario",
]
