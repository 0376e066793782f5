from conjugate_heat.oracle import (
    circle_heat_solution,
    circle_heat_time_derivative,
    periodized_gaussian,
    theta_series_gaussian,
)
from conjugate_heat.solver import Scheme, SolutionHistory, solve_conjugate
from conjugate_heat.terminal import build_terminal
from conjugate_heat.time_derivative import (
    centered_time_difference,
    pde_residual,
    time_derivative_discrepancy,
    u_time_derivative,
)

__all__ = [
    "Scheme",
    "SolutionHistory",
    "build_terminal",
    "centered_time_difference",
    "circle_heat_solution",
    "circle_heat_time_derivative",
    "pde_residual",
    "periodized_gaussian",
    "solve_conjugate",
    "theta_series_gaussian",
    "time_derivative_discrepancy",
    "u_time_derivative",
]
