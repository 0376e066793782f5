from entropy.functional import (
    check_normalization,
    entropy_production,
    entropy_production_density,
    tau_terminal,
    w_entropy,
)
from entropy.monotonicity import max_residual, min_derivative, monotonicity_check

__all__ = [
    "check_normalization",
    "entropy_production",
    "entropy_production_density",
    "max_residual",
    "min_derivative",
    "monotonicity_check",
    "tau_terminal",
    "w_entropy",
]
