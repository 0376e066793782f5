"""W-entropisi ve üretim integrali.

v = √u ile W = ∫[τ(4|∇v|² + Rv²) - v² ln v² - (n/2) ln(4πτ) v² - n v²] dg;
4|∇v|² = |∇u|²/u olduğundan hesap doğrudan u üzerinden yapılır.
"""

import logging
import math

import numpy as np

from analysis.tensors import symmetric_outer
from exceptions import ConfigError, NormalizationError
from geometry.fields import ScalarField
from geometry.flow import FlowTrajectory
from geometry.operators import (
    gradient_components,
    gradient_sq,
    hessian_frame,
    integrate,
    metric_frame,
)
from geometry.snapshot import BackendKind, GeometrySnapshot

logger = logging.getLogger(__name__)

MASS_TOLERANCE = 1e-8


def _check_inputs(u: ScalarField, tau: float) -> None:
    if not tau > 0:
        raise ConfigError(f"τ pozitif olmalı, verilen: {tau}")
    if u.mask is not None or np.any(u.values <= 0):
        raise ConfigError("Entropi her düğümde kesin pozitif u ister")


def check_normalization(s: GeometrySnapshot, u: ScalarField,
                        tolerance: float = MASS_TOLERANCE) -> float:
    """
    ∫u dg'yi döndürür.

    Raises:
        NormalizationError: |∫u dg - 1| > tolerance
    """
    mass = integrate(s, u)
    if abs(mass - 1.0) > tolerance:
        raise NormalizationError(f"∫u dg = {mass!r}, 1'den sapma {abs(mass - 1.0):.3e}")
    return mass


def w_entropy(s: GeometrySnapshot, u: ScalarField, tau: float, strict: bool = False) -> float:
    _check_inputs(u, tau)
    if strict:
        check_normalization(s, u)
    n = s.dimension
    values = u.values
    R = s.curvature.scalar.values
    integrand = (tau * (gradient_sq(s, u).values / values + R * values)
                 - values * np.log(values)
                 - 0.5 * n * math.log(4.0 * math.pi * tau) * values
                 - n * values)
    return integrate(s, ScalarField(integrand, s.grid, s.time))


def entropy_production_density(s: GeometrySnapshot, u: ScalarField, tau: float) -> ScalarField:
    """|Ric - Hess ln u - g/(2τ)|² u; Hess ln u = ∇²u/u - du⊗du/u²."""
    _check_inputs(u, tau)
    values = u.values
    grad_log = [c / values for c in gradient_components(s, u)]
    hess_log = (hessian_frame(s, u).scale(1.0 / values)
                .minus(symmetric_outer(s, grad_log, grad_log).scale(0.5)))
    soliton = s.curvature.ricci.minus(hess_log).minus(metric_frame(s).scale(0.5 / tau))
    return ScalarField(soliton.norm_sq() * values, s.grid, s.time)


def entropy_production(s: GeometrySnapshot, u: ScalarField, tau: float) -> float:
    """2τ ∫ |Ric - Hess ln u - g/(2τ)|² u dg ≥ 0."""
    return 2.0 * tau * integrate(s, entropy_production_density(s, u, tau))


def tau_terminal(traj: FlowTrajectory) -> float:
    """
    Büzülen kürede τ'nun kalan ömür olması için τ(T) = r(T)²/(2(n-1)); diğer
    arka uçlarda 0.
    """
    if traj.backend == BackendKind.SHRINKING_SPHERE:
        return traj.radius_at(traj.final_time) ** 2 / (2.0 * (traj.dimension - 1))
    return 0.0
