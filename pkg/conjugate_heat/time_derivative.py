import logging

import numpy as np

from conjugate_heat.solver import SolutionHistory
from exceptions import ConfigError
from geometry.fields import ScalarField
from geometry.flow import FlowTrajectory, snapshot_at
from geometry.operators import laplace_beltrami

logger = logging.getLogger(__name__)


def u_time_derivative(traj: FlowTrajectory, hist: SolutionHistory, t: float) -> ScalarField:
    """u_t = -Δu + R u, t anındaki uzaysal veriden (denklem özdeşliği)."""
    u = hist.field_at(t)
    s = snapshot_at(traj, t)
    lap = laplace_beltrami(s, u)
    R = s.curvature.scalar.values
    derivative = ScalarField(-lap.values + R * u.values, s.grid, s.time, mask=lap.mask)
    logger.debug("t=%.6g için u_t hesaplandı (max |u_t| = %.3e)", t, derivative.max_abs())
    return derivative


def centered_time_difference(hist: SolutionHistory, k: int) -> np.ndarray:
    """Saklanmış geçmişten ikinci mertebe zaman türevi; uçlarda tek yönlü."""
    dt = hist.time_step
    v = hist.values
    if hist.step_count < 2:
        raise ConfigError("Zaman farkı için en az üç örnek gerekir")
    if k == 0:
        return (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * dt)
    if k == hist.step_count:
        return (3.0 * v[k] - 4.0 * v[k - 1] + v[k - 2]) / (2.0 * dt)
    return (v[k + 1] - v[k - 1]) / (2.0 * dt)


def time_derivative_discrepancy(traj: FlowTrajectory, hist: SolutionHistory, t: float) -> float:
    """Denklemden gelen u_t ile saklanmış geçmişin merkezi farkı arasındaki en büyük fark."""
    k = hist.index_of(t)
    from_equation = u_time_derivative(traj, hist, hist.times[k])
    from_history = centered_time_difference(hist, k)
    discrepancy = float(np.max(np.abs(from_equation.values - from_history)))
    logger.info("u_t çapraz denetimi t=%.6g: fark %.3e", t, discrepancy)
    return discrepancy


def pde_residual(traj: FlowTrajectory, hist: SolutionHistory, t: float) -> ScalarField:
    """|(∂_t + Δ - R)u|, zaman farkı ve Laplasyen bağımsız şablonlardan."""
    k = hist.index_of(t)
    if not 0 < k < hist.step_count:
        raise ConfigError(f"t={t!r} iç zaman örneği olmalı")
    u = hist.field(k)
    s = snapshot_at(traj, hist.times[k])
    lap = laplace_beltrami(s, u)
    R = s.curvature.scalar.values
    residual = centered_time_difference(hist, k) + lap.values - R * u.values
    return ScalarField(np.abs(residual), s.grid, s.time)
