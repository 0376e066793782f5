"""Kestirimlerin arkasındaki tam evrim özdeşliklerinin artıkları.

Her artık, iki tarafı bağımsız şablonlardan kurulmuş |sol - sağ| alanıdır; özdeşlik
tam olduğundan inceltmeyle sıfıra yakınsar. Zaman türevleri saklanmış geçmişte
merkezi farklardır, bu yüzden uç zamanlar dışarıda kalır.
"""

from dataclasses import dataclass
from typing import Optional, Tuple
import logging

import numpy as np

from analysis.gradient import quantity_from_slice
from analysis.hessian import v_from_slice, w_from_slice
from analysis.slices import TimeSlice, neighbours_in_time, slice_at
from analysis.tensors import (
    curvature_action,
    frame_time_derivative,
    ricci_commutator,
    ricci_gradient_term,
    symmetric_outer,
)
from conjugate_heat.solver import SolutionHistory
from exceptions import ConfigError
from geometry.fields import FrameTensorField, ScalarField
from geometry.flow import FlowTrajectory, snapshot_at
from geometry.operators import (
    covariant_derivative_along,
    gradient_components,
    gradient_sq,
    hessian_frame,
    inner_gradients,
    laplace_beltrami,
    rough_laplacian,
)
from geometry.snapshot import BackendKind, GeometrySnapshot
from geometry.stencils import combine_masks
from models.report import CurvatureBounds

logger = logging.getLogger(__name__)


def _dot(a, b) -> np.ndarray:
    return sum(x * y for x, y in zip(a, b))


def _F(sl: TimeSlice, alpha: float) -> ScalarField:
    q = quantity_from_slice(sl, alpha)
    return q.with_values(sl.tau * q.values)


def _grad_R(sl: TimeSlice):
    return gradient_components(sl.snapshot, sl.curvature.scalar)


def _interior_slice(traj, hist, t, A) -> Tuple[TimeSlice, TimeSlice, TimeSlice]:
    sl = slice_at(traj, hist, t, A, interior=True)
    before, after = neighbours_in_time(sl)
    return before, sl, after


def _delta_f_terms(traj: FlowTrajectory, hist: SolutionHistory, t: float, alpha: float,
                   A: Optional[float]):
    before, sl, after = _interior_slice(traj, hist, t, A)
    s, tau, dt = sl.snapshot, sl.tau, hist.time_step
    F = _F(sl, alpha)
    F_t = (_F(after, alpha).values - _F(before, alpha).values) / (2.0 * dt)
    lap_F = laplace_beltrami(s, F)
    grad_f = sl.grad_log
    grad_F = gradient_components(s, F)
    mask = combine_masks(lap_F.mask, before.mask, after.mask, sl.hessian.mask)
    return sl, F, F_t, lap_F, grad_f, _dot(grad_f, grad_F), mask


def lemma21_deltaF_residual(traj: FlowTrajectory, hist: SolutionHistory, t: float, alpha: float,
                            A: Optional[float] = None) -> ScalarField:
    """
    |ΔF - sağ taraf|; sağ taraf
    2τ|∇²f|² - 2⟨∇f,∇F⟩ - F_t - F/τ - 2ατ⟨Ric,∇²f⟩ + 2τ(2-α)Ric(∇f,∇f)
    - 2τ(α-1)⟨∇R,∇f⟩ - ατΔR.
    """
    sl, F, F_t, lap_F, grad_f, f_dot_F, mask = _delta_f_terms(traj, hist, t, alpha, A)
    tau = sl.tau
    hess_f = sl.hess_log
    ricci = sl.ricci
    rhs = (2.0 * tau * hess_f.norm_sq()
           - 2.0 * f_dot_F
           - F_t
           - F.values / tau
           - 2.0 * alpha * tau * ricci.inner(hess_f)
           + 2.0 * tau * (2.0 - alpha) * ricci.contract(grad_f)
           - 2.0 * tau * (alpha - 1.0) * _dot(_grad_R(sl), grad_f)
           - alpha * tau * sl.curvature.lap_r.values)
    return sl.field(np.abs(lap_F.values - rhs), mask)


def lemma21_inequality_gap(traj: FlowTrajectory, hist: SolutionHistory, t: float, alpha: float,
                           eps: float, bounds: CurvatureBounds,
                           A: Optional[float] = None) -> ScalarField:
    """(Δ + ∂_t)F eksi alt sınır; işaretli, negatif değer ihlal adayıdır."""
    if eps <= 0:
        raise ConfigError(f"ε pozitif olmalı, verilen: {eps}")
    sl, F, F_t, lap_F, grad_f, f_dot_F, mask = _delta_f_terms(traj, hist, t, alpha, A)
    tau, n = sl.tau, sl.dimension
    K0, K1, K2 = bounds.K0, bounds.K1, bounds.K2
    grad_f_sq = _dot(grad_f, grad_f)
    f_t = sl.log_derivative
    R = sl.scalar_curvature
    lower = (-2.0 * f_dot_F
             + 2.0 * tau / (n + eps) * (f_t + grad_f_sq - R) ** 2
             - (grad_f_sq + alpha * f_t - alpha * R)
             - 2.0 * tau * abs(2.0 - alpha) * K0 * grad_f_sq
             - 2.0 * tau * (alpha - 1.0) * K1 * np.sqrt(grad_f_sq)
             - n * (n + eps) / (2.0 * eps) * alpha ** 2 * tau * K0 ** 2
             - alpha * tau * K2)
    return sl.field(lap_F.values + F_t - lower, mask)


@dataclass
class Lemma31Residuals:
    gradient_sq: ScalarField  # (∂_t+Δ)|∇u|²
    log_derivative: ScalarField  # (∂_t+Δ)(u_t/u)
    normalized_gradient: ScalarField  # (∂_t+Δ)(|∇u|²/u²)
    combined: ScalarField  # α|∇u|²/u² + 5α u_t/u

    def as_pair(self) -> Tuple[ScalarField, ScalarField]:
        return self.gradient_sq, self.log_derivative

    def max_values(self) -> dict:
        return {
            "gradient_sq": self.gradient_sq.max_abs(),
            "log_derivative": self.log_derivative.max_abs(),
            "normalized_gradient": self.normalized_gradient.max_abs(),
            "combined": self.combined.max_abs(),
        }


def _parabolic(sl: TimeSlice, before: np.ndarray, after: np.ndarray, current: ScalarField):
    """(∂_t + Δ) g; g üç ardışık zamanda verilir."""
    dt = sl.history.time_step
    lap = laplace_beltrami(sl.snapshot, current)
    return (after - before) / (2.0 * dt) + lap.values, lap.mask


def lemma31_component_residuals(traj: FlowTrajectory, hist: SolutionHistory, t: float,
                                alpha: float, A: Optional[float] = None) -> Lemma31Residuals:
    before, sl, after = _interior_slice(traj, hist, t, A)
    s, dt = sl.snapshot, hist.time_step
    u = sl.u_safe
    grad_u, grad_log = sl.grad, sl.grad_log
    R = sl.scalar_curvature
    ricci, hess = sl.ricci, sl.hessian
    base_mask = combine_masks(before.mask, after.mask, hess.mask, sl.laplacian.mask)

    # |∇u|²
    p = sl.field(sl.grad_sq, sl.eroded())
    lhs_a, mask_a = _parabolic(sl, before.grad_sq, after.grad_sq, p)
    Ru = sl.field(R * sl.u.values)
    rhs_a = (2.0 * hess.norm_sq() + 2.0 * _dot(grad_u, gradient_components(s, Ru))
             + 4.0 * ricci.contract(grad_u))

    # u_t/u
    psi = sl.field(sl.log_derivative, sl.laplacian.mask)
    lhs_b, mask_b = _parabolic(sl, before.log_derivative, after.log_derivative, psi)
    R_t = (after.scalar_curvature - before.scalar_curvature) / (2.0 * dt)
    rhs_b = (R_t - 2.0 / u * ricci.inner(hess)
             - 2.0 * _dot(gradient_components(s, psi), grad_log))

    # |∇u|²/u²
    w = sl.field(sl.grad_sq / u ** 2, sl.eroded())
    lhs_c, mask_c = _parabolic(sl, before.grad_sq / before.u_safe ** 2,
                               after.grad_sq / after.u_safe ** 2, w)
    rhs_c = (rhs_a / u ** 2
             - 2.0 * _dot(gradient_components(s, w), grad_log)
             - 2.0 * _dot(gradient_components(s, p), grad_u) / u ** 3
             + 2.0 * sl.grad_sq ** 2 / u ** 4
             - 2.0 * R * sl.grad_sq / u ** 2)

    mask = combine_masks(base_mask, mask_a, mask_b, mask_c)
    res_b = lhs_b - rhs_b
    res_c = lhs_c - rhs_c
    return Lemma31Residuals(
        gradient_sq=sl.field(np.abs(lhs_a - rhs_a), mask),
        log_derivative=sl.field(np.abs(res_b), mask),
        normalized_gradient=sl.field(np.abs(res_c), mask),
        combined=sl.field(np.abs(alpha * res_c + 5.0 * alpha * res_b), mask),
    )


def bochner_residual(s: GeometrySnapshot, u: ScalarField) -> ScalarField:
    """|Δ|∇u|² - 2|∇²u|² - 2⟨∇u,∇Δu⟩ - 2Ric(∇u,∇u)|."""
    p = gradient_sq(s, u)
    lap_p = laplace_beltrami(s, p)
    hess = hessian_frame(s, u)
    lap_u = laplace_beltrami(s, u)
    grad_lap = inner_gradients(s, u, lap_u)
    ricci_term = s.curvature.ricci.contract(gradient_components(s, u))
    residual = lap_p.values - 2.0 * hess.norm_sq() - 2.0 * grad_lap.values - 2.0 * ricci_term
    mask = combine_masks(lap_p.mask, hess.mask, grad_lap.mask)
    return ScalarField(np.abs(residual), s.grid, s.time, mask=mask)


def curvature_evolution_residual(traj: FlowTrajectory, t: float) -> ScalarField:
    """
    |∂_t R - ΔR - 2|Ric|²|, ∂_t R akış örnekleri arasında merkezi farkla.

    Raises:
        ConfigError: t akışın saklanmış bir iç zamanı değilse
    """
    times = traj.times
    dt = float(times[1] - times[0])
    if traj.backend == BackendKind.ROTSYM_SURFACE:
        matches = np.flatnonzero(np.isclose(times, t, rtol=0.0, atol=1e-9 * max(traj.final_time, 1.0)))
        if matches.size == 0:
            raise ConfigError(f"t={t!r} akışın saklanmış bir zamanı değil")
        k = int(matches[0])
        if not 0 < k < len(times) - 1:
            raise ConfigError(f"t={t!r} akışın iç zamanı olmalı")
        t = float(times[k])
    elif not dt <= t <= traj.final_time - dt:
        raise ConfigError(f"t={t!r} merkezi fark için akış aralığının içinde değil")
    s = snapshot_at(traj, t)
    R_before = snapshot_at(traj, t - dt).curvature.scalar.values
    R_after = snapshot_at(traj, t + dt).curvature.scalar.values
    c = s.curvature
    R_t = (R_after - R_before) / (2.0 * dt)
    residual = R_t - c.lap_r.values - 2.0 * c.ricci.norm_sq()
    return ScalarField(np.abs(residual), s.grid, s.time, mask=c.lap_r.mask)


def _tensor_operator(sl: TimeSlice, before: FrameTensorField, current: FrameTensorField,
                     after: FrameTensorField) -> FrameTensorField:
    """L T = ∂_t T + ΔT - (2f/(1-f)) ∇_{∇f} T, çatı bileşenlerinde."""
    s = sl.snapshot
    drift = covariant_derivative_along(s, current, sl.grad_log).scale(2.0 * sl.f / (1.0 - sl.f))
    time_part = frame_time_derivative(before, after, sl.history.time_step, current, s)
    return time_part.plus(rough_laplacian(s, current)).minus(drift)


def lemma33_residual(traj: FlowTrajectory, hist: SolutionHistory, t: float,
                     A: Optional[float] = None) -> FrameTensorField:
    """
    |L v - sağ taraf| bileşen bazında; sağ taraf
    (|∇f|² + Rf)/(1-f) v + [2R_kijl u_kl + R_il u_jl + R_jl u_il
    + 2(∇_iR_jl + ∇_jR_il - ∇_lR_ij)∇_l u + ∇_i∇_j(Ru)] / (u(1-f)).
    """
    before, sl, after = _interior_slice(traj, hist, t, A)
    s = sl.snapshot
    v = v_from_slice(sl)
    lhs = _tensor_operator(sl, v_from_slice(before), v, v_from_slice(after))

    f, R, u = sl.f, sl.scalar_curvature, sl.u_safe
    grad_f_sq = _dot(sl.grad_log, sl.grad_log)
    Ru = sl.field(R * sl.u.values)
    bracket = (curvature_action(s, sl.hessian)
               .plus(ricci_gradient_term(s, sl.grad))
               .plus(hessian_frame(s, Ru)))
    rhs = v.scale((grad_f_sq + R * f) / (1.0 - f)).plus(bracket.scale(1.0 / (u * (1.0 - f))))
    return lhs.minus(rhs).abs()


def lemma34_residual(traj: FlowTrajectory, hist: SolutionHistory, t: float,
                     A: Optional[float] = None) -> FrameTensorField:
    """
    |L w - sağ taraf| bileşen bazında; sağ taraf
    2(|∇f|² + Rf)/(1-f) w + ((Ru)_i u_j + u_i (Ru)_j)/(u²(1-f)²)
    + 2(v + fw)² + Ric∘w + w∘Ric.
    """
    before, sl, after = _interior_slice(traj, hist, t, A)
    s = sl.snapshot
    w = w_from_slice(sl)
    lhs = _tensor_operator(sl, w_from_slice(before), w, w_from_slice(after))

    f, R, u = sl.f, sl.scalar_curvature, sl.u_safe
    grad_f_sq = _dot(sl.grad_log, sl.grad_log)
    Ru = sl.field(R * sl.u.values)
    source = symmetric_outer(s, gradient_components(s, Ru), sl.grad)
    mixed = v_from_slice(sl).plus(w.scale(f))
    rhs = (w.scale(2.0 * (grad_f_sq + R * f) / (1.0 - f))
           .plus(source.scale(1.0 / (u * (1.0 - f)) ** 2))
           .plus(mixed.sym_product(mixed).scale(2.0))
           .plus(ricci_commutator(s, w)))
    return lhs.minus(rhs).abs()
