from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple
import logging
import math

import numpy as np

from analysis.slices import TimeSlice, slice_at
from conjugate_heat.solver import SolutionHistory
from exceptions import ConfigError
from geometry.fields import FrameTensorField, ScalarField
from geometry.flow import FlowTrajectory
from geometry.operators import outer_gradient
from models.report import BoundReport

logger = logging.getLogger(__name__)

# λ_max(∇²u) ve Δu oranlarının öncü katsayısı
LEADING_HESSIAN_COEFFICIENT = 18.0


class HessianQuantity:
    NORM = "hessian-ratio-norm"
    EIGEN = "hessian-ratio-eigen"
    LOCAL = "hessian-ratio-local"
    LAPLACIAN = "laplacian-ratio"


def _check_amplitude(hist: SolutionHistory, A: float) -> None:
    sup = float(np.max(hist.values))
    if A < sup:
        raise ConfigError(f"A = {A!r} sup u = {sup!r} değerinden küçük; 1 - f sıfırlanabilir")


def f1_from_slice(sl: TimeSlice, alpha: float) -> ScalarField:
    u = sl.u_safe
    values = (sl.hessian.norm() / u + alpha * sl.grad_sq / u ** 2
              + 5.0 * alpha * sl.log_derivative)
    return sl.field(values, sl.hessian.mask, sl.laplacian.mask)


def hessian_quantity_F1(traj: FlowTrajectory, hist: SolutionHistory, t: float, alpha: float,
                        A: Optional[float] = None) -> ScalarField:
    """F₁ = |∇²u|/u + α|∇u|²/u² + 5α u_t/u (Frobenius normu)."""
    if not alpha > 1:
        raise ConfigError(f"α > 1 olmalı, verilen: {alpha}")
    return f1_from_slice(slice_at(traj, hist, t, A), alpha)


def hessian_quantity_F2(traj: FlowTrajectory, hist: SolutionHistory, t: float, alpha: float,
                        A: Optional[float] = None) -> ScalarField:
    if not alpha > 1:
        raise ConfigError(f"α > 1 olmalı, verilen: {alpha}")
    sl = slice_at(traj, hist, t, A)
    f1 = f1_from_slice(sl, alpha)
    return f1.with_values(sl.tau * f1.values)


def hessian_quantity_bound(tau: float, r: float, C0: float, C1: float = 0.0) -> float:
    """C₀/τ + C₀/r² + C₁; r = inf yerellik terimini düşürür."""
    if tau <= 0:
        raise ConfigError(f"τ pozitif olmalı, verilen: {tau}")
    locality = 0.0 if math.isinf(r) else C0 / r ** 2
    return C0 / tau + locality + C1


def fit_hessian_constant(samples: Sequence[Tuple[float, float]], r: float = math.inf,
                         C1: float = 0.0) -> float:
    """(τ, sup F₁) örneklerinde sınırı sağlayan en küçük C₀ ≥ 0."""
    needed = 0.0
    for tau, sup in samples:
        unit = hessian_quantity_bound(tau, r, 1.0, 0.0)
        needed = max(needed, (sup - C1) / unit)
    return needed


def v_from_slice(sl: TimeSlice) -> FrameTensorField:
    return sl.hessian.scale(1.0 / (sl.u_safe * (1.0 - sl.f)))


def w_from_slice(sl: TimeSlice) -> FrameTensorField:
    outer = outer_gradient(sl.snapshot, sl.grad, mask=sl.eroded())
    return outer.scale(1.0 / (sl.u_safe * (1.0 - sl.f)) ** 2)


def v_tensor(traj: FlowTrajectory, hist: SolutionHistory, t: float, A: float) -> FrameTensorField:
    """
    v_ij = u_ij / (u(1 - f)), f = log(u/A).

    Raises:
        ConfigError: A < sup u
    """
    _check_amplitude(hist, A)
    return v_from_slice(slice_at(traj, hist, t, A))


def w_tensor(traj: FlowTrajectory, hist: SolutionHistory, t: float, A: float) -> FrameTensorField:
    """w_ij = u_i u_j / (u²(1 - f)²); rank-1, yarı pozitif tanımlı."""
    _check_amplitude(hist, A)
    return w_from_slice(slice_at(traj, hist, t, A))


@dataclass
class HessianRatios:
    norm: ScalarField
    eigen: ScalarField
    local: ScalarField
    laplacian: ScalarField
    reports: List[BoundReport]


def _report(quantity: str, field: ScalarField, bound: Optional[float], constants: dict) -> BoundReport:
    node = field.argmax()
    return BoundReport(quantity=quantity, region="whole", time=field.time,
                       supremum=float(field.values.ravel()[node]), argmax_node=node,
                       argmax_time=field.time, bound=bound, constants=constants)


def theorem_hessian_ratio(traj: FlowTrajectory, hist: SolutionHistory, t: float,
                          A: Optional[float] = None, r: float = math.inf,
                          C0: Optional[float] = None) -> HessianRatios:
    """
    Hessian sınırlarının oranları; sınırlılık iddianın kendisidir.

    norm:      |∇²u|·τ / (u(1 + log A/u))
    eigen:     λ_max(∇²u)·τ / (u(1 + log A/u)), 18 ile karşılaştırılır
    local:     |∇²u| / (u(1 + log A/u)²(C₀/τ + C₀/r²)); C₀ verilmezse 1 alınır ve
               supremum en küçük uygun C₀ olarak okunur
    laplacian: Δu·τ / (u(1 + log A/u)), 18n ile karşılaştırılır
    """
    A = hist.amplitude_bound() if A is None else A
    _check_amplitude(hist, A)
    sl = slice_at(traj, hist, t, A, before_final=True)
    tau, n = sl.tau, sl.dimension
    log_factor = 1.0 - sl.f
    base = sl.u_safe * log_factor
    hess = sl.hessian
    unit_c0 = 1.0 if C0 is None else C0
    scale_local = hessian_quantity_bound(tau, r, unit_c0)

    norm = sl.field(hess.norm() * tau / base, hess.mask)
    eigen = sl.field(hess.max_eigenvalue() * tau / base, hess.mask)
    local = sl.field(hess.norm() / (base * log_factor * scale_local), hess.mask)
    laplacian = sl.field(sl.laplacian.values * tau / base, sl.laplacian.mask)

    constants = {"A": A, "tau": tau, "n": n, "r": r}
    reports = [
        _report(HessianQuantity.NORM, norm, None, constants),
        _report(HessianQuantity.EIGEN, eigen, LEADING_HESSIAN_COEFFICIENT, constants),
        _report(HessianQuantity.LOCAL, local, None if C0 is None else 1.0,
                dict(constants, C0=unit_c0)),
        _report(HessianQuantity.LAPLACIAN, laplacian, LEADING_HESSIAN_COEFFICIENT * n, constants),
    ]
    logger.debug("t=%.6g Hessian oranları: %s", sl.time,
                 {rep.quantity: rep.supremum for rep in reports})
    return HessianRatios(norm=norm, eigen=eigen, local=local, laplacian=laplacian, reports=reports)
