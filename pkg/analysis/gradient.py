"""Li-Yau türü gradyan niceliği ve açık sınırları.

F = τ(|∇f|² + α f_t - α R), f = log u, τ = T - t. Bu modül F/τ'yu
|∇u|²/u² + α u_t/u - α R biçiminde hesaplar; u_t denklemden gelir.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence
import logging
import math

import numpy as np

from analysis.slices import TimeSlice, slice_at
from conjugate_heat.solver import SolutionHistory
from exceptions import ConfigError
from geometry.fields import ScalarField
from geometry.flow import FlowTrajectory
from models.report import CurvatureBounds

logger = logging.getLogger(__name__)


class GradientBoundForm:
    LOCAL = "prop22"  # (n+ε)α²/(2τ) + C(r⁻² + r⁻¹ + 1)
    GLOBAL = "cor23"  # (n+ε)α²/(2τ) + C
    EXPLICIT = "prop24"  # nα²/τ + açık eğrilik terimleri

    ALL = (LOCAL, GLOBAL, EXPLICIT)


def _check_alpha(alpha: float) -> None:
    if not alpha > 1:
        raise ConfigError(f"α > 1 olmalı, verilen: {alpha}")


def quantity_from_slice(sl: TimeSlice, alpha: float) -> ScalarField:
    values = (sl.grad_sq / sl.u_safe ** 2 + alpha * sl.log_derivative
              - alpha * sl.scalar_curvature)
    return sl.field(values, sl.laplacian.mask)


def gradient_quantity(traj: FlowTrajectory, hist: SolutionHistory, t: float, alpha: float,
                      A: Optional[float] = None) -> ScalarField:
    """F/τ = |∇u|²/u² + α u_t/u - α R, güven maskesi üzerinde."""
    _check_alpha(alpha)
    return quantity_from_slice(slice_at(traj, hist, t, A), alpha)


def gradient_quantity_F(traj: FlowTrajectory, hist: SolutionHistory, t: float, alpha: float,
                        A: Optional[float] = None) -> ScalarField:
    _check_alpha(alpha)
    sl = slice_at(traj, hist, t, A)
    q = quantity_from_slice(sl, alpha)
    return q.with_values(sl.tau * q.values)


@dataclass
class LiYauProfile:
    """
    Örnek zamanlarda τ·sup(F/τ) ve etkin ölçek (τ + s₀/2)·sup(F/τ).

    Varyansı s₀ olan Gauss son verisi, s₀/2 kadar önce başlamış ısı çekirdeğidir;
    αn/2 limiti etkin ölçekte görülür.
    """

    alpha: float
    dimension: int
    variance0: float
    times: List[float] = field(default_factory=list)
    taus: List[float] = field(default_factory=list)
    suprema: List[float] = field(default_factory=list)
    argmax: List[int] = field(default_factory=list)

    @property
    def scaled(self) -> np.ndarray:
        return np.asarray(self.taus) * np.asarray(self.suprema)

    @property
    def effective_scaled(self) -> np.ndarray:
        return (np.asarray(self.taus) + 0.5 * self.variance0) * np.asarray(self.suprema)

    @property
    def leading_constant(self) -> float:
        return 0.5 * self.alpha * self.dimension

    def limit(self) -> float:
        """En küçük τ'daki etkin ölçekli değer."""
        return float(self.effective_scaled[int(np.argmin(self.taus))])

    def rows(self) -> List[Dict]:
        return [
            {"t": t, "tau": tau, "sup": sup, "argmax_node": node,
             "tau_sup": tau * sup, "effective_tau_sup": (tau + 0.5 * self.variance0) * sup}
            for t, tau, sup, node in zip(self.times, self.taus, self.suprema, self.argmax)
        ]


def li_yau_profile(traj: FlowTrajectory, hist: SolutionHistory, alpha: float,
                   times: Optional[Sequence[float]] = None, variance0: float = 0.0,
                   A: Optional[float] = None) -> LiYauProfile:
    _check_alpha(alpha)
    A = hist.amplitude_bound() if A is None else A
    if times is None:
        times = hist.times[:-1]
    profile = LiYauProfile(alpha=alpha, dimension=traj.dimension, variance0=variance0)
    for t in times:
        sl = slice_at(traj, hist, float(t), A, before_final=True)
        q = quantity_from_slice(sl, alpha)
        node = q.argmax()
        profile.times.append(sl.time)
        profile.taus.append(sl.tau)
        profile.suprema.append(float(q.values.ravel()[node]))
        profile.argmax.append(node)
    logger.info("Li-Yau profili: %d örnek, etkin limit %.6g (beklenen %.6g)",
                len(profile.times), profile.limit(), profile.leading_constant)
    return profile


def _inverse_powers(r: float):
    if math.isinf(r):
        return 0.0, 0.0
    if r <= 0:
        raise ConfigError(f"Yarıçap pozitif olmalı, verilen: {r}")
    return 1.0 / r, 1.0 / r ** 2


def _explicit_curvature_terms(bounds: CurvatureBounds, alpha: float, n: int) -> float:
    K0, K1, K2 = bounds.K0, bounds.K1, max(bounds.K2, 0.0)
    return (n * alpha ** 2 / (alpha - 1.0) * (abs(2.0 - alpha) * K0 + 0.5 * (alpha - 1.0) * K1)
            + n * alpha ** 2 * K0
            + alpha * math.sqrt(n * (alpha - 1.0) * K1)
            + alpha * math.sqrt(n * alpha * K2))


def _explicit_c_coefficient(bounds: CurvatureBounds, alpha: float, r: float) -> float:
    inv_r, inv_r2 = _inverse_powers(r)
    return (alpha ** 2 * (inv_r * math.sqrt(bounds.K0) + inv_r2 * alpha ** 2 / (alpha - 1.0))
            + alpha ** 2 * bounds.K0)


def gradient_bound(bounds: CurvatureBounds, alpha: float, eps: float, tau: float, r: float,
                   n: int, C: float, form: str = GradientBoundForm.LOCAL) -> float:
    """
    Seçilen sınır formülünü verilen C ile değerlendirir.

    Args:
        r: küp yarıçapı; math.inf yerellik terimlerini sıfırlar
        form: prop22, cor23 ya da prop24

    Raises:
        ConfigError: α ≤ 1, ε ≤ 0, τ ≤ 0 ya da bilinmeyen form
    """
    _check_alpha(alpha)
    if eps <= 0 or tau <= 0:
        raise ConfigError(f"ε ve τ pozitif olmalı (ε={eps}, τ={tau})")
    if form not in GradientBoundForm.ALL:
        raise ConfigError(f"Bilinmeyen sınır biçimi: {form}")
    if form == GradientBoundForm.EXPLICIT:
        return (n * alpha ** 2 / tau + C * _explicit_c_coefficient(bounds, alpha, r)
                + _explicit_curvature_terms(bounds, alpha, n))
    leading = (n + eps) * alpha ** 2 / (2.0 * tau)
    if form == GradientBoundForm.GLOBAL:
        return leading + C
    inv_r, inv_r2 = _inverse_powers(r)
    return leading + C * (inv_r2 + inv_r + 1.0)


def fit_gradient_constant(profile: LiYauProfile, bounds: CurvatureBounds, eps: float,
                          r: float = math.inf, form: str = GradientBoundForm.LOCAL) -> float:
    """
    Sınırı bütün örneklerde sağlayan en küçük C ≥ 0 (yalnız-rapor kipi).

    C'nin katsayısı sıfırken aşım varsa sonuç inf olur.
    """
    needed = 0.0
    for tau, sup in zip(profile.taus, profile.suprema):
        base = gradient_bound(bounds, profile.alpha, eps, tau, r, profile.dimension, 0.0, form)
        unit = gradient_bound(bounds, profile.alpha, eps, tau, r, profile.dimension, 1.0, form) - base
        excess = sup - base
        if excess <= 0:
            continue
        needed = max(needed, excess / unit if unit > 0 else math.inf)
    return needed
