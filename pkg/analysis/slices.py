from dataclasses import dataclass
from functools import cached_property
from typing import List, Optional
import math

import numpy as np

from analysis.tensors import symmetric_outer
from conjugate_heat.solver import SolutionHistory
from exceptions import ConfigError
from geometry.fields import FrameTensorField, ScalarField
from geometry.flow import FlowTrajectory, snapshot_at
from geometry.operators import gradient_components, hessian_frame, laplace_beltrami, metric_frame
from geometry.snapshot import GeometrySnapshot
from geometry.stencils import combine_masks, erode


@dataclass(frozen=True, eq=False)
class TimeSlice:
    """
    Saklanmış k. zaman örneğinde u ve ondan türeyen alanlar (önbellekli).

    Güven maskesi u ≥ eşik·A düğümleridir; bütün düğümler güvenilirse maske yoktur.
    Maskeli düğümlerde paydalar A ile doldurulur, değerler sonra maskelenir.
    """

    trajectory: FlowTrajectory
    history: SolutionHistory
    index: int
    amplitude: float

    @cached_property
    def time(self) -> float:
        return float(self.history.times[self.index])

    @cached_property
    def tau(self) -> float:
        return self.trajectory.final_time - self.time

    @cached_property
    def snapshot(self) -> GeometrySnapshot:
        return snapshot_at(self.trajectory, self.time)

    @property
    def grid(self):
        return self.snapshot.grid

    @property
    def dimension(self) -> int:
        return self.snapshot.dimension

    @cached_property
    def mask(self) -> Optional[np.ndarray]:
        trusted = self.history.trust_mask(self.index, self.amplitude)
        return None if trusted.all() else trusted

    def eroded(self, depth: int = 1) -> Optional[np.ndarray]:
        return erode(self.mask, self.grid, depth)

    @cached_property
    def u(self) -> ScalarField:
        return ScalarField(self.history.values[self.index], self.grid, self.time, mask=self.mask)

    @cached_property
    def u_safe(self) -> np.ndarray:
        """Bölmede kullanılacak u; maskeli düğümlerde A."""
        return np.where(self.u.valid, self.history.values[self.index], self.amplitude)

    @cached_property
    def f(self) -> np.ndarray:
        """f = log(u/A) ≤ 0."""
        return np.log(self.u_safe / self.amplitude)

    @cached_property
    def log_u(self) -> np.ndarray:
        return np.log(self.u_safe)

    @cached_property
    def grad(self) -> List[np.ndarray]:
        return gradient_components(self.snapshot, self.u)

    @cached_property
    def grad_log(self) -> List[np.ndarray]:
        return [c / self.u_safe for c in self.grad]

    @cached_property
    def grad_sq(self) -> np.ndarray:
        return sum(c ** 2 for c in self.grad)

    @cached_property
    def laplacian(self) -> ScalarField:
        return laplace_beltrami(self.snapshot, self.u)

    @cached_property
    def hessian(self) -> FrameTensorField:
        return hessian_frame(self.snapshot, self.u)

    @cached_property
    def metric(self) -> FrameTensorField:
        return metric_frame(self.snapshot)

    @property
    def curvature(self):
        return self.snapshot.curvature

    @cached_property
    def scalar_curvature(self) -> np.ndarray:
        return self.curvature.scalar.values

    @property
    def ricci(self) -> FrameTensorField:
        return self.curvature.ricci

    @cached_property
    def u_t(self) -> np.ndarray:
        """u_t = -Δu + R u (denklemden)."""
        return -self.laplacian.values + self.scalar_curvature * self.u.values

    @cached_property
    def log_derivative(self) -> np.ndarray:
        return self.u_t / self.u_safe

    @cached_property
    def hess_log(self) -> FrameTensorField:
        """Hess ln u = ∇²u/u - du⊗du/u²."""
        outer = symmetric_outer(self.snapshot, self.grad_log, self.grad_log).scale(0.5)
        return self.hessian.scale(1.0 / self.u_safe).minus(outer)

    def field(self, values, *masks) -> ScalarField:
        return ScalarField(values, self.grid, self.time,
                           mask=combine_masks(self.mask, *masks))


def slice_index(hist: SolutionHistory, t: float, interior: bool = False,
                before_final: bool = False) -> int:
    k = hist.index_of(t)
    if interior and not 0 < k < hist.step_count:
        raise ConfigError(f"t={t!r} zaman ızgarasının iç noktası olmalı")
    if before_final and k == hist.step_count:
        raise ConfigError(f"t={t!r} son zamandan önce olmalı (τ > 0)")
    return k


def slice_at(traj: FlowTrajectory, hist: SolutionHistory, t: float, A: Optional[float] = None,
             interior: bool = False, before_final: bool = False) -> TimeSlice:
    A = hist.amplitude_bound() if A is None else A
    if not math.isfinite(A) or A <= 0:
        raise ConfigError(f"A pozitif olmalı, verilen: {A}")
    return TimeSlice(traj, hist, slice_index(hist, t, interior, before_final), float(A))


def neighbours_in_time(sl: TimeSlice):
    """k-1 ve k+1 dilimleri; iç zaman gerektirir."""
    k = sl.index
    if not 0 < k < sl.history.step_count:
        raise ConfigError(f"t={sl.time!r} zaman ızgarasının iç noktası olmalı")
    return (TimeSlice(sl.trajectory, sl.history, k - 1, sl.amplitude),
            TimeSlice(sl.trajectory, sl.history, k + 1, sl.amplitude))
