"""Eğrilik alanları ve eğrilik üst sınırları.

Rm normu, yuvarlak Sⁿ için |Rm| = √(2n(n-1))/r² olacak biçimde seçilmiştir; iki boyutta
bu |Rm| = |R| ve |∇Rm| = |∇R| demektir. Bildirilen sabitler bu uzlaşıma bağlıdır.
"""

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple
import logging
import math

import numpy as np

from exceptions import EmptyRegionError, GeometryError
from geometry.fields import FrameTensorField, ScalarField
from geometry.flow import FlowTrajectory, snapshot_at
from geometry.operators import gradient_sq, hessian_frame, laplace_beltrami, metric_frame
from geometry.regions import Region, WholeManifold
from geometry.snapshot import BackendKind, GeometrySnapshot
from geometry.stencils import first_difference, second_difference
from models.report import CurvatureBounds
import settings

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class CurvatureData:
    scalar: ScalarField
    ricci: FrameTensorField
    norm_rm: ScalarField
    grad_r_norm: ScalarField
    lap_r: ScalarField
    norm_grad_rm: ScalarField
    norm_hess_r: ScalarField

    def as_tuple(self) -> Tuple:
        return (self.scalar, self.ricci, self.norm_rm, self.grad_r_norm, self.lap_r,
                self.norm_grad_rm, self.norm_hess_r)


def conformal_gauss_curvature(s: GeometrySnapshot) -> np.ndarray:
    """K = e^{-2φ}(1 - Δ₀φ), Δ₀φ = φ_θθ + cot θ · φ_θ."""
    phi = s.conformal_factor
    lap0 = second_difference(phi, s.grid) + first_difference(phi, s.grid) / np.tan(s.theta)
    return np.exp(-2.0 * phi) * (1.0 - lap0)


def sectional_curvature(s: GeometrySnapshot) -> np.ndarray:
    """Noktasal izotrop eğrilikte kesit eğriliği κ = R/(n(n-1))."""
    n = s.dimension
    if s.is_torus:
        return np.zeros(s.grid.shape)
    return s.curvature.scalar.values / (n * (n - 1))


def compute_curvature(s: GeometrySnapshot) -> CurvatureData:
    grid, t, n = s.grid, s.time, s.dimension
    zeros = np.zeros(grid.shape)
    if s.is_torus:
        zero = ScalarField(zeros, grid, t)
        ricci = metric_frame(s).scale(0.0)
        return CurvatureData(zero, ricci, zero, zero, zero, zero, zero)
    if s.backend == BackendKind.SHRINKING_SPHERE:
        r_sq = s.radius ** 2
        ricci = metric_frame(s).scale((n - 1) / r_sq)
        zero = ScalarField(zeros, grid, t)
        return CurvatureData(
            scalar=ScalarField(np.full(grid.shape, n * (n - 1) / r_sq), grid, t),
            ricci=ricci,
            norm_rm=ScalarField(np.full(grid.shape, math.sqrt(2.0 * n * (n - 1)) / r_sq), grid, t),
            grad_r_norm=zero,
            lap_r=zero,
            norm_grad_rm=zero,
            norm_hess_r=zero,
        )
    K = conformal_gauss_curvature(s)
    R = ScalarField(2.0 * K, grid, t)
    grad_norm = ScalarField(np.sqrt(gradient_sq(s, R).values), grid, t)
    return CurvatureData(
        scalar=R,
        ricci=metric_frame(s).scale(K),
        norm_rm=ScalarField(np.abs(R.values), grid, t),
        grad_r_norm=grad_norm,
        lap_r=laplace_beltrami(s, R),
        norm_grad_rm=grad_norm,
        norm_hess_r=ScalarField(hessian_frame(s, R).norm(), grid, t),
    )


def curvature_data(s: GeometrySnapshot) -> CurvatureData:
    return s.curvature


def _window_snapshots(traj: FlowTrajectory, times: Sequence[float]):
    t_a, t_b = float(times[0]), float(times[1])
    if t_a > t_b:
        raise GeometryError(f"Zaman penceresi ters: [{t_a}, {t_b}]")
    inner = [s for s in traj.snapshots if t_a < s.time < t_b]
    return [snapshot_at(traj, t_a)] + inner + ([snapshot_at(traj, t_b)] if t_b > t_a else [])


def curvature_bounds(traj: FlowTrajectory, region: Optional[Region] = None,
                     times: Optional[Sequence[float]] = None,
                     safety_factor: float = settings.CURVATURE_SAFETY_FACTOR) -> CurvatureBounds:
    """
    Bölge × pencere üzerinde eğrilik nicelerinin suprimumları, safety_factor ile şişirilmiş.

    K2 işaretli olabildiğinden K2 + (safety_factor - 1)|K2| biçiminde şişirilir.

    Raises:
        EmptyRegionError: örneklenen hiçbir zamanda bölgede düğüm yoksa
    """
    region = region or WholeManifold()
    window = list(times) if times is not None else [0.0, traj.final_time]
    sups = {"K0": 0.0, "K1": 0.0, "K2": -math.inf, "k0": 0.0, "k1": 0.0, "k2": 0.0}
    found = False
    for s in _window_snapshots(traj, window):
        members = region.members(s)
        if not members.any():
            continue
        found = True
        c = curvature_data(s)
        ricci_abs = np.maximum(np.abs(c.ricci.max_eigenvalue()), np.abs(c.ricci.min_eigenvalue()))
        sups["K0"] = max(sups["K0"], float(np.max(ricci_abs[members])))
        sups["K1"] = max(sups["K1"], float(np.max(c.grad_r_norm.values[members])))
        sups["K2"] = max(sups["K2"], float(np.max(c.lap_r.values[members])))
        sups["k0"] = max(sups["k0"], float(np.max(c.norm_rm.values[members])))
        sups["k1"] = max(sups["k1"], float(np.max(c.norm_grad_rm.values[members])))
        sups["k2"] = max(sups["k2"], float(np.max(c.norm_hess_r.values[members])))
    if not found:
        raise EmptyRegionError(f"{region.describe()} bölgesi pencere içinde boş")
    inflated = {key: value * safety_factor for key, value in sups.items() if key != "K2"}
    inflated["K2"] = sups["K2"] + (safety_factor - 1.0) * abs(sups["K2"])
    logger.debug("Eğrilik sınırları %s: %s", region.describe(), inflated)
    return CurvatureBounds(region=region.describe(), window=window, safety_factor=safety_factor,
                           **inflated)
