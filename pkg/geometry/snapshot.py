from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Tuple
import math

import numpy as np

from exceptions import GeometryError
from geometry.grid import Grid, GridKind
from geometry.stencils import first_difference, second_difference


class BackendKind:
    TORUS_1D = "torus-1d"
    TORUS_2D = "torus-2d"
    SHRINKING_SPHERE = "shrinking-sphere"
    ROTSYM_SURFACE = "rotsym-surface"

    TORI = (TORUS_1D, TORUS_2D)
    SPHERES = (SHRINKING_SPHERE, ROTSYM_SURFACE)
    ALL = TORI + SPHERES


class InterpolationRule:
    CLOSED_FORM = "closed-form"
    PIECEWISE_LINEAR = "piecewise-linear"


@dataclass(frozen=True, eq=False)
class GeometrySnapshot:
    """
    Tek bir t anındaki metrik.

    Torus: düz metrik, kenar uzunlukları ızgarada. Küre arka uçları:
    e^{2φ(θ)}(dθ² + sin²θ g_{S^{n-1}}); büzülen kürede φ = log r(t) sabittir.
    """

    backend: str
    time: float
    grid: Grid
    dimension: int
    radius: Optional[float] = None
    phi: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.backend not in BackendKind.ALL:
            raise GeometryError(f"Bilinmeyen arka uç: {self.backend}")
        if self.backend in BackendKind.TORI:
            if self.grid.kind != GridKind.PERIODIC or self.grid.ndim != self.dimension:
                raise GeometryError("Torus periyodik ve boyutla uyumlu bir ızgara ister")
            return
        if self.grid.kind != GridKind.COLATITUDE:
            raise GeometryError("Küre arka uçları kolatitüd ızgarası ister")
        if self.backend == BackendKind.SHRINKING_SPHERE:
            if self.radius is None or not math.isfinite(self.radius) or self.radius <= 0:
                raise GeometryError(f"Küre yarıçapı pozitif olmalı, verilen: {self.radius}")
            return
        if self.dimension != 2:
            raise GeometryError("Dönel simetrik yüzey iki boyutludur")
        phi = np.array(self.phi, dtype=float)
        if phi.shape != self.grid.shape or not np.all(np.isfinite(phi)):
            raise GeometryError(f"Konformal faktör sonlu değil (t={self.time!r})")
        phi.setflags(write=False)
        object.__setattr__(self, "phi", phi)

    @property
    def is_torus(self) -> bool:
        return self.backend in BackendKind.TORI

    @property
    def is_sphere(self) -> bool:
        return self.backend in BackendKind.SPHERES

    @property
    def edge_lengths(self) -> Tuple[float, ...]:
        return self.grid.lengths

    @cached_property
    def theta(self) -> np.ndarray:
        return self.grid.axis(0)

    @cached_property
    def conformal_factor(self) -> np.ndarray:
        if self.backend == BackendKind.SHRINKING_SPHERE:
            return np.full(self.grid.shape, math.log(self.radius))
        return self.phi

    @cached_property
    def phi_theta(self) -> np.ndarray:
        if self.backend == BackendKind.SHRINKING_SPHERE:
            return np.zeros(self.grid.shape)
        return first_difference(self.phi, self.grid)

    @cached_property
    def phi_theta_theta(self) -> np.ndarray:
        if self.backend == BackendKind.SHRINKING_SPHERE:
            return np.zeros(self.grid.shape)
        return second_difference(self.phi, self.grid)

    @cached_property
    def curvature(self):
        from geometry.curvature import compute_curvature

        return compute_curvature(self)
