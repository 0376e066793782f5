from dataclasses import dataclass, replace
from typing import Optional, Sequence, Tuple
import logging
import math

import numpy as np

from exceptions import GeometryError
from geometry.grid import Grid
from geometry.snapshot import BackendKind, GeometrySnapshot, InterpolationRule

logger = logging.getLogger(__name__)

# t'nin [0, T] dışına taşmasına izin verilen göreli pay
TIME_TOLERANCE = 1e-12


@dataclass(frozen=True, eq=False)
class FlowTrajectory:
    backend: str
    dimension: int
    final_time: float
    snapshots: Tuple[GeometrySnapshot, ...]
    interpolation: str
    initial_radius: Optional[float] = None

    def __post_init__(self):
        if not math.isfinite(self.final_time) or self.final_time <= 0:
            raise GeometryError(f"Son zaman pozitif olmalı, verilen: {self.final_time}")
        times = np.array([s.time for s in self.snapshots])
        if len(times) < 2 or np.any(np.diff(times) <= 0):
            raise GeometryError("Anlık görüntü zamanları kesin artan olmalı")
        if times[0] != 0.0 or not math.isclose(times[-1], self.final_time, rel_tol=1e-12):
            raise GeometryError("Anlık görüntüler [0, T] aralığını kapsamalı")

    @property
    def grid(self) -> Grid:
        return self.snapshots[0].grid

    @property
    def times(self) -> np.ndarray:
        return np.array([s.time for s in self.snapshots])

    def radius_at(self, t: float) -> float:
        return math.sqrt(self.initial_radius ** 2 - 2.0 * (self.dimension - 1) * t)


def make_torus(dim: int, edge_lengths: Sequence[float], grid_sizes: Sequence[int],
               final_time: float = 1.0, time_samples: int = 2) -> FlowTrajectory:
    """Düz torus; Ricci akışı durağandır, bütün eğrilikler sıfırdır."""
    if dim not in (1, 2) or len(edge_lengths) != dim or len(grid_sizes) != dim:
        raise GeometryError(f"Torus boyutu 1 veya 2 olmalı ve parametrelerle uyuşmalı (dim={dim})")
    if time_samples < 2:
        raise GeometryError("En az iki zaman örneği gerekir")
    grid = Grid.periodic(grid_sizes, edge_lengths)
    backend = BackendKind.TORUS_1D if dim == 1 else BackendKind.TORUS_2D
    times = np.linspace(0.0, final_time, time_samples)
    snapshots = tuple(GeometrySnapshot(backend, float(t), grid, dim) for t in times)
    return FlowTrajectory(backend, dim, float(final_time), snapshots, InterpolationRule.CLOSED_FORM)


def make_shrinking_sphere(n: int, r0: float, final_time: float, grid_size: int,
                          time_samples: int = 17) -> FlowTrajectory:
    """
    Yuvarlak Sⁿ üzerinde kapalı biçimli çözüm: r(t)² = r0² - 2(n-1)t.

    Raises:
        GeometryError: T ≥ r0²/(2(n-1)) ise metrik pencere içinde dejenere olur
    """
    if n < 2:
        raise GeometryError(f"Küre boyutu en az 2 olmalı, verilen: {n}")
    if not math.isfinite(r0) or r0 <= 0:
        raise GeometryError(f"Başlangıç yarıçapı pozitif olmalı, verilen: {r0}")
    extinction = r0 ** 2 / (2.0 * (n - 1))
    if final_time >= extinction:
        raise GeometryError(
            f"T={final_time} sönme zamanı {extinction} değerinden küçük olmalı"
        )
    grid = Grid.colatitude(grid_size)
    times = np.linspace(0.0, final_time, max(time_samples, 2))
    snapshots = tuple(
        GeometrySnapshot(BackendKind.SHRINKING_SPHERE, float(t), grid, n,
                         radius=math.sqrt(r0 ** 2 - 2.0 * (n - 1) * t))
        for t in times
    )
    return FlowTrajectory(BackendKind.SHRINKING_SPHERE, n, float(final_time), snapshots,
                          InterpolationRule.CLOSED_FORM, initial_radius=float(r0))


def snapshot_at(traj: FlowTrajectory, t: float) -> GeometrySnapshot:
    T = traj.final_time
    slack = TIME_TOLERANCE * max(T, 1.0)
    if not (-slack <= t <= T + slack):
        raise GeometryError(f"t={t!r} akış aralığı [0, {T!r}] dışında")
    t = min(max(float(t), 0.0), T)
    times = traj.times
    if traj.backend in BackendKind.TORI:
        return replace(traj.snapshots[0], time=t)
    if traj.backend == BackendKind.SHRINKING_SPHERE:
        return GeometrySnapshot(BackendKind.SHRINKING_SPHERE, t, traj.grid, traj.dimension,
                                radius=traj.radius_at(t))
    k = int(np.searchsorted(times, t, side="right")) - 1
    k = min(max(k, 0), len(times) - 2)
    t0, t1 = times[k], times[k + 1]
    if abs(t - t0) <= slack:
        return traj.snapshots[k]
    if abs(t - t1) <= slack:
        return traj.snapshots[k + 1]
    weight = (t - t0) / (t1 - t0)
    phi = (1.0 - weight) * traj.snapshots[k].phi + weight * traj.snapshots[k + 1].phi
    return GeometrySnapshot(traj.backend, t, traj.grid, traj.dimension, phi=phi)
