"""Ricci akışı boyunca eşlenik ısı denkleminin geriye doğru çözücüsü.

τ = T - t ile ∂_τ u = Δu - R u ileri paraboliktir. Çözücü q = u·ρ yoğunluğunu
ilerletir (dg = ρ dx); ∂_t ρ = -R ρ olduğundan denklem ∂_τ q = ρΔ(q/ρ) biçimini
alır ve akı operatörüyle kütle yuvarlama hatasına kadar korunur.
"""

from dataclasses import dataclass
from typing import Optional
import logging
import time as clock

import numpy as np
from scipy import sparse
from scipy.sparse.linalg import splu

from exceptions import ConfigError, GridMismatchError, LinearSolveError, PositivityLossError
from geometry.fields import ScalarField
from geometry.flow import FlowTrajectory, snapshot_at
from geometry.operators import cell_volume, flux_operator, volume_density
from geometry.snapshot import BackendKind
import settings

logger = logging.getLogger(__name__)

MIN_TIME_STEPS = 8


class Scheme:
    CRANK_NICOLSON = "crank-nicolson"
    IMPLICIT_EULER = "implicit-euler"

    ALL = (CRANK_NICOLSON, IMPLICIT_EULER)


@dataclass(frozen=True, eq=False)
class SolutionHistory:
    """
    Uzay-zaman ızgarasında u; times artan t sırasındadır, son satır t = T.

    f = log u ve f = log(u/A) görünümleri log_view ile türetilir.
    """

    trajectory: FlowTrajectory
    times: np.ndarray
    values: np.ndarray
    scheme: str
    masses: np.ndarray
    normalization_shift: float = 0.0

    def __post_init__(self):
        for name in ("times", "values", "masses"):
            arr = np.array(getattr(self, name), dtype=float)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def grid(self):
        return self.trajectory.grid

    @property
    def step_count(self) -> int:
        return len(self.times) - 1

    @property
    def time_step(self) -> float:
        return float(self.times[1] - self.times[0])

    @property
    def terminal(self) -> ScalarField:
        return self.field(self.step_count)

    @property
    def mass_drift(self) -> float:
        reference = self.masses[-1]
        return float(np.max(np.abs(self.masses - reference)) / abs(reference))

    @property
    def min_value(self) -> float:
        return float(np.min(self.values))

    def index_of(self, t: float) -> int:
        """t'ye karşılık gelen saklanmış zaman indeksi."""
        k = int(round(t / self.time_step))
        if not 0 <= k <= self.step_count or abs(self.times[k] - t) > 1e-9 * max(self.times[-1], 1.0):
            raise ConfigError(f"t={t!r} saklanmış bir zaman örneği değil")
        return k

    def field(self, k: int) -> ScalarField:
        return ScalarField(self.values[k], self.grid, float(self.times[k]))

    def field_at(self, t: float) -> ScalarField:
        """Komşu örnekler arasında t'de doğrusal ara değer."""
        T = self.times[-1]
        if not -1e-12 <= t <= T * (1 + 1e-12):
            raise ConfigError(f"t={t!r} çözüm aralığı dışında")
        k = min(int(np.floor(t / self.time_step)), self.step_count - 1)
        k = max(k, 0)
        weight = (t - self.times[k]) / self.time_step
        if abs(weight) < 1e-9:
            return self.field(k)
        if abs(weight - 1.0) < 1e-9:
            return self.field(k + 1)
        values = (1.0 - weight) * self.values[k] + weight * self.values[k + 1]
        return ScalarField(values, self.grid, float(t))

    def amplitude_bound(self, inflation: float = settings.AMPLITUDE_INFLATION) -> float:
        """A = 1.01 · max u (bütün uzay-zaman ızgarası üzerinde)."""
        return inflation * float(np.max(self.values))

    def trust_mask(self, k: int, A: Optional[float] = None,
                   threshold: float = settings.TRUST_THRESHOLD) -> np.ndarray:
        A = self.amplitude_bound() if A is None else A
        return self.values[k] >= threshold * A

    def log_view(self, k: int, A: Optional[float] = None) -> ScalarField:
        u = self.values[k]
        f = np.log(u) if A is None else np.log(u / A)
        return ScalarField(f, self.grid, float(self.times[k]))


def _step_matrix(traj: FlowTrajectory, t_mid: float):
    s_mid = snapshot_at(traj, t_mid)
    rho_mid = volume_density(s_mid).ravel()
    return flux_operator(s_mid) @ sparse.diags(1.0 / rho_mid)


def solve_conjugate(traj: FlowTrajectory, terminal: ScalarField, time_steps: int,
                    scheme: str = Scheme.CRANK_NICOLSON, normalization_shift: float = 0.0
                    ) -> SolutionHistory:
    """
    Son veriden t = 0'a geriye doğru çözer.

    Args:
        traj: Ricci akışı yörüngesi
        terminal: t = T anındaki kesin pozitif veri
        time_steps: düzgün τ adımı sayısı (en az 8)
        scheme: crank-nicolson (varsayılan) ya da implicit-euler

    Raises:
        PositivityLossError: herhangi bir adımda u ≤ 0 olursa (kırpma yapılmaz)
        LinearSolveError: LU çarpanlarına ayırma başarısız olursa
    """
    if terminal.grid != traj.grid:
        raise GridMismatchError("Son veri yörüngenin ızgarasında değil")
    if time_steps < MIN_TIME_STEPS:
        raise ConfigError(f"Zaman adımı sayısı en az {MIN_TIME_STEPS} olmalı, verilen: {time_steps}")
    if scheme not in Scheme.ALL:
        raise ConfigError(f"Bilinmeyen zaman şeması: {scheme}")
    T = traj.final_time
    if np.any(terminal.values <= 0):
        node = int(np.argmin(terminal.values))
        raise PositivityLossError(node, T, float(terminal.values.ravel()[node]))

    started = clock.perf_counter()
    shape = traj.grid.shape
    size = traj.grid.size
    dtau = T / time_steps
    identity = sparse.identity(size, format="csc")
    theta = 0.5 if scheme == Scheme.CRANK_NICOLSON else 1.0
    static = traj.backend in BackendKind.TORI
    cell = cell_volume(snapshot_at(traj, T))

    rho = volume_density(snapshot_at(traj, T)).ravel()
    q = terminal.values.ravel() * rho
    values = [terminal.values.copy()]
    masses = [float(np.sum(q) * cell)]
    factor = None

    for k in range(time_steps):
        t_mid = T - (k + 0.5) * dtau
        t_next = 0.0 if k == time_steps - 1 else T - (k + 1) * dtau
        if factor is None or not static:
            operator = _step_matrix(traj, t_mid)
            try:
                factor = splu((identity - theta * dtau * operator).tocsc())
            except RuntimeError as e:
                raise LinearSolveError(f"t={t_mid!r} adımında LU başarısız: {str(e)}")
        rhs = q if theta == 1.0 else q + (1.0 - theta) * dtau * (operator @ q)
        q = factor.solve(rhs)
        if not np.all(np.isfinite(q)):
            raise LinearSolveError(f"t={t_next!r} adımında çözüm sonlu değil")
        rho = volume_density(snapshot_at(traj, t_next)).ravel()
        u = q / rho
        if np.min(u) <= 0:
            node = int(np.argmin(u))
            raise PositivityLossError(node, t_next, float(u[node]))
        values.append(u.reshape(shape))
        masses.append(float(np.sum(q) * cell))
        logger.debug("Adım %d/%d: t=%.6g, min u=%.3e", k + 1, time_steps, t_next, float(np.min(u)))

    history = SolutionHistory(
        trajectory=traj,
        times=np.linspace(0.0, T, time_steps + 1),
        values=np.array(values[::-1]),
        scheme=scheme,
        masses=np.array(masses[::-1]),
        normalization_shift=normalization_shift,
    )
    logger.info("Eşlenik çözüm bitti: %s, %d adım, kütle kayması %.3e, %.2fs",
                scheme, time_steps, history.mass_drift, clock.perf_counter() - started)
    return history
