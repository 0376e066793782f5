"""Konformal ayarda dönel simetrik S² üzerinde Ricci akışı.

g = e^{2φ}(dθ² + sin²θ dψ²) için ∂_t g = -R g, φ_t = -e^{-2φ}(1 - Δ₀φ) olur.
Adımlama, katsayısı yarım adım tahmininde dondurulmuş doğrusal-örtük orta nokta
kuralıdır (ikinci mertebe).
"""

import logging
import math

import numpy as np
from scipy import sparse
from scipy.sparse.linalg import splu

from exceptions import GeometryError, GridMismatchError, PoleRegularityError, RicciFlowBlowUpError
from geometry.curvature import conformal_gauss_curvature
from geometry.fields import ScalarField
from geometry.flow import FlowTrajectory
from geometry.grid import Grid, GridKind
from geometry.snapshot import BackendKind, GeometrySnapshot, InterpolationRule

logger = logging.getLogger(__name__)


def round_sphere_laplacian(grid: Grid) -> sparse.csc_matrix:
    """Δ₀ = ∂²_θ + cot θ ∂_θ, kutuplarda çift yansımalı merkezi farklar."""
    N, h = grid.shape[0], grid.spacing[0]
    cot = 1.0 / np.tan(grid.axis(0))
    lower = 1.0 / h ** 2 - cot / (2.0 * h)
    upper = 1.0 / h ** 2 + cot / (2.0 * h)
    main = np.full(N, -2.0 / h ** 2)
    main[0] += lower[0]
    main[-1] += upper[-1]
    return sparse.diags([lower[1:], main, upper[:-1]], [-1, 0, 1], shape=(N, N), format="csc")


def pole_slopes(phi: np.ndarray, grid: Grid):
    """Her kutupta üç düğüme ikinci derece uydurmanın tek yönlü türevi."""
    theta = grid.axis(0)
    north = np.polyfit(theta[:3], phi[:3], 2)
    south = np.polyfit(math.pi - theta[-3:], phi[-3:], 2)
    return float(north[1]), float(south[1])


def check_pole_regularity(initial_phi: ScalarField) -> None:
    grid = initial_phi.grid
    if grid.kind != GridKind.COLATITUDE:
        raise GeometryError("Konformal faktör kolatitüd ızgarasında verilmeli")
    phi = initial_phi.values
    tolerance = grid.spacing[0] ** 2 * (1.0 + float(np.max(np.abs(phi))))
    north, south = pole_slopes(phi, grid)
    if abs(north) > tolerance or abs(south) > tolerance:
        raise PoleRegularityError(
            f"Kutuplarda φ_θ sıfır değil (kuzey {north:.3e}, güney {south:.3e}, tolerans {tolerance:.3e})"
        )


def evolve_rotsym_surface(initial_phi: ScalarField, final_time: float, time_steps: int,
                          grid_size: int) -> FlowTrajectory:
    """
    φ₀'dan başlayarak akışı [0, T] üzerinde time_steps adımda çözer.

    Raises:
        PoleRegularityError: φ₀ kutuplarda düzenli değilse
        RicciFlowBlowUpError: φ sonlu olmaktan çıkarsa (ilk kötü zamanla)
    """
    grid = initial_phi.grid
    if grid.shape != (grid_size,):
        raise GridMismatchError(f"φ₀ ızgarası {grid.shape}, istenen boyut {grid_size}")
    if final_time <= 0 or time_steps < 1:
        raise GeometryError("T pozitif ve adım sayısı en az 1 olmalı")
    check_pole_regularity(initial_phi)

    lap0 = round_sphere_laplacian(grid)
    identity = sparse.identity(grid_size, format="csc")
    dt = final_time / time_steps
    phi = initial_phi.values.copy()
    snapshots = [GeometrySnapshot(BackendKind.ROTSYM_SURFACE, 0.0, grid, 2, phi=phi.copy())]

    for k in range(time_steps):
        t_next = final_time if k == time_steps - 1 else (k + 1) * dt
        with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
            try:
                c_now = np.exp(-2.0 * phi)
                predictor = splu((identity - 0.5 * dt * sparse.diags(c_now) @ lap0).tocsc())
                phi_half = predictor.solve(phi - 0.5 * dt * c_now)
                c_half = np.exp(-2.0 * phi_half)
                operator = sparse.diags(c_half) @ lap0
                corrector = splu((identity - 0.5 * dt * operator).tocsc())
                phi = corrector.solve(phi + 0.5 * dt * (operator @ phi) - dt * c_half)
            except (RuntimeError, ValueError) as e:
                raise RicciFlowBlowUpError(t_next, f"Ricci akışı t={t_next!r} anında çöktü: {str(e)}")
        if not np.all(np.isfinite(phi)):
            raise RicciFlowBlowUpError(t_next)
        snapshots.append(GeometrySnapshot(BackendKind.ROTSYM_SURFACE, t_next, grid, 2, phi=phi.copy()))

    logger.info("Dönel simetrik akış tamamlandı: %d adım, T=%g", time_steps, final_time)
    return FlowTrajectory(BackendKind.ROTSYM_SURFACE, 2, float(final_time), tuple(snapshots),
                          InterpolationRule.PIECEWISE_LINEAR)


def initial_conformal_factor(grid_size: int, kind: str = "round", amplitude: float = 0.0) -> ScalarField:
    grid = Grid.colatitude(grid_size)
    theta = grid.axis(0)
    if kind == "round":
        values = np.zeros(grid.shape)
    elif kind == "cosine":
        values = amplitude * np.cos(theta)
    else:
        raise GeometryError(f"Bilinmeyen başlangıç profili: {kind}")
    return ScalarField(values, grid, 0.0)


def curvature_oscillation(s: GeometrySnapshot) -> float:
    """(max K - min K)/ortalama K; ölçek değişmez yuvarlaklık ölçüsü."""
    K = conformal_gauss_curvature(s)
    weights = np.exp(2.0 * s.conformal_factor) * np.sin(s.theta)
    mean = float(np.sum(K * weights) / np.sum(weights))
    return float((np.max(K) - np.min(K)) / mean)
