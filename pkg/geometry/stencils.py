"""İkinci mertebe merkezi fark şablonları.

Periyodik eksenlerde sarmalama, kolatitüd ekseninde dönel simetrinin gerektirdiği
çift yansıma (θ_{-1} ↔ θ_0, θ_N ↔ θ_{N-1}) kullanılır.
"""

from typing import Optional, Tuple

import numpy as np

from geometry.grid import Grid, GridKind


def neighbours(values: np.ndarray, grid: Grid, axis: int) -> Tuple[np.ndarray, np.ndarray]:
    if grid.kind == GridKind.PERIODIC:
        return np.roll(values, 1, axis=axis), np.roll(values, -1, axis=axis)
    padded = np.concatenate([values[:1], values, values[-1:]])
    return padded[:-2], padded[2:]


def first_difference(values: np.ndarray, grid: Grid, axis: int = 0) -> np.ndarray:
    minus, plus = neighbours(values, grid, axis)
    return (plus - minus) / (2.0 * grid.spacing[axis])


def second_difference(values: np.ndarray, grid: Grid, axis: int = 0) -> np.ndarray:
    minus, plus = neighbours(values, grid, axis)
    return (plus - 2.0 * values + minus) / grid.spacing[axis] ** 2


def erode(mask: Optional[np.ndarray], grid: Grid, depth: int = 1) -> Optional[np.ndarray]:
    """Şablonu maskeli bir düğüme değen düğümleri de maskeler."""
    if mask is None:
        return None
    out = mask
    for _ in range(depth):
        eroded = out.copy()
        for axis in range(grid.ndim):
            minus, plus = neighbours(out, grid, axis)
            eroded &= minus & plus
        out = eroded
    return out


def combine_masks(*masks: Optional[np.ndarray]) -> Optional[np.ndarray]:
    present = [m for m in masks if m is not None]
    if not present:
        return None
    out = present[0].copy()
    for m in present[1:]:
        out &= m
    return out
