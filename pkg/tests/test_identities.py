import math

import numpy as np
import pytest

from analysis import (
    bochner_residual,
    curvature_evolution_residual,
    lemma21_deltaF_residual,
    lemma21_inequality_gap,
    lemma31_component_residuals,
    lemma33_residual,
    lemma34_residual,
)
from exceptions import ConfigError
from geometry import curvature_bounds, make_torus, snapshot_at
from models.config import TerminalSpec
from tests.conftest import field_on, solve

SMOOTH = TerminalSpec(kind="cosine-exponential", steepness=[1.0])


def torus_history(nodes: int, steps: int):
    traj = make_torus(1, [2.0 * math.pi], [nodes], final_time=0.5)
    return traj, solve(traj, SMOOTH, steps)


def test_bochner_on_flat_torus(torus1d):
    s = snapshot_at(torus1d, 0.0)
    x = s.grid.axis(0)
    assert bochner_residual(s, field_on(s, np.exp(np.cos(x) - 1.0))).max_abs() < 5e-3


def test_bochner_on_round_sphere(sphere2):
    s = snapshot_at(sphere2, 0.1)
    u = field_on(s, 2.0 + 0.5 * np.cos(s.theta))
    assert bochner_residual(s, u).max_abs() < 2e-2


def test_curvature_evolution_on_shrinking_sphere(sphere2):
    residual = curvature_evolution_residual(sphere2, 0.1)
    assert residual.max_abs() < 1e-3
    with pytest.raises(ConfigError):
        curvature_evolution_residual(sphere2, 0.0)


def test_lemma21_residual_is_small(smooth_torus_history):
    traj, hist = smooth_torus_history
    assert lemma21_deltaF_residual(traj, hist, 0.25, 2.0).max_abs() < 5e-2


def test_lemma21_gap_on_flat_torus(smooth_torus_history):
    traj, hist = smooth_torus_history
    gap = lemma21_inequality_gap(traj, hist, 0.25, 2.0, 1.0, curvature_bounds(traj))
    # düz torusta alt sınır ayrıştırma hatası dışında sağlanır
    assert gap.min() > -5e-2
    with pytest.raises(ConfigError):
        lemma21_inequality_gap(traj, hist, 0.25, 2.0, 0.0, curvature_bounds(traj))


def test_lemma31_components(smooth_torus_history):
    traj, hist = smooth_torus_history
    residuals = lemma31_component_residuals(traj, hist, 0.25, 2.0)
    values = residuals.max_values()
    assert set(values) == {"gradient_sq", "log_derivative", "normalized_gradient", "combined"}
    assert max(values.values()) < 5e-2
    first, second = residuals.as_pair()
    assert first is residuals.gradient_sq and second is residuals.log_derivative


def test_lemma31_on_shrinking_sphere(sphere_history):
    traj, hist = sphere_history
    values = lemma31_component_residuals(traj, hist, 0.1, 2.0).max_values()
    assert max(values.values()) < 5e-2


def test_tensor_identities_on_flat_torus(smooth_torus_history):
    traj, hist = smooth_torus_history
    assert lemma33_residual(traj, hist, 0.25).max_abs() < 5e-2
    assert lemma34_residual(traj, hist, 0.25).max_abs() < 5e-2


def test_tensor_identities_on_flat_two_torus(smooth_torus2d_history):
    traj, hist = smooth_torus2d_history
    assert lemma33_residual(traj, hist, 0.25).max_abs() < 1e-1
    assert lemma34_residual(traj, hist, 0.25).max_abs() < 1e-1


def test_lemma33_residual_converges():
    coarse = lemma33_residual(*torus_history(128, 64), 0.25).max_abs()
    fine = lemma33_residual(*torus_history(256, 128), 0.25).max_abs()
    # ikinci mertebe: h yarıya inince artık yaklaşık dörtte birine düşer
    assert fine < coarse / 3.0


def test_identities_need_interior_time(smooth_torus_history):
    traj, hist = smooth_torus_history
    with pytest.raises(ConfigError):
        lemma33_residual(traj, hist, 0.5)
    with pytest.raises(ConfigError):
        lemma31_component_residuals(traj, hist, 0.0, 2.0)
