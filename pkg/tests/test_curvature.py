import math

import numpy as np
import pytest

from geometry import (
    Ball,
    curvature_bounds,
    make_shrinking_sphere,
    make_torus,
    sectional_curvature,
    snapshot_at,
)


@pytest.mark.parametrize("n", [2, 3])
def test_shrinking_sphere_curvature_closed_form(n):
    traj = make_shrinking_sphere(n, 1.0, 0.1, 64)
    s = snapshot_at(traj, 0.05)
    r_sq = 1.0 - 2.0 * (n - 1) * 0.05
    c = s.curvature
    assert np.allclose(c.scalar.values, n * (n - 1) / r_sq)
    assert np.allclose(c.norm_rm.values, math.sqrt(2.0 * n * (n - 1)) / r_sq)
    assert np.allclose(c.ricci.max_eigenvalue(), (n - 1) / r_sq)
    assert np.allclose(sectional_curvature(s), 1.0 / r_sq)
    assert c.grad_r_norm.max_abs() == 0.0


def test_two_sphere_rm_norm_equals_scalar_curvature():
    s = snapshot_at(make_shrinking_sphere(2, 2.0, 0.5, 32), 0.25)
    assert np.allclose(s.curvature.norm_rm.values, s.curvature.scalar.values)


def test_torus_is_flat():
    traj = make_torus(2, [1.0, 2.0], [16, 16])
    s = snapshot_at(traj, 0.3)
    c = s.curvature
    for field in (c.scalar, c.norm_rm, c.grad_r_norm, c.lap_r, c.norm_hess_r):
        assert field.max_abs() == 0.0
    assert np.all(sectional_curvature(s) == 0.0)
    bounds = curvature_bounds(traj)
    assert (bounds.K0, bounds.K1, bounds.K2, bounds.k0) == (0.0, 0.0, 0.0, 0.0)


def test_curvature_bounds_inflated_at_final_time():
    traj = make_shrinking_sphere(2, 1.0, 0.2, 64)
    bounds = curvature_bounds(traj)
    r_sq = 1.0 - 2.0 * 0.2
    assert bounds.K0 == pytest.approx(1.05 / r_sq)
    assert bounds.k0 == pytest.approx(1.05 * 2.0 / r_sq)
    assert bounds.K1 == 0.0
    assert bounds.K2 == 0.0
    assert bounds.safety_factor == 1.05


def test_curvature_bounds_on_time_window():
    traj = make_shrinking_sphere(2, 1.0, 0.2, 64)
    early = curvature_bounds(traj, Ball("north", 0.3), times=[0.0, 0.1])
    assert early.K0 == pytest.approx(1.05 / 0.8)
    assert early.window == [0.0, 0.1]
