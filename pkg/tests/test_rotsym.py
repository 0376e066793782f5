import numpy as np
import pytest

from exceptions import PoleRegularityError
from geometry import Grid, ScalarField, evolve_rotsym_surface, initial_conformal_factor, snapshot_at
from geometry.rotsym import curvature_oscillation


def test_round_initial_data_shrinks_like_closed_form():
    phi0 = initial_conformal_factor(64, "round")
    traj = evolve_rotsym_surface(phi0, 0.2, 32, 64)
    final = snapshot_at(traj, 0.2)
    assert np.max(np.abs(np.exp(2.0 * final.phi) - 0.6)) < 1e-3
    assert curvature_oscillation(final) < 1e-10


def test_round_sphere_scalar_curvature():
    phi0 = initial_conformal_factor(64, "round")
    traj = evolve_rotsym_surface(phi0, 0.1, 16, 64)
    s = snapshot_at(traj, 0.0)
    assert np.allclose(s.curvature.scalar.values, 2.0)


def test_flow_snapshots_cover_window():
    phi0 = initial_conformal_factor(32, "cosine", 0.1)
    traj = evolve_rotsym_surface(phi0, 0.1, 16, 32)
    assert len(traj.snapshots) == 17
    assert traj.times[-1] == pytest.approx(0.1)
    # ara zamanlarda φ doğrusal ara değerle verilir
    mid = snapshot_at(traj, 0.5 * (traj.times[3] + traj.times[4]))
    expected = 0.5 * (traj.snapshots[3].phi + traj.snapshots[4].phi)
    assert np.allclose(mid.phi, expected)


def test_irregular_pole_is_rejected():
    grid = Grid.colatitude(64)
    phi0 = ScalarField(grid.axis(0).copy(), grid, 0.0)
    with pytest.raises(PoleRegularityError):
        evolve_rotsym_surface(phi0, 0.1, 16, 64)


def test_round_flow_metric_within_tight_tolerance():
    phi0 = initial_conformal_factor(128, "round")
    traj = evolve_rotsym_surface(phi0, 0.1, 64, 128)
    final = snapshot_at(traj, 0.1)
    # e^{2φ} = 1 - 2t
    assert np.max(np.abs(np.exp(2.0 * final.phi) / 0.8 - 1.0)) <= 1e-4
