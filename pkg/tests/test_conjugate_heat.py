import math

import numpy as np
import pytest

from conjugate_heat import (
    build_terminal,
    circle_heat_solution,
    pde_residual,
    solve_conjugate,
    time_derivative_discrepancy,
)
from exceptions import ConfigError, PositivityLossError, UnsupportedOperationError
from geometry import ScalarField, integrate, make_shrinking_sphere, make_torus, snapshot_at
from models.config import TerminalSpec
from tests.conftest import solve


def test_solver_matches_oracle(gaussian_history):
    traj, hist = gaussian_history
    x = hist.grid.axis(0)
    T = traj.final_time
    errors = [np.max(np.abs(hist.values[k] - circle_heat_solution(x, T - t, math.pi, 0.05, 2 * math.pi)))
              for k, t in enumerate(hist.times)]
    assert max(errors) < 2e-4
    assert errors[-1] == 0.0


def test_mass_is_conserved_on_torus(gaussian_history):
    _, hist = gaussian_history
    assert hist.mass_drift < 1e-10
    assert hist.min_value > 0


def test_mass_is_conserved_on_shrinking_sphere(sphere_history):
    traj, hist = sphere_history
    assert hist.mass_drift < 1e-10
    masses = [integrate(snapshot_at(traj, t), hist.field(k)) for k, t in enumerate(hist.times)]
    assert max(masses) - min(masses) < 1e-9 * masses[-1]


def test_constant_density_follows_volume():
    # uzayda sabit u için u(t)·Vol(t) sabittir; S² üzerinde Vol ∝ 1 - 2t
    traj = make_shrinking_sphere(2, 1.0, 0.2, 32, time_samples=17)
    hist = solve(traj, TerminalSpec(kind="constant", value=1.0), 16)
    assert np.allclose(hist.values[0], 0.6, rtol=1e-8)


def test_time_derivative_cross_check(smooth_torus_history):
    traj, hist = smooth_torus_history
    assert time_derivative_discrepancy(traj, hist, 0.25) < 1e-3
    assert pde_residual(traj, hist, 0.25).max_abs() < 1e-3


def test_pde_residual_requires_interior_time(smooth_torus_history):
    traj, hist = smooth_torus_history
    with pytest.raises(ConfigError):
        pde_residual(traj, hist, 0.5)


def test_history_views(smooth_torus_history):
    traj, hist = smooth_torus_history
    assert hist.step_count == 128
    assert hist.index_of(0.25) == 64
    assert hist.field_at(0.25).values.tolist() == hist.values[64].tolist()
    assert hist.amplitude_bound() == pytest.approx(1.01 * hist.values.max())
    with pytest.raises(ConfigError):
        hist.index_of(0.001)


def test_nonpositive_terminal_is_rejected():
    traj = make_torus(1, [1.0], [32])
    values = np.ones(32)
    values[7] = 0.0
    with pytest.raises(PositivityLossError) as info:
        solve_conjugate(traj, ScalarField(values, traj.grid, traj.final_time), 16)
    assert info.value.node == 7


def test_too_few_steps():
    traj = make_torus(1, [1.0], [32])
    with pytest.raises(ConfigError):
        solve_conjugate(traj, ScalarField(np.ones(32), traj.grid, 1.0), 4)


def test_normalized_terminal_records_shift():
    traj = make_torus(1, [2.0 * math.pi], [64])
    s = snapshot_at(traj, traj.final_time)
    field, shift = build_terminal(TerminalSpec(kind="constant", value=3.0, normalize=True), s)
    assert integrate(s, field) == pytest.approx(1.0)
    assert shift == pytest.approx(math.log(6.0 * math.pi))


def test_terminal_kinds_respect_backend():
    s = snapshot_at(make_shrinking_sphere(2, 1.0, 0.1, 32), 0.1)
    with pytest.raises(UnsupportedOperationError):
        build_terminal(TerminalSpec(kind="periodized-gaussian", variance=0.1), s)
    torus = snapshot_at(make_torus(1, [1.0], [32]), 0.0)
    with pytest.raises(UnsupportedOperationError):
        build_terminal(TerminalSpec(kind="zonal-cosine"), torus)


def test_implicit_euler_also_conserves_mass():
    traj = make_torus(1, [2.0 * math.pi], [64], final_time=0.1)
    spec = TerminalSpec(kind="cosine-exponential")
    terminal, _ = build_terminal(spec, snapshot_at(traj, 0.1))
    hist = solve_conjugate(traj, terminal, 16, scheme="implicit-euler")
    assert hist.mass_drift < 1e-10


def test_three_sphere_solution_converges():
    residuals = []
    for nodes, steps in [(64, 32), (128, 64)]:
        traj = make_shrinking_sphere(3, 1.0, 0.1, nodes)
        hist = solve(traj, TerminalSpec(kind="zonal-cosine", offset=2.0, amplitude=0.5), steps)
        assert hist.mass_drift < 1e-10
        residuals.append(pde_residual(traj, hist, 0.05).max_abs())
    assert residuals[1] < residuals[0] / 3.0
    assert residuals[1] < 1e-2
