import math

import numpy as np
import pytest

from analysis import (
    cube_sup,
    curvature_evolution_residual,
    lemma21_deltaF_residual,
    lemma31_component_residuals,
    lemma33_residual,
    lemma34_residual,
)
from conjugate_heat import circle_heat_solution
from geometry import ScalarField, evolve_rotsym_surface, initial_conformal_factor, make_shrinking_sphere, make_torus
from models.config import TerminalSpec
from tests.conftest import TWO_PI, solve
from utils import fit_order

SMOOTH = TerminalSpec(kind="cosine-exponential", steepness=[1.0])
ZONAL = TerminalSpec(kind="zonal-cosine", offset=2.0, amplitude=0.5)


def torus_history(nodes: int, steps: int):
    traj = make_torus(1, [TWO_PI], [nodes], final_time=0.5)
    return traj, solve(traj, SMOOTH, steps)


def sphere_history(nodes: int, steps: int):
    traj = make_shrinking_sphere(2, 1.0, 0.2, nodes, time_samples=65)
    return traj, solve(traj, ZONAL, steps)


def test_oracle_error_is_second_order():
    spacings, errors = [], []
    for nodes, steps in [(128, 32), (256, 64), (512, 128), (1024, 256)]:
        traj = make_torus(1, [TWO_PI], [nodes], final_time=0.1)
        hist = solve(traj, TerminalSpec(kind="periodized-gaussian", center=[math.pi], variance=0.02), steps)
        x = hist.grid.axis(0)
        exact = [circle_heat_solution(x, 0.1 - t, math.pi, 0.02, TWO_PI) for t in hist.times]
        errors.append(float(np.max(np.abs(hist.values - np.array(exact)))))
        spacings.append(TWO_PI / nodes)
    assert fit_order(spacings, errors) >= 1.8
    assert errors[-1] <= 1e-4


@pytest.mark.parametrize("name, residual, target", [
    ("lemma21", lambda traj, hist: lemma21_deltaF_residual(traj, hist, 0.25, 2.0).max_abs(), 1.5),
    ("lemma31", lambda traj, hist: lemma31_component_residuals(traj, hist, 0.25, 2.0).max_values()["combined"], 1.5),
    ("lemma33", lambda traj, hist: lemma33_residual(traj, hist, 0.25).max_abs(), 1.8),
    ("lemma34", lambda traj, hist: lemma34_residual(traj, hist, 0.25).max_abs(), 1.8),
])
def test_torus_identity_orders(name, residual, target):
    ladder = [(256, 128), (512, 256), (1024, 512)]
    errors = [residual(*torus_history(nodes, steps)) for nodes, steps in ladder]
    order = fit_order([TWO_PI / nodes for nodes, _ in ladder], errors)
    assert order is not None and order >= target, f"{name}: {errors}"


@pytest.mark.parametrize("residual", [lemma33_residual, lemma34_residual])
def test_sphere_tensor_identity_orders(residual):
    ladder = [(128, 64), (256, 128), (512, 256)]
    errors = [residual(*sphere_history(nodes, steps), 0.1).max_abs() for nodes, steps in ladder]
    assert fit_order([math.pi / nodes for nodes, _ in ladder], errors) >= 1.5
    assert errors[-1] < 1e-3


def test_rotsym_curvature_evolution_order():
    ladder = [(64, 32), (128, 64), (256, 128)]
    errors = []
    for nodes, steps in ladder:
        phi0 = initial_conformal_factor(nodes, "cosine", 0.1)
        traj = evolve_rotsym_surface(phi0, 0.2, steps, nodes)
        errors.append(curvature_evolution_residual(traj, 0.1).max_abs())
    assert errors[0] > errors[1] > errors[2]
    assert fit_order([math.pi / nodes for nodes, _ in ladder], errors) >= 1.0


def test_cube_on_shrinking_sphere_follows_cap():
    # θ alanının top içindeki supremumu, o anki yarıçapla açısal başlık sınırıdır
    traj = make_shrinking_sphere(2, 1.0, 0.2, 128, time_samples=65)
    h = math.pi / 128
    series = [ScalarField(traj.grid.axis(0).copy(), traj.grid, t) for t in traj.times]
    report = cube_sup(traj, series, "north", 0.8, 0.2, 0.1, quantity="theta")
    cap = 0.8 / math.sqrt(1.0 - 2.0 * 0.2)
    assert cap - h <= report.supremum <= cap * (1.0 + 1e-9)
    assert report.argmax_time == pytest.approx(0.2)
