import math

import numpy as np
import pytest

from conjugate_heat import build_terminal, solve_conjugate
from geometry import ScalarField, make_shrinking_sphere, make_torus, snapshot_at
from models.config import TerminalSpec

TWO_PI = 2.0 * math.pi


def solve(traj, spec: TerminalSpec, time_steps: int):
    terminal, shift = build_terminal(spec, snapshot_at(traj, traj.final_time))
    return solve_conjugate(traj, terminal, time_steps, normalization_shift=shift)


@pytest.fixture
def torus1d():
    return make_torus(1, [TWO_PI], [256], final_time=0.5)


@pytest.fixture
def torus2d():
    return make_torus(2, [TWO_PI, TWO_PI], [64, 64], final_time=0.5)


@pytest.fixture
def sphere2():
    return make_shrinking_sphere(2, 1.0, 0.2, 128, time_samples=65)


@pytest.fixture
def gaussian_history():
    """T¹ üzerinde varyansı 0.05 olan Gauss son verisinden geriye çözüm."""
    traj = make_torus(1, [TWO_PI], [512], final_time=0.1)
    spec = TerminalSpec(kind="periodized-gaussian", center=[math.pi], variance=0.05)
    return traj, solve(traj, spec, 128)


@pytest.fixture
def smooth_torus_history():
    traj = make_torus(1, [TWO_PI], [256], final_time=0.5)
    spec = TerminalSpec(kind="cosine-exponential", steepness=[1.0])
    return traj, solve(traj, spec, 128)


@pytest.fixture
def smooth_torus2d_history():
    traj = make_torus(2, [TWO_PI, TWO_PI], [64, 64], final_time=0.5)
    spec = TerminalSpec(kind="cosine-exponential", steepness=[1.0, 0.5])
    return traj, solve(traj, spec, 64)


@pytest.fixture
def sphere_history():
    traj = make_shrinking_sphere(2, 1.0, 0.2, 128, time_samples=65)
    spec = TerminalSpec(kind="zonal-cosine", offset=2.0, amplitude=0.5)
    return traj, solve(traj, spec, 64)


@pytest.fixture
def scenario_dict():
    def build(**overrides):
        data = {
            "name": "deneme",
            "backend": {"kind": "torus-1d", "grid_sizes": [64]},
            "terminal": {"kind": "constant", "value": 1.0},
            "final_time": 0.1,
            "time_steps": 32,
            "tau_terminal": 1.0,
            "checks": ["entropy"],
        }
        data.update(overrides)
        return data
    return build


def field_on(s, values) -> ScalarField:
    return ScalarField(np.asarray(values, dtype=float), s.grid, s.time)
