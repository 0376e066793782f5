import math

import numpy as np
import pytest

from analysis import cube_sup
from exceptions import EmptyRegionError, GeometryError
from geometry import ScalarField, make_torus


@pytest.fixture
def traj():
    return make_torus(1, [2.0 * math.pi], [32], final_time=1.0)


def fields(traj, peaks):
    out = []
    for t, node, value in peaks:
        values = np.zeros(32)
        values[node] = value
        out.append(ScalarField(values, traj.grid, t))
    return out


def test_earliest_time_wins_ties(traj):
    series = fields(traj, [(0.2, 5, 3.0), (0.4, 5, 3.0), (0.6, 7, 1.0)])
    report = cube_sup(traj, series, 0, math.inf, 1.0, 1.0, quantity="q")
    assert report.supremum == 3.0
    assert report.argmax_node == 5
    assert report.argmax_time == pytest.approx(0.2)


def test_time_window_excludes_samples(traj):
    series = fields(traj, [(0.2, 5, 3.0), (0.8, 7, 1.0)])
    report = cube_sup(traj, series, 0, math.inf, 1.0, 0.5, bound=2.0)
    assert report.supremum == 1.0
    assert report.margin == pytest.approx(1.0)


def test_ball_restricts_nodes(traj):
    series = fields(traj, [(0.5, 16, 9.0)])
    # düğüm 16, düğüm 0'dan π uzaklıkta
    report = cube_sup(traj, series, 0, 1.0, 1.0, 1.0)
    assert report.supremum == 0.0
    assert report.argmax_node != 16


def test_empty_cube(traj):
    series = fields(traj, [(0.9, 1, 1.0)])
    with pytest.raises(EmptyRegionError):
        cube_sup(traj, series, 0, math.inf, 0.5, 0.2)


def test_cube_outside_flow_window(traj):
    with pytest.raises(GeometryError):
        cube_sup(traj, fields(traj, [(0.5, 1, 1.0)]), 0, math.inf, 1.5, 0.2)
