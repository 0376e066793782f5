import math

import numpy as np
import pytest

from conjugate_heat import (
    circle_heat_solution,
    circle_heat_time_derivative,
    periodized_gaussian,
    theta_series_gaussian,
)

LENGTH = 2.0 * math.pi


@pytest.fixture
def x():
    return np.arange(256) * LENGTH / 256


def test_periodized_gaussian_has_unit_mass(x):
    values = periodized_gaussian(x, math.pi, 0.02, LENGTH)
    assert np.sum(values) * LENGTH / 256 == pytest.approx(1.0, rel=1e-10)


@pytest.mark.parametrize("variance", [0.02, 0.3, 2.0])
def test_image_sum_matches_theta_series(x, variance):
    images = periodized_gaussian(x, 1.0, variance, LENGTH)
    theta = theta_series_gaussian(x, 1.0, variance, LENGTH)
    assert np.max(np.abs(images - theta)) < 1e-10


def test_heat_solution_spreads_variance(x):
    assert np.allclose(circle_heat_solution(x, 0.1, 2.0, 0.05, LENGTH),
                       periodized_gaussian(x, 2.0, 0.25, LENGTH))


def test_time_derivative_matches_difference(x):
    # t = T - τ olduğundan u_t = -∂_τ u
    dtau = 1e-5
    plus = circle_heat_solution(x, 0.1 + dtau, 2.0, 0.05, LENGTH)
    minus = circle_heat_solution(x, 0.1 - dtau, 2.0, 0.05, LENGTH)
    difference = -(plus - minus) / (2.0 * dtau)
    exact = circle_heat_time_derivative(x, 0.1, 2.0, 0.05, LENGTH)
    assert np.max(np.abs(difference - exact)) < 1e-5
