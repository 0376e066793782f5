import math

import numpy as np
import pytest

from exceptions import GeometryError, GridMismatchError
from geometry import (
    Ball,
    Grid,
    ScalarField,
    geodesic_distance,
    gradient_sq,
    hessian_frame,
    integrate,
    laplace_beltrami,
    make_shrinking_sphere,
    make_torus,
    snapshot_at,
)
from geometry.operators import flux_operator, volume_density
from geometry.stencils import combine_masks, erode
from tests.conftest import field_on


def test_grid_axes():
    periodic = Grid.periodic([64], [2.0 * math.pi])
    assert periodic.axis(0)[0] == 0.0
    assert periodic.axis(0)[1] == pytest.approx(2.0 * math.pi / 64)
    colatitude = Grid.colatitude(32)
    # kutuplar düğüm değildir
    assert colatitude.axis(0)[0] == pytest.approx(math.pi / 64)
    assert colatitude.axis(0)[-1] == pytest.approx(math.pi - math.pi / 64)
    assert periodic.refined().shape == (128,)


def test_torus_laplacian_of_sine(torus1d):
    s = snapshot_at(torus1d, 0.0)
    x = s.grid.axis(0)
    lap = laplace_beltrami(s, field_on(s, np.sin(x)))
    assert np.max(np.abs(lap.values + np.sin(x))) < 1e-3


def test_torus2d_hessian_mixed_term(torus2d):
    s = snapshot_at(torus2d, 0.0)
    x, y = s.grid.mesh()
    hess = hessian_frame(s, field_on(s, np.sin(x) * np.sin(y)))
    assert np.max(np.abs(hess.h12 - np.cos(x) * np.cos(y))) < 5e-3
    assert np.max(np.abs(hess.trace() + 2.0 * np.sin(x) * np.sin(y))) < 5e-3


def test_sphere_laplacian_of_first_harmonic(sphere2):
    s = snapshot_at(sphere2, 0.0)
    theta = s.theta
    lap = laplace_beltrami(s, field_on(s, np.cos(theta)))
    # yarıçap 1 olan S² üzerinde Δ cos θ = -2 cos θ
    assert np.max(np.abs(lap.values + 2.0 * np.cos(theta))) < 5e-3


def test_sphere_laplacian_scales_with_radius(sphere2):
    T = sphere2.final_time
    s = snapshot_at(sphere2, T)
    theta = s.theta
    lap = laplace_beltrami(s, field_on(s, np.cos(theta)))
    r_sq = 1.0 - 2.0 * T
    assert np.max(np.abs(lap.values * r_sq + 2.0 * np.cos(theta))) < 5e-3


def test_integrate_area():
    torus = snapshot_at(make_torus(2, [2.0, 3.0], [32, 48]), 0.0)
    assert integrate(torus, field_on(torus, np.ones(torus.grid.shape))) == pytest.approx(6.0)
    sphere = snapshot_at(make_shrinking_sphere(2, 1.0, 0.1, 128), 0.0)
    assert integrate(sphere, field_on(sphere, np.ones(sphere.grid.shape))) == pytest.approx(
        4.0 * math.pi, rel=1e-3)


def test_gradient_sq_is_nonnegative(sphere2):
    s = snapshot_at(sphere2, 0.1)
    g = gradient_sq(s, field_on(s, 2.0 + np.cos(s.theta)))
    assert np.all(g.values >= 0.0)


def test_geodesic_distance_on_torus_is_periodic():
    s = snapshot_at(make_torus(1, [2.0 * math.pi], [64]), 0.0)
    d = geodesic_distance(s, 0)
    assert d.values[32] == pytest.approx(math.pi)
    assert d.values[63] == pytest.approx(d.values[1])


def test_ball_members_on_sphere(sphere2):
    s = snapshot_at(sphere2, 0.0)
    members = Ball("north", 0.5).members(s)
    assert members.sum() == np.sum(s.theta <= 0.5)
    assert not Ball("north", 0.5).members(s)[-1]


def test_erode_and_combine_masks():
    grid = Grid.periodic([16], [1.0])
    mask = np.ones(16, dtype=bool)
    mask[5] = False
    eroded = erode(mask, grid)
    assert not eroded[4] and not eroded[5] and not eroded[6]
    assert eroded[3] and eroded[7]
    assert combine_masks(None, None) is None
    assert combine_masks(mask, None).sum() == 15


def test_shrinking_sphere_rejects_extinction():
    with pytest.raises(GeometryError):
        make_shrinking_sphere(2, 1.0, 0.5, 64)


def test_snapshot_outside_window(torus1d):
    with pytest.raises(GeometryError):
        snapshot_at(torus1d, 0.6)


def test_operator_rejects_foreign_grid(torus1d):
    s = snapshot_at(torus1d, 0.0)
    other = Grid.periodic([128], [2.0 * math.pi])
    with pytest.raises(GridMismatchError):
        laplace_beltrami(s, ScalarField(np.ones(128), other, 0.0))


def test_scalar_field_rejects_non_finite():
    grid = Grid.periodic([16], [1.0])
    values = np.ones(16)
    values[3] = np.nan
    with pytest.raises(GeometryError):
        ScalarField(values, grid, 0.0)


@pytest.mark.parametrize("n", [2, 3])
def test_flux_operator_matches_laplacian_at_poles(n):
    s = snapshot_at(make_shrinking_sphere(n, 1.0, 0.1, 128), 0.0)
    u = np.cos(s.theta)
    lap = flux_operator(s) @ u / volume_density(s)
    # Sⁿ üzerinde Δ cos θ = -n cos θ; kutup hücreleri dahil
    assert np.max(np.abs(lap + n * u)) < 1e-2
    assert abs(lap[0] + n * u[0]) < 1e-2


def test_sphere_volume_is_exact():
    s = snapshot_at(make_shrinking_sphere(3, 1.0, 0.1, 32), 0.0)
    ones = ScalarField(np.ones(32), s.grid, s.time)
    assert integrate(s, ones) == pytest.approx(2.0 * math.pi ** 2, rel=1e-12)
