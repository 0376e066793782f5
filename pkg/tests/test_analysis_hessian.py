import math

import numpy as np
import pytest

from analysis import (
    HessianQuantity,
    fit_hessian_constant,
    hessian_quantity_F1,
    hessian_quantity_F2,
    hessian_quantity_bound,
    theorem_hessian_ratio,
    v_tensor,
    w_tensor,
)
from exceptions import ConfigError


def test_quantity_bound():
    assert hessian_quantity_bound(0.5, math.inf, 2.0, 1.0) == pytest.approx(5.0)
    assert hessian_quantity_bound(0.5, 2.0, 2.0, 1.0) == pytest.approx(5.5)
    with pytest.raises(ConfigError):
        hessian_quantity_bound(0.0, math.inf, 1.0)


def test_fit_constant_is_tight():
    samples = [(0.5, 4.0), (0.25, 10.0), (1.0, 0.5)]
    C0 = fit_hessian_constant(samples)
    assert C0 == pytest.approx(2.5)
    assert all(value <= hessian_quantity_bound(tau, math.inf, C0) + 1e-12 for tau, value in samples)


def test_gaussian_ratios_below_leading_coefficient(gaussian_history):
    traj, hist = gaussian_history
    for k in (0, 64, 127):
        ratios = theorem_hessian_ratio(traj, hist, float(hist.times[k]))
        by_name = {rep.quantity: rep for rep in ratios.reports}
        assert by_name[HessianQuantity.EIGEN].supremum <= 18.0
        assert by_name[HessianQuantity.LAPLACIAN].supremum <= 18.0
        assert by_name[HessianQuantity.EIGEN].margin > 0
        assert by_name[HessianQuantity.NORM].bound is None


def test_local_ratio_reads_as_constant(gaussian_history):
    traj, hist = gaussian_history
    t = float(hist.times[32])
    unit = theorem_hessian_ratio(traj, hist, t)
    doubled = theorem_hessian_ratio(traj, hist, t, C0=2.0)
    assert doubled.local.max() == pytest.approx(0.5 * unit.local.max())


def test_f2_is_tau_times_f1(smooth_torus_history):
    traj, hist = smooth_torus_history
    f1 = hessian_quantity_F1(traj, hist, 0.25, 2.0)
    f2 = hessian_quantity_F2(traj, hist, 0.25, 2.0)
    assert np.allclose(f2.values, 0.25 * f1.values)
    with pytest.raises(ConfigError):
        hessian_quantity_F1(traj, hist, 0.25, 1.0)


def test_v_and_w_tensors(smooth_torus2d_history):
    traj, hist = smooth_torus2d_history
    A = hist.amplitude_bound()
    w = w_tensor(traj, hist, 0.25, A)
    # rank-1: determinant sıfır, iz negatif değil
    assert np.max(np.abs(w.h11 * w.h22 - w.h12 ** 2)) < 1e-12
    assert np.all(w.trace() >= 0.0)
    v = v_tensor(traj, hist, 0.25, A)
    assert v.h12 is not None


def test_amplitude_below_sup_is_rejected(smooth_torus_history):
    traj, hist = smooth_torus_history
    with pytest.raises(ConfigError):
        v_tensor(traj, hist, 0.25, 0.5 * float(np.max(hist.values)))
    with pytest.raises(ConfigError):
        theorem_hessian_ratio(traj, hist, 0.25, A=0.5 * float(np.max(hist.values)))
