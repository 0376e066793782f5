import math

import numpy as np
import pytest

from entropy import (
    check_normalization,
    entropy_production,
    entropy_production_density,
    max_residual,
    min_derivative,
    monotonicity_check,
    tau_terminal,
    w_entropy,
)
from entropy.monotonicity import TORUS_EMULATION
from exceptions import ConfigError, NormalizationError
from geometry import make_shrinking_sphere, make_torus, snapshot_at
from models.config import TerminalSpec
from tests.conftest import field_on, solve

LENGTH = 2.0 * math.pi


@pytest.fixture
def flat():
    return snapshot_at(make_torus(1, [LENGTH], [64]), 0.0)


def test_entropy_of_uniform_density(flat):
    u = field_on(flat, np.full(64, 1.0 / LENGTH))
    tau = 0.7
    expected = math.log(LENGTH) - 0.5 * math.log(4.0 * math.pi * tau) - 1.0
    assert w_entropy(flat, u, tau) == pytest.approx(expected, rel=1e-12)
    assert entropy_production(flat, u, tau) == pytest.approx(1.0 / (2.0 * tau), rel=1e-12)


def test_entropy_inputs(flat):
    u = field_on(flat, np.full(64, 1.0 / LENGTH))
    with pytest.raises(ConfigError):
        w_entropy(flat, u, 0.0)
    with pytest.raises(ConfigError):
        w_entropy(flat, field_on(flat, np.zeros(64)), 1.0)


def test_normalization_is_checked(flat):
    heavy = field_on(flat, np.full(64, 2.0 / LENGTH))
    with pytest.raises(NormalizationError):
        check_normalization(flat, heavy)
    with pytest.raises(NormalizationError):
        w_entropy(flat, heavy, 1.0, strict=True)
    assert check_normalization(flat, field_on(flat, np.full(64, 1.0 / LENGTH))) == pytest.approx(1.0)


def test_terminal_tau_is_remaining_lifetime():
    assert tau_terminal(make_shrinking_sphere(2, 1.0, 0.25, 32)) == pytest.approx(0.25)
    assert tau_terminal(make_shrinking_sphere(3, 1.0, 0.1, 32)) == pytest.approx(0.15)
    assert tau_terminal(make_torus(1, [1.0], [32])) == 0.0


def test_constant_density_on_torus():
    traj = make_torus(1, [LENGTH], [64], final_time=0.1)
    hist = solve(traj, TerminalSpec(kind="constant", normalize=True), 128)
    trace = monotonicity_check(traj, hist, tau_terminal=1.0)
    assert trace.violations == []
    assert trace.derivative[0] is None and trace.derivative[-1] is None
    for d, tau in zip(trace.derivative[1:-1], trace.taus[1:-1]):
        assert d == pytest.approx(1.0 / (2.0 * tau), rel=1e-6)
    assert max_residual(trace) < 1e-6
    assert min_derivative(trace) > 0
    assert trace.emulation == TORUS_EMULATION


def test_shrinking_sphere_soliton():
    """
    Büzülen küre, sönüm anında r0² = 2(n-1)T olan gradyan solitonudur. Pencere
    sönümden önce (T = 0.25 < 0.5) kesildiği için τ son anda kalan ömre eşitlenir:
    tau_terminal = r(T)²/(2(n-1)) = 0.25; böylece τ(t) her an kalan ömürdür.
    """
    traj = make_shrinking_sphere(2, 1.0, 0.25, 64, time_samples=65)
    hist = solve(traj, TerminalSpec(kind="constant", normalize=True), 64)
    tau_T = tau_terminal(traj)
    trace = monotonicity_check(traj, hist, tau_terminal=tau_T, strict=True)
    assert max(trace.entropy) - min(trace.entropy) < 1e-6
    assert max(trace.production) < 1e-8
    assert trace.emulation is None
    for t, tau in zip(trace.times, trace.taus):
        density = entropy_production_density(snapshot_at(traj, t), hist.field(hist.index_of(t)), tau)
        assert density.max_abs() < 1e-8


def test_gaussian_pair_is_monotone():
    traj = make_torus(1, [LENGTH], [256], final_time=0.2)
    spec = TerminalSpec(kind="gaussian-pair", centers=[2.0, 4.0], variances=[0.1, 0.2],
                        weights=[0.5, 0.5], normalize=True)
    hist = solve(traj, spec, 64)
    trace = monotonicity_check(traj, hist, tau_terminal=0.05)
    assert trace.violations == []
    assert all(p > 0 for p in trace.production)
    assert np.all(np.diff(trace.entropy) > 0)


def test_terminal_sample_is_skipped_without_offset():
    traj = make_torus(1, [LENGTH], [64], final_time=0.1)
    hist = solve(traj, TerminalSpec(kind="constant", normalize=True), 16)
    trace = monotonicity_check(traj, hist)
    assert len(trace.times) == 16
    assert min(trace.taus) > 0


def test_strict_mode_rejects_unnormalized_data():
    traj = make_torus(1, [LENGTH], [64], final_time=0.1)
    hist = solve(traj, TerminalSpec(kind="constant", value=1.0), 16)
    with pytest.raises(NormalizationError):
        monotonicity_check(traj, hist, tau_terminal=1.0, strict=True)
    with pytest.raises(ConfigError):
        monotonicity_check(traj, hist, tau_terminal=-1.0)
