from typing import Optional
import logging

import numpy as np

from conjugate_heat.solver import SolutionHistory
from entropy.functional import (
    MASS_TOLERANCE,
    check_normalization,
    entropy_production,
    w_entropy,
)
from exceptions import ConfigError
from geometry.flow import FlowTrajectory, snapshot_at
from geometry.operators import integrate
from geometry.snapshot import BackendKind
from models.report import EntropyTrace

logger = logging.getLogger(__name__)

MIN_SAMPLES = 5

TORUS_EMULATION = (
    "Kompakt olmayan durum periyodik torus üzerinde yoğunlaşmış veriyle taklit edildi"
)


def monotonicity_check(traj: FlowTrajectory, hist: SolutionHistory, tau_terminal: float = 0.0,
                       strict: bool = False, tolerance: float = 1e-6) -> EntropyTrace:
    """
    τ(t) = tau_terminal + (T - t) ile W(t), dW/dt ve üretim integralinin izi.

    dW/dt iç örneklerde merkezi farktır; uçlarda None yazılır. dW/dt < -tolerance
    olan örnekler ihlal olarak işaretlenir. tau_terminal = 0 ise t = T örneği (τ = 0)
    atlanır.

    Raises:
        ConfigError: beşten az örnek
        NormalizationError: strict kipte ∫u dg(T) ≠ 1
    """
    if tau_terminal < 0:
        raise ConfigError(f"tau_terminal negatif olamaz: {tau_terminal}")
    T = traj.final_time
    indices = [k for k in range(hist.step_count + 1) if tau_terminal + T - hist.times[k] > 0]
    if len(indices) < MIN_SAMPLES:
        raise ConfigError(f"Entropi izi için en az {MIN_SAMPLES} zaman örneği gerekir, "
                          f"mevcut: {len(indices)}")
    if strict:
        check_normalization(snapshot_at(traj, T), hist.terminal, MASS_TOLERANCE)

    times, taus, entropy, production, normalization = [], [], [], [], []
    for k in indices:
        t = float(hist.times[k])
        tau = tau_terminal + T - t
        s = snapshot_at(traj, t)
        u = hist.field(k)
        times.append(t)
        taus.append(tau)
        entropy.append(w_entropy(s, u, tau))
        production.append(entropy_production(s, u, tau))
        normalization.append(integrate(s, u))

    dt = hist.time_step
    derivative: list = [None] * len(times)
    residual: list = [None] * len(times)
    violations = []
    for i in range(1, len(times) - 1):
        d = (entropy[i + 1] - entropy[i - 1]) / (2.0 * dt)
        derivative[i] = d
        residual[i] = abs(d - production[i])
        if d < -tolerance:
            violations.append(i)
    if violations:
        logger.warning("W monotonluğu %d örnekte ihlal edildi (ilk t=%.6g)",
                       len(violations), times[violations[0]])
    drift = float(np.max(np.abs(np.asarray(normalization) - normalization[-1])))
    logger.info("Entropi izi: %d örnek, kütle kayması %.3e, en büyük artık %.3e", len(times),
                drift, max(r for r in residual if r is not None))
    return EntropyTrace(
        times=times,
        taus=taus,
        entropy=entropy,
        derivative=derivative,
        production=production,
        residual=residual,
        normalization=normalization,
        normalization_shift=hist.normalization_shift,
        violations=violations,
        emulation=TORUS_EMULATION if traj.backend in BackendKind.TORI else None,
    )


def max_residual(trace: EntropyTrace) -> float:
    return max(r for r in trace.residual if r is not None)


def min_derivative(trace: EntropyTrace) -> Optional[float]:
    values = [d for d in trace.derivative if d is not None]
    return min(values) if values else None
