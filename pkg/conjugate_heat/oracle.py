"""Çember üzerinde ısı çekirdeği kestirimi (kahin).

Varyansı s olan periyodikleştirilmiş Gauss iki bağımsız biçimde kurulur: görüntü
toplamı Σ_m (2πs)^{-1/2} exp(-(d + mL)²/(2s)) ve Fourier (teta) serisi
(1/L)[1 + 2Σ_k exp(-s(2πk/L)²/2) cos(2πk d/L)]. ∂_τ u = u_xx altında varyans
s(τ) = s₀ + 2τ olur.
"""

import math

import numpy as np


def _images(variance: float, length: float) -> int:
    return int(math.ceil(12.0 * math.sqrt(variance) / length)) + 2


def _offsets(x: np.ndarray, center: float, length: float) -> np.ndarray:
    # d ∈ [-L/2, L/2)
    return np.mod(np.asarray(x, dtype=float) - center + 0.5 * length, length) - 0.5 * length


def periodized_gaussian(x, center: float, variance: float, length: float) -> np.ndarray:
    d = _offsets(x, center, length)
    m = _images(variance, length)
    total = np.zeros_like(d)
    for shift in range(-m, m + 1):
        total += np.exp(-(d + shift * length) ** 2 / (2.0 * variance))
    return total / math.sqrt(2.0 * math.pi * variance)


def periodized_gaussian_xx(x, center: float, variance: float, length: float) -> np.ndarray:
    """Görüntü toplamının ikinci uzay türevi."""
    d = _offsets(x, center, length)
    m = _images(variance, length)
    total = np.zeros_like(d)
    for shift in range(-m, m + 1):
        y = d + shift * length
        total += (y ** 2 / variance ** 2 - 1.0 / variance) * np.exp(-y ** 2 / (2.0 * variance))
    return total / math.sqrt(2.0 * math.pi * variance)


def theta_series_gaussian(x, center: float, variance: float, length: float,
                          cutoff: float = 1e-18) -> np.ndarray:
    d = _offsets(x, center, length)
    total = np.full_like(d, 1.0)
    k = 1
    while True:
        weight = math.exp(-0.5 * variance * (2.0 * math.pi * k / length) ** 2)
        if weight < cutoff:
            break
        total += 2.0 * weight * np.cos(2.0 * math.pi * k * d / length)
        k += 1
    return total / length


def circle_heat_solution(x, tau: float, center: float, variance0: float, length: float) -> np.ndarray:
    """Son verisi varyansı variance0 olan Gauss için τ anındaki tam çözüm."""
    return periodized_gaussian(x, center, variance0 + 2.0 * tau, length)


def circle_heat_time_derivative(x, tau: float, center: float, variance0: float,
                                length: float) -> np.ndarray:
    """u_t = -u_xx (t = T - τ yönünde)."""
    return -periodized_gaussian_xx(x, center, variance0 + 2.0 * tau, length)
