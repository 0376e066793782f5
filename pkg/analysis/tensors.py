"""Çatı tensörleri üzerinde eğrilik terimleri.

Bütün arka uçlarda eğrilik noktasal izotroptur (Ric = (R/n) g, kesit eğriliği
κ = R/(n(n-1))). Hamilton uzlaşımıyla R_kijl h_kl = κ(h_ij - tr h · g_ij) olur.
"""

from typing import Sequence

import numpy as np

from geometry.curvature import sectional_curvature
from geometry.fields import FrameTensorField
from geometry.operators import gradient_components, metric_frame
from geometry.snapshot import BackendKind, GeometrySnapshot
from geometry.stencils import combine_masks


def symmetric_outer(s: GeometrySnapshot, a: Sequence[np.ndarray], b: Sequence[np.ndarray],
                    mask=None) -> FrameTensorField:
    """a⊗b + b⊗a; dönel simetrik arka uçlarda yalnız radyal bileşenler."""
    grid = s.grid
    if s.backend == BackendKind.TORUS_1D:
        return FrameTensorField(h11=2.0 * a[0] * b[0], grid=grid, time=s.time, mask=mask)
    if s.backend == BackendKind.TORUS_2D:
        return FrameTensorField(h11=2.0 * a[0] * b[0], h22=2.0 * a[1] * b[1],
                                h12=a[0] * b[1] + a[1] * b[0], grid=grid, time=s.time, mask=mask)
    a_sq = np.exp(2.0 * s.conformal_factor) * np.sin(s.theta) ** 2
    radial = 2.0 * a[0] * b[0]
    return FrameTensorField(h11=radial, h22=np.zeros(grid.shape), grid=grid, time=s.time,
                            transverse=s.dimension - 1, anisotropy=radial / a_sq, mask=mask)


def riemann_contraction(s: GeometrySnapshot, tensor: FrameTensorField) -> FrameTensorField:
    """R_kijl h_kl = κ(h - tr h · g)."""
    kappa = sectional_curvature(s)
    traceless = tensor.minus(metric_frame(s).scale(tensor.trace()))
    return traceless.scale(kappa)


def curvature_action(s: GeometrySnapshot, tensor: FrameTensorField) -> FrameTensorField:
    """2 R_kijl h_kl + R_il h_jl + R_jl h_il."""
    ricci = s.curvature.ricci
    return riemann_contraction(s, tensor).scale(2.0).plus(ricci.sym_product(tensor).scale(2.0))


def ricci_commutator(s: GeometrySnapshot, tensor: FrameTensorField) -> FrameTensorField:
    """Ric∘T + T∘Ric."""
    return s.curvature.ricci.sym_product(tensor).scale(2.0)


def ricci_gradient_term(s: GeometrySnapshot, grad_u: Sequence[np.ndarray], mask=None) -> FrameTensorField:
    """
    2(∇_iR_jl + ∇_jR_il - ∇_lR_ij)∇_l u.

    Ric = (R/n) g için (2/n)(∇_iR ∇_ju + ∇_jR ∇_iu - ⟨∇R, ∇u⟩ g_ij) olur.
    """
    n = s.dimension
    grad_r = gradient_components(s, s.curvature.scalar)
    dot = sum(x * y for x, y in zip(grad_r, grad_u))
    outer = symmetric_outer(s, grad_r, grad_u, mask=mask)
    return outer.minus(metric_frame(s).scale(dot)).scale(2.0 / n)


def frame_time_derivative(before: FrameTensorField, after: FrameTensorField, dt: float,
                          current: FrameTensorField, s: GeometrySnapshot) -> FrameTensorField:
    """
    Koordinat zaman türevinin çatı bileşenleri: d/dt(T_ab) - (Ric∘T + T∘Ric)_ab.

    Çatı ∂_t e_a = Ric(e_a) ile evrilir; d/dt merkezi farktır.
    """
    def diff(a, b):
        if a is None:
            return None
        return (b - a) / (2.0 * dt)

    mask = combine_masks(before.mask, after.mask, current.mask)
    raw = FrameTensorField(h11=diff(before.h11, after.h11), h22=diff(before.h22, after.h22),
                           h12=diff(before.h12, after.h12), grid=current.grid, time=current.time,
                           transverse=current.transverse, mask=mask)
    return raw.minus(ricci_commutator(s, current))
