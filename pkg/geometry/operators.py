"""Anlık görüntü üzerinde diferansiyel operatörler, uzaklık ve integral.

Küre arka uçlarında alanlar dönel simetriktir (yalnız θ'ya bağlı). Çatı
e₁ = e^{-φ}∂_θ radyal yön, e_k ise enine küreye teğet yönlerdir.
"""

from typing import List, Sequence, Union
import logging
import math

import numpy as np
from scipy import sparse
from scipy.special import gamma

from exceptions import GeometryError, GridMismatchError, UnsupportedOperationError
from geometry.fields import FrameTensorField, ScalarField
from geometry.snapshot import BackendKind, GeometrySnapshot
from geometry.stencils import combine_masks, erode, first_difference, second_difference

logger = logging.getLogger(__name__)

Node = Union[int, Sequence[int], str]
POLES = ("north", "south")


def _check_grid(s: GeometrySnapshot, field) -> None:
    if field.grid != s.grid:
        raise GridMismatchError(
            f"Alan ızgarası {field.grid.describe()} ile geometri ızgarası {s.grid.describe()} farklı"
        )


def unit_sphere_area(n: int) -> float:
    """S^{n-1}'in alanı; Sⁿ üzerindeki dönel simetrik integrallerin katsayısı."""
    return 2.0 * math.pi ** (n / 2.0) / gamma(n / 2.0)


def _laplacian_values(s: GeometrySnapshot, u: np.ndarray) -> np.ndarray:
    grid = s.grid
    if s.is_torus:
        return sum(second_difference(u, grid, axis) for axis in range(grid.ndim))
    n = s.dimension
    u_t = first_difference(u, grid)
    u_tt = second_difference(u, grid)
    drift = (n - 1) / np.tan(s.theta) + (n - 2) * s.phi_theta
    return np.exp(-2.0 * s.conformal_factor) * (u_tt + drift * u_t)


def laplace_beltrami(s: GeometrySnapshot, field: ScalarField) -> ScalarField:
    _check_grid(s, field)
    return ScalarField(_laplacian_values(s, field.values), s.grid, s.time,
                       mask=erode(field.mask, s.grid))


def _gradient_values(s: GeometrySnapshot, u: np.ndarray) -> List[np.ndarray]:
    if s.is_torus:
        return [first_difference(u, s.grid, axis) for axis in range(s.grid.ndim)]
    return [np.exp(-s.conformal_factor) * first_difference(u, s.grid)]


def gradient_components(s: GeometrySnapshot, field: ScalarField) -> List[np.ndarray]:
    """du'nun ortonormal çatı bileşenleri (küre arka uçlarında yalnız radyal)."""
    _check_grid(s, field)
    return _gradient_values(s, field.values)


def gradient_sq(s: GeometrySnapshot, field: ScalarField) -> ScalarField:
    comps = gradient_components(s, field)
    return ScalarField(sum(c ** 2 for c in comps), s.grid, s.time,
                       mask=erode(field.mask, s.grid))


def inner_gradients(s: GeometrySnapshot, a: ScalarField, b: ScalarField) -> ScalarField:
    ga, gb = gradient_components(s, a), gradient_components(s, b)
    mask = combine_masks(erode(a.mask, s.grid), erode(b.mask, s.grid))
    return ScalarField(sum(x * y for x, y in zip(ga, gb)), s.grid, s.time, mask=mask)


def _sphere_anisotropy(s: GeometrySnapshot, u: np.ndarray) -> np.ndarray:
    # (h11 - h22)/a² = e^{-4φ}[(1/sinθ)∂_θ(u_θ/sinθ) - 2(φ_θ/sinθ)(u_θ/sinθ)]
    sin = np.sin(s.theta)
    w = first_difference(u, s.grid) / sin
    return np.exp(-4.0 * s.conformal_factor) * (
        first_difference(w, s.grid) / sin - 2.0 * (s.phi_theta / sin) * w
    )


def hessian_frame(s: GeometrySnapshot, field: ScalarField) -> FrameTensorField:
    _check_grid(s, field)
    u, grid = field.values, s.grid
    if s.backend == BackendKind.TORUS_1D:
        return FrameTensorField(h11=second_difference(u, grid), grid=grid, time=s.time,
                                mask=erode(field.mask, grid))
    if s.backend == BackendKind.TORUS_2D:
        return FrameTensorField(
            h11=second_difference(u, grid, 0),
            h22=second_difference(u, grid, 1),
            h12=first_difference(first_difference(u, grid, 0), grid, 1),
            grid=grid, time=s.time, mask=erode(field.mask, grid),
        )
    u_t = first_difference(u, grid)
    u_tt = second_difference(u, grid)
    weight = np.exp(-2.0 * s.conformal_factor)
    return FrameTensorField(
        h11=weight * (u_tt - s.phi_theta * u_t),
        h22=weight * (1.0 / np.tan(s.theta) + s.phi_theta) * u_t,
        grid=grid,
        time=s.time,
        transverse=s.dimension - 1,
        anisotropy=_sphere_anisotropy(s, u),
        mask=erode(field.mask, grid, depth=2),
    )


def outer_gradient(s: GeometrySnapshot, comps: Sequence[np.ndarray], mask=None) -> FrameTensorField:
    """X ⊗ X; X çatı bileşenleriyle verilir."""
    grid = s.grid
    if s.backend == BackendKind.TORUS_1D:
        return FrameTensorField(h11=comps[0] ** 2, grid=grid, time=s.time, mask=mask)
    if s.backend == BackendKind.TORUS_2D:
        return FrameTensorField(h11=comps[0] ** 2, h22=comps[1] ** 2, h12=comps[0] * comps[1],
                                grid=grid, time=s.time, mask=mask)
    a_sq = np.exp(2.0 * s.conformal_factor) * np.sin(s.theta) ** 2
    return FrameTensorField(h11=comps[0] ** 2, h22=np.zeros(grid.shape), grid=grid, time=s.time,
                            transverse=s.dimension - 1, anisotropy=comps[0] ** 2 / a_sq, mask=mask)


def metric_frame(s: GeometrySnapshot) -> FrameTensorField:
    """g'nin çatı bileşenleri (birim matris)."""
    ones, zeros = np.ones(s.grid.shape), np.zeros(s.grid.shape)
    if s.backend == BackendKind.TORUS_1D:
        return FrameTensorField(h11=ones, grid=s.grid, time=s.time)
    if s.backend == BackendKind.TORUS_2D:
        return FrameTensorField(h11=ones, h22=ones, h12=zeros, grid=s.grid, time=s.time)
    return FrameTensorField(h11=ones, h22=ones, grid=s.grid, time=s.time,
                            transverse=s.dimension - 1, anisotropy=zeros)


def rough_laplacian(s: GeometrySnapshot, tensor: FrameTensorField) -> FrameTensorField:
    """
    Simetrik 2-tensörlerde kaba Laplasyen ΔT = tr ∇²T.

    Torusta bileşen bazında. Dönel simetrik metrikte T = B g + a²E e₁⊗e₁ ayrışımıyla
    (ΔT)₁₁ = ΔB + a²E'' + (n+3)aa'E' + 2a'²E + 2aa''E ve (ΔT)ₖₖ = ΔB + 2a'²E;
    burada ' = d/dρ = e^{-φ}∂_θ. Bütün terimler kutuplarda düzenlidir.
    """
    _check_grid(s, tensor)
    grid = s.grid
    if s.is_torus:
        return tensor.map(lambda c: _laplacian_values(s, c), keep_anisotropy=False,
                          mask=erode(tensor.mask, grid))
    n = s.dimension
    sin, cos = np.sin(s.theta), np.cos(s.theta)
    E = tensor.anisotropy
    if E is None:
        logger.warning("Anizotropi verilmedi; kutup yakınında doğruluk düşer")
        a_sq = np.exp(2.0 * s.conformal_factor) * sin ** 2
        E = (tensor.h11 - tensor.h22) / a_sq
    B = tensor.h22
    lap_B = _laplacian_values(s, B)
    phi_t, phi_tt = s.phi_theta, s.phi_theta_theta
    a_prime = phi_t * sin + cos
    a_a_second = sin * (phi_tt * sin + phi_t * cos - sin)
    E_t = first_difference(E, grid)
    E_tt = second_difference(E, grid)
    radial = (sin ** 2 * (E_tt - phi_t * E_t) + (n + 3) * sin * a_prime * E_t
              + 2.0 * a_prime ** 2 * E + 2.0 * a_a_second * E)
    transverse = 2.0 * a_prime ** 2 * E
    return FrameTensorField(h11=lap_B + radial, h22=lap_B + transverse, grid=grid, time=s.time,
                            transverse=tensor.transverse, mask=erode(tensor.mask, grid))


def covariant_derivative_along(s: GeometrySnapshot, tensor: FrameTensorField,
                               direction: Sequence[np.ndarray]) -> FrameTensorField:
    """∇_X T; X çatı bileşenleriyle verilen bir gradyan alanı."""
    _check_grid(s, tensor)
    grid = s.grid
    if s.is_torus:
        def along(c):
            return sum(x * d for x, d in zip(direction, _gradient_values(s, c)))
        return tensor.map(along, keep_anisotropy=False, mask=erode(tensor.mask, grid))
    radial = direction[0]
    return tensor.map(lambda c: radial * _gradient_values(s, c)[0], keep_anisotropy=False,
                      mask=erode(tensor.mask, grid))


def _sine_power_integral(m: int, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """∫_a^b sin^m θ dθ, indirgeme formülüyle kesin."""
    if m == 0:
        return b - a
    if m == 1:
        return np.cos(a) - np.cos(b)
    boundary = (np.sin(a) ** (m - 1) * np.cos(a) - np.sin(b) ** (m - 1) * np.cos(b)) / m
    return boundary + (m - 1) / m * _sine_power_integral(m - 2, a, b)


def volume_density(s: GeometrySnapshot) -> np.ndarray:
    """
    Koordinat hacmi başına dg yoğunluğu.

    Küre arka uçlarında sin^{n-1}θ hücre üzerinde kesin ortalanır; akı operatörünün
    kutup hücreleri ancak bu ölçüyle Δ'ya tutarlıdır.
    """
    if s.is_torus:
        return np.ones(s.grid.shape)
    n = s.dimension
    h = s.grid.spacing[0]
    theta = s.theta
    cell_mean = _sine_power_integral(n - 1, theta - 0.5 * h, theta + 0.5 * h) / h
    return unit_sphere_area(n) * np.exp(n * s.conformal_factor) * cell_mean


def cell_volume(s: GeometrySnapshot) -> float:
    return float(np.prod(s.grid.spacing))


def integrate(s: GeometrySnapshot, field: ScalarField) -> float:
    """∫ field dg; küre arka uçlarında hücre ölçüsü kesindir."""
    _check_grid(s, field)
    return float(np.sum(field.values * volume_density(s)) * cell_volume(s))


def _periodic_second_difference(n: int, h: float) -> sparse.csr_matrix:
    main = -2.0 * np.ones(n)
    off = np.ones(n - 1)
    mat = sparse.diags([off, main, off], [-1, 0, 1], shape=(n, n), format="lil")
    mat[0, n - 1] = 1.0
    mat[n - 1, 0] = 1.0
    return mat.tocsr() / h ** 2


def flux_operator(s: GeometrySnapshot) -> sparse.csr_matrix:
    """
    ρΔ operatörünün korunumlu (akı) biçimi: (D u)_j ≈ ρ_j (Δu)_j.

    Sütun toplamları sıfırdır; böylece Σ_j (D u)_j hücre hacmiyle çarpıldığında
    tam olarak sıfır verir ve kütle yuvarlama hatasına kadar korunur.
    """
    grid = s.grid
    if s.backend == BackendKind.TORUS_1D:
        return _periodic_second_difference(grid.shape[0], grid.spacing[0])
    if s.backend == BackendKind.TORUS_2D:
        lx = _periodic_second_difference(grid.shape[0], grid.spacing[0])
        ly = _periodic_second_difference(grid.shape[1], grid.spacing[1])
        return (sparse.kron(lx, sparse.identity(grid.shape[1]))
                + sparse.kron(sparse.identity(grid.shape[0]), ly)).tocsr()
    n, N, h = s.dimension, grid.shape[0], grid.spacing[0]
    phi = s.conformal_factor
    faces = (np.arange(1, N)) * h
    phi_faces = 0.5 * (phi[:-1] + phi[1:])
    c = unit_sphere_area(n) * np.exp((n - 2) * phi_faces) * np.sin(faces) ** (n - 1) / h ** 2
    lower = np.concatenate([[0.0], c])
    upper = np.concatenate([c, [0.0]])
    main = -(lower + upper)
    return sparse.diags([c, main, c], [-1, 0, 1], shape=(N, N), format="csr")


def _node_coordinates(s: GeometrySnapshot, x0: Node) -> np.ndarray:
    grid = s.grid
    if isinstance(x0, str):
        raise UnsupportedOperationError(f"Torus üzerinde kutup etiketi geçersiz: {x0}")
    index = np.unravel_index(int(x0), grid.shape) if np.isscalar(x0) else tuple(int(i) for i in x0)
    if len(index) != grid.ndim or any(not 0 <= i < n for i, n in zip(index, grid.shape)):
        raise GeometryError(f"Geçersiz düğüm: {x0}")
    return np.array([grid.axis(a)[i] for a, i in enumerate(index)])


def _rotsym_pole_distance(s: GeometrySnapshot, north: bool) -> np.ndarray:
    phi = s.phi if north else s.phi[::-1]
    h = s.grid.spacing[0]
    # kutuptaki φ, çift fonksiyonun ikinci mertebe dış değerlemesi
    phi_pole = phi[0] - (phi[1] - phi[0]) / 8.0
    weights = np.exp(phi)
    first = 0.25 * h * (math.exp(phi_pole) + weights[0])
    steps = 0.5 * h * (weights[:-1] + weights[1:])
    dist = first + np.concatenate([[0.0], np.cumsum(steps)])
    return dist if north else dist[::-1]


def geodesic_distance(s: GeometrySnapshot, x0: Node) -> ScalarField:
    """
    x0'dan düğümlere jeodezik uzaklık.

    Küre arka uçlarında x0 "north"/"south" kutup etiketidir; büzülen kürede bir
    tamsayı düğüm, o enlem çemberine uzaklığı r·|θ - θ_j| verir.

    Raises:
        UnsupportedOperationError: dönel simetrik yüzeyde kutup dışı x0
    """
    grid = s.grid
    if s.is_torus:
        x = _node_coordinates(s, x0)
        total = np.zeros(grid.shape)
        for axis, coords in enumerate(grid.mesh()):
            length = grid.lengths[axis]
            d = np.mod(np.abs(coords - x[axis]), length)
            total += np.minimum(d, length - d) ** 2
        return ScalarField(np.sqrt(total), grid, s.time)
    theta = s.theta
    if isinstance(x0, str) and x0 not in POLES:
        raise GeometryError(f"Geçersiz kutup etiketi: {x0}")
    if s.backend == BackendKind.SHRINKING_SPHERE:
        if x0 == "north":
            angle = theta
        elif x0 == "south":
            angle = math.pi - theta
        else:
            j = int(x0)
            if not 0 <= j < grid.shape[0]:
                raise GeometryError(f"Geçersiz düğüm: {x0}")
            angle = np.abs(theta - theta[j])
        return ScalarField(s.radius * angle, grid, s.time)
    if not isinstance(x0, str):
        raise UnsupportedOperationError(
            "Dönel simetrik yüzeyde yalnız kutuptan uzaklık destekleniyor"
        )
    return ScalarField(_rotsym_pole_distance(s, x0 == "north"), grid, s.time)
