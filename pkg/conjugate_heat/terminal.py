from typing import Tuple
import logging
import math

import numpy as np

from conjugate_heat.oracle import periodized_gaussian
from exceptions import ConfigError, UnsupportedOperationError
from geometry.fields import ScalarField
from geometry.operators import integrate
from geometry.snapshot import BackendKind, GeometrySnapshot
from models.config import TerminalSpec

logger = logging.getLogger(__name__)


def _axis_center(spec: TerminalSpec, axis: int) -> float:
    if not spec.center:
        return 0.0
    return float(spec.center[min(axis, len(spec.center) - 1)])


def _gaussian(spec: TerminalSpec, s: GeometrySnapshot) -> np.ndarray:
    grid = s.grid
    if min(grid.spacing) ** 2 * 4.0 > spec.variance:
        raise ConfigError(
            f"Gauss varyansı {spec.variance} en az 4h² = {4.0 * min(grid.spacing) ** 2:.3e} olmalı"
        )
    values = np.ones(grid.shape)
    for axis, coords in enumerate(grid.mesh()):
        values = values * periodized_gaussian(coords, _axis_center(spec, axis), spec.variance,
                                              grid.lengths[axis])
    return spec.amplitude * values


def _gaussian_pair(spec: TerminalSpec, s: GeometrySnapshot) -> np.ndarray:
    if s.backend != BackendKind.TORUS_1D:
        raise UnsupportedOperationError("gaussian-pair yalnız T¹ üzerinde tanımlı")
    x, length = s.grid.axis(0), s.grid.lengths[0]
    return sum(w * periodized_gaussian(x, c, v, length)
               for c, v, w in zip(spec.centers, spec.variances, spec.weights))


def _cosine_exponential(spec: TerminalSpec, s: GeometrySnapshot) -> np.ndarray:
    # A·exp(Σ_a b_a (cos(2π x_a/L_a) - 1)), T² üzerinde çarpım profili
    grid = s.grid
    exponent = np.zeros(grid.shape)
    for axis, coords in enumerate(grid.mesh()):
        b = spec.steepness[min(axis, len(spec.steepness) - 1)]
        exponent += b * (np.cos(2.0 * math.pi * coords / grid.lengths[axis]) - 1.0)
    return spec.amplitude * np.exp(exponent)


def _zonal_cosine(spec: TerminalSpec, s: GeometrySnapshot) -> np.ndarray:
    if spec.offset <= abs(spec.amplitude):
        raise ConfigError("zonal-cosine için offset > |amplitude| olmalı (pozitiflik)")
    return spec.offset + spec.amplitude * np.cos(s.theta)


def build_terminal(spec: TerminalSpec, s: GeometrySnapshot) -> Tuple[ScalarField, float]:
    """
    t = T anındaki son veriyi kurar.

    Returns:
        (alan, kayma): normalize istenmişse birim kütleye ölçeklenmiş alan ve
        ölçekleme çarpanı λ için W'ye eklenen -log λ bilgisi
    """
    if spec.kind == "constant":
        values = np.full(s.grid.shape, spec.value)
    elif spec.kind == "periodized-gaussian":
        if not s.is_torus:
            raise UnsupportedOperationError("periodized-gaussian yalnız torus üzerinde tanımlı")
        values = _gaussian(spec, s)
    elif spec.kind == "gaussian-pair":
        values = _gaussian_pair(spec, s)
    elif spec.kind == "cosine-exponential":
        if not s.is_torus:
            raise UnsupportedOperationError("cosine-exponential yalnız torus üzerinde tanımlı")
        values = _cosine_exponential(spec, s)
    else:
        if not s.is_sphere:
            raise UnsupportedOperationError("zonal-cosine yalnız küre arka uçlarında tanımlı")
        values = _zonal_cosine(spec, s)
    field = ScalarField(values, s.grid, s.time)
    if not spec.normalize:
        return field, 0.0
    mass = integrate(s, field)
    factor = 1.0 / mass
    logger.info("Son veri birim kütleye ölçeklendi (çarpan %.6g)", factor)
    return ScalarField(values * factor, s.grid, s.time), -math.log(factor)
