from dataclasses import dataclass, replace
from typing import Callable, List, Optional, Sequence

import numpy as np

from exceptions import EmptyRegionError, GeometryError, GridMismatchError
from geometry.grid import Grid
from geometry.stencils import combine_masks


def _frozen(values, grid: Grid, name: str) -> np.ndarray:
    arr = np.array(values, dtype=float)
    if arr.shape != grid.shape:
        raise GridMismatchError(
            f"{name} şekli {arr.shape}, ızgara şekli {grid.shape} ile uyuşmuyor"
        )
    arr.setflags(write=False)
    return arr


def _masked(arr: np.ndarray, mask: Optional[np.ndarray]) -> np.ndarray:
    if mask is None:
        return arr
    with np.errstate(invalid="ignore"):
        return np.where(mask, arr, 0.0)


def _frozen_mask(mask, grid: Grid) -> Optional[np.ndarray]:
    if mask is None:
        return None
    m = np.array(mask, dtype=bool)
    if m.shape != grid.shape:
        raise GridMismatchError("Maske şekli ızgara ile uyuşmuyor")
    m.setflags(write=False)
    return m


@dataclass(frozen=True, eq=False)
class ScalarField:
    """
    Düğüm başına gerçel değerler.

    mask verildiyse yalnızca True düğümler geçerlidir; maskeli düğümlerde
    değer 0 olarak saklanır ve hiçbir indirgemeye katılmaz.
    """

    values: np.ndarray
    grid: Grid
    time: float
    mask: Optional[np.ndarray] = None

    def __post_init__(self):
        mask = _frozen_mask(self.mask, self.grid)
        values = _masked(np.asarray(self.values, dtype=float), mask)
        values = _frozen(values, self.grid, "Skaler alan")
        if not np.all(np.isfinite(values)):
            bad = int(np.flatnonzero(~np.isfinite(values))[0])
            raise GeometryError(f"Skaler alan sonlu değil (düğüm {bad}, t={self.time!r})")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "mask", mask)

    @property
    def valid(self) -> np.ndarray:
        if self.mask is None:
            return np.ones(self.grid.shape, dtype=bool)
        return self.mask

    def with_values(self, values, mask: Optional[np.ndarray] = None) -> "ScalarField":
        return ScalarField(values, self.grid, self.time, combine_masks(self.mask, mask))

    def max(self) -> float:
        return float(self.values.ravel()[self.argmax()])

    def min(self) -> float:
        valid = self.valid
        if not valid.any():
            raise EmptyRegionError("Geçerli düğüm yok")
        return float(np.min(self.values[valid]))

    def argmax(self) -> int:
        """En büyük değerin düz indeksi; eşitlikte en küçük indeks."""
        valid = self.valid.ravel()
        if not valid.any():
            raise EmptyRegionError("Geçerli düğüm yok")
        flat = np.where(valid, self.values.ravel(), -np.inf)
        return int(np.argmax(flat))

    def max_abs(self) -> float:
        valid = self.valid
        if not valid.any():
            raise EmptyRegionError("Geçerli düğüm yok")
        return float(np.max(np.abs(self.values[valid])))


@dataclass(frozen=True, eq=False)
class FrameTensorField:
    """
    Düğüm başına ortonormal çatıda simetrik 2-tensör.

    1 boyutlu ızgaralarda yalnız h11 vardır. Dönel simetrik arka uçlarda h22 enine
    bloğun ortak değeridir ve `transverse` katlılığıyla (Sⁿ için n-1) sayılır; h12 yoktur.
    `anisotropy`, (h11 - h22)/a² niceliğinin kutuplarda düzenli biçimidir
    (a = e^φ sin θ) ve kaba Laplasyen bunu kullanır.
    """

    h11: np.ndarray
    grid: Grid
    time: float
    h22: Optional[np.ndarray] = None
    h12: Optional[np.ndarray] = None
    transverse: int = 1
    anisotropy: Optional[np.ndarray] = None
    mask: Optional[np.ndarray] = None

    def __post_init__(self):
        mask = _frozen_mask(self.mask, self.grid)
        object.__setattr__(self, "mask", mask)
        for name in ("h11", "h22", "h12", "anisotropy"):
            value = getattr(self, name)
            if value is None:
                continue
            arr = _frozen(_masked(np.asarray(value, dtype=float), mask), self.grid, name)
            if not np.all(np.isfinite(arr)):
                raise GeometryError(f"Tensör bileşeni {name} sonlu değil (t={self.time!r})")
            object.__setattr__(self, name, arr)
        if self.h12 is not None and self.h22 is None:
            raise GeometryError("h12 yalnızca h22 ile birlikte verilebilir")
        if self.transverse < 1:
            raise GeometryError("Enine katlılık en az 1 olmalı")

    @property
    def valid(self) -> np.ndarray:
        if self.mask is None:
            return np.ones(self.grid.shape, dtype=bool)
        return self.mask

    def components(self) -> List[np.ndarray]:
        return [c for c in (self.h11, self.h22, self.h12) if c is not None]

    def trace(self) -> np.ndarray:
        if self.h22 is None:
            return self.h11.copy()
        return self.h11 + self.transverse * self.h22

    def norm_sq(self) -> np.ndarray:
        """Frobenius normunun karesi."""
        out = self.h11 ** 2
        if self.h22 is not None:
            out = out + self.transverse * self.h22 ** 2
        if self.h12 is not None:
            out = out + 2.0 * self.h12 ** 2
        return out

    def norm(self) -> np.ndarray:
        return np.sqrt(self.norm_sq())

    def _eigen_pair(self):
        if self.h22 is None:
            return self.h11, self.h11
        off = self.h12 if self.h12 is not None else 0.0
        mean = 0.5 * (self.h11 + self.h22)
        radius = np.sqrt((0.5 * (self.h11 - self.h22)) ** 2 + off ** 2)
        return mean + radius, mean - radius

    def max_eigenvalue(self) -> np.ndarray:
        return self._eigen_pair()[0]

    def min_eigenvalue(self) -> np.ndarray:
        return self._eigen_pair()[1]

    def max_abs(self) -> float:
        valid = self.valid
        if not valid.any():
            raise EmptyRegionError("Geçerli düğüm yok")
        return float(max(np.max(np.abs(c[valid])) for c in self.components()))

    def _check_compatible(self, other: "FrameTensorField"):
        if other.grid != self.grid:
            raise GridMismatchError("Tensörler farklı ızgaralarda")
        if (other.h22 is None) != (self.h22 is None) or other.transverse != self.transverse:
            raise GeometryError("Tensör yapıları uyuşmuyor")

    def map(self, fn: Callable[[np.ndarray], np.ndarray], keep_anisotropy: bool = True,
            mask: Optional[np.ndarray] = None) -> "FrameTensorField":
        return replace(
            self,
            h11=fn(self.h11),
            h22=None if self.h22 is None else fn(self.h22),
            h12=None if self.h12 is None else fn(self.h12),
            anisotropy=fn(self.anisotropy) if keep_anisotropy and self.anisotropy is not None else None,
            mask=combine_masks(self.mask, mask),
        )

    def scale(self, factor, mask: Optional[np.ndarray] = None) -> "FrameTensorField":
        return self.map(lambda c: c * factor, mask=mask)

    def abs(self) -> "FrameTensorField":
        return self.map(np.abs, keep_anisotropy=False)

    def _zip(self, other: "FrameTensorField", op) -> "FrameTensorField":
        self._check_compatible(other)

        def pair(a, b):
            if a is None and b is None:
                return None
            a = 0.0 if a is None else a
            b = 0.0 if b is None else b
            return op(a, b)

        aniso = None
        if self.anisotropy is not None and other.anisotropy is not None:
            aniso = op(self.anisotropy, other.anisotropy)
        return FrameTensorField(
            h11=op(self.h11, other.h11),
            h22=pair(self.h22, other.h22),
            h12=pair(self.h12, other.h12),
            grid=self.grid,
            time=self.time,
            transverse=self.transverse,
            anisotropy=aniso,
            mask=combine_masks(self.mask, other.mask),
        )

    def plus(self, other: "FrameTensorField") -> "FrameTensorField":
        return self._zip(other, lambda a, b: a + b)

    def minus(self, other: "FrameTensorField") -> "FrameTensorField":
        return self._zip(other, lambda a, b: a - b)

    def inner(self, other: "FrameTensorField") -> np.ndarray:
        self._check_compatible(other)
        out = self.h11 * other.h11
        if self.h22 is not None:
            out = out + self.transverse * self.h22 * other.h22
        if self.h12 is not None and other.h12 is not None:
            out = out + 2.0 * self.h12 * other.h12
        return out

    def sym_product(self, other: "FrameTensorField") -> "FrameTensorField":
        """(AB + BA)/2, matris çarpımının simetrik kısmı."""
        self._check_compatible(other)
        a12 = self.h12 if self.h12 is not None else 0.0
        b12 = other.h12 if other.h12 is not None else 0.0
        h11 = self.h11 * other.h11 + a12 * b12
        h22 = None if self.h22 is None else self.h22 * other.h22 + a12 * b12
        h12 = None
        if self.h12 is not None or other.h12 is not None:
            h12 = 0.5 * (self.h11 * b12 + a12 * other.h22 + other.h11 * a12 + b12 * self.h22)
        return FrameTensorField(h11=h11, h22=h22, h12=h12, grid=self.grid, time=self.time,
                                transverse=self.transverse,
                                mask=combine_masks(self.mask, other.mask))

    def contract(self, vector: Sequence[np.ndarray]) -> np.ndarray:
        """T(X, X); X'in bileşenleri çatıda verilir (dönel simetride yalnız radyal bileşen)."""
        out = self.h11 * vector[0] ** 2
        if len(vector) > 1:
            out = out + self.h22 * vector[1] ** 2
            if self.h12 is not None:
                out = out + 2.0 * self.h12 * vector[0] * vector[1]
        return out

    @classmethod
    def like(cls, template: "FrameTensorField", h11, h22=None, h12=None,
             anisotropy=None, mask=None) -> "FrameTensorField":
        return cls(h11=h11, h22=h22, h12=h12, grid=template.grid, time=template.time,
                   transverse=template.transverse, anisotropy=anisotropy,
                   mask=combine_masks(template.mask, mask))
