from dataclasses import dataclass
from typing import Tuple
import math

import numpy as np

from exceptions import GeometryError

MIN_GRID_SIZE = 16


class GridKind:
    PERIODIC = "periodic"
    COLATITUDE = "colatitude"


@dataclass(frozen=True)
class Grid:
    """
    Düzgün düğüm ızgarası.

    Periyodik ızgarada düğümler x_j = j*h (h = L/N); kolatitüd ızgarasında
    yarım kaydırılmış θ_j = (j + 1/2)h (h = π/N), böylece hiçbir düğüm kutupta değildir.
    """

    kind: str
    shape: Tuple[int, ...]
    lengths: Tuple[float, ...]

    def __post_init__(self):
        if self.kind not in (GridKind.PERIODIC, GridKind.COLATITUDE):
            raise GeometryError(f"Bilinmeyen ızgara türü: {self.kind}")
        if len(self.shape) != len(self.lengths) or not self.shape:
            raise GeometryError("Izgara boyutları ile uzunluklar uyuşmuyor")
        if self.kind == GridKind.COLATITUDE and len(self.shape) != 1:
            raise GeometryError("Kolatitüd ızgarası tek boyutludur")
        for size in self.shape:
            if int(size) != size or size < MIN_GRID_SIZE:
                raise GeometryError(
                    f"Izgara boyutu en az {MIN_GRID_SIZE} olmalı, verilen: {size}"
                )
        for length in self.lengths:
            if not math.isfinite(length) or length <= 0:
                raise GeometryError(f"Kenar uzunluğu pozitif ve sonlu olmalı, verilen: {length}")

    @classmethod
    def periodic(cls, sizes, lengths) -> "Grid":
        return cls(GridKind.PERIODIC, tuple(int(n) for n in sizes), tuple(float(x) for x in lengths))

    @classmethod
    def colatitude(cls, size: int) -> "Grid":
        return cls(GridKind.COLATITUDE, (int(size),), (math.pi,))

    @property
    def ndim(self) -> int:
        return len(self.shape)

    @property
    def size(self) -> int:
        return int(np.prod(self.shape))

    @property
    def spacing(self) -> Tuple[float, ...]:
        return tuple(length / n for length, n in zip(self.lengths, self.shape))

    def axis(self, i: int) -> np.ndarray:
        n, h = self.shape[i], self.spacing[i]
        offset = 0.5 if self.kind == GridKind.COLATITUDE else 0.0
        return (np.arange(n) + offset) * h

    def mesh(self) -> Tuple[np.ndarray, ...]:
        return tuple(np.meshgrid(*[self.axis(i) for i in range(self.ndim)], indexing="ij"))

    def refined(self, factor: int = 2) -> "Grid":
        return Grid(self.kind, tuple(n * factor for n in self.shape), self.lengths)

    def describe(self) -> str:
        return f"{self.kind}{list(self.shape)}"
