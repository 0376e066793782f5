from dataclasses import dataclass
import math

import numpy as np

from geometry.operators import Node, geodesic_distance
from geometry.snapshot import GeometrySnapshot

# d(x, x0, t) ≤ r karşılaştırmasındaki yuvarlama payı
MEMBERSHIP_SLACK = 1e-12


class Region:
    def members(self, s: GeometrySnapshot) -> np.ndarray:
        raise NotImplementedError

    def describe(self) -> str:
        raise NotImplementedError


class WholeManifold(Region):
    def members(self, s: GeometrySnapshot) -> np.ndarray:
        return np.ones(s.grid.shape, dtype=bool)

    def describe(self) -> str:
        return "whole"


@dataclass(frozen=True)
class Ball(Region):
    """{x : d(x, x0, t) ≤ r}; üyelik her anlık görüntüde yeniden hesaplanır."""

    x0: Node
    r: float

    def members(self, s: GeometrySnapshot) -> np.ndarray:
        if math.isinf(self.r):
            return np.ones(s.grid.shape, dtype=bool)
        distance = geodesic_distance(s, self.x0).values
        return distance <= self.r * (1.0 + MEMBERSHIP_SLACK)

    def describe(self) -> str:
        return f"ball(x0={self.x0}, r={self.r!r})"
