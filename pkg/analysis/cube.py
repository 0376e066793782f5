from typing import Dict, Optional, Sequence
import logging
import math

import numpy as np

from exceptions import EmptyRegionError, GeometryError
from geometry.fields import ScalarField
from geometry.flow import FlowTrajectory, snapshot_at
from geometry.operators import Node
from geometry.regions import Ball
from models.report import BoundReport

logger = logging.getLogger(__name__)

TIME_SLACK = 1e-12


def describe_cube(x0: Node, r: float, t0: float, Tprime: float) -> str:
    radius = "inf" if math.isinf(r) else repr(r)
    return f"Q(x0={x0}, r={radius}, t0={t0!r}, T'={Tprime!r})"


def cube_sup(traj: FlowTrajectory, field_over_time: Sequence[ScalarField], x0: Node, r: float,
             t0: float, Tprime: float, quantity: str = "quantity", bound: Optional[float] = None,
             constants: Optional[Dict] = None) -> BoundReport:
    """
    {(x, t) : d(x, x0, t) ≤ r, t0 - T' ≤ t ≤ t0} üzerinde supremum.

    Üyelik her zaman örneğinde o anki metrikle yeniden hesaplanır. Eşit değerlerde
    önce en erken zaman, sonra en küçük düğüm indeksi seçilir.

    Raises:
        GeometryError: küp zamanları [0, T] dışında
        EmptyRegionError: küpte hiç geçerli düğüm yok
    """
    T = traj.final_time
    slack = TIME_SLACK * max(T, 1.0)
    if Tprime < 0 or t0 - Tprime < -slack or t0 > T + slack:
        raise GeometryError(f"Küp zamanları [0, {T!r}] dışında: t0={t0!r}, T'={Tprime!r}")
    ball = Ball(x0, r)
    best, best_node, best_time = -math.inf, -1, None
    for field in sorted(field_over_time, key=lambda f: f.time):
        if not t0 - Tprime - slack <= field.time <= t0 + slack:
            continue
        members = ball.members(snapshot_at(traj, field.time)) & field.valid
        if not members.any():
            continue
        flat = np.where(members.ravel(), field.values.ravel(), -np.inf)
        node = int(np.argmax(flat))
        if flat[node] > best:
            best, best_node, best_time = float(flat[node]), node, field.time
    region = describe_cube(x0, r, t0, Tprime)
    if best_time is None:
        raise EmptyRegionError(f"{region} boş")
    logger.debug("%s üzerinde sup %s = %.6g (düğüm %d, t=%.6g)", region, quantity, best,
                 best_node, best_time)
    return BoundReport(quantity=quantity, region=region, time=t0, supremum=best,
                       argmax_node=best_node, argmax_time=best_time, bound=bound,
                       constants=constants or {})
