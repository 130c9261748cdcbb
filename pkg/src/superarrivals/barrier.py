"""Rectangular barrier with an optional linear switch-off ramp.

The height law is: full height up to t_p, falling linearly to zero over
[t_p, t_p + epsilon], zero afterwards.  Static barriers keep their height
forever.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from .errors import ConfigError, UnderResolvedBarrierWarning

if TYPE_CHECKING:
    from .model import Grid

STATIC = "static"
LINEAR_RAMP = "linear_ramp"
_MODES = (STATIC, LINEAR_RAMP)


@dataclass(frozen=True)
class BarrierSchedule:
    """Barrier geometry plus its time dependence.

    center/width fix the support [center - width/2, center + width/2];
    height0 is the initial (and, for static mode, permanent) height.
    """

    center: float
    width: float
    height0: float
    mode: str = STATIC
    t_p: float = 0.0
    epsilon: float = 0.0

    def __post_init__(self):
        if self.width <= 0:
            raise ConfigError(f"barrier requires width > 0; got {self.width}")
        if self.height0 < 0:
            raise ConfigError(f"barrier requires height0 >= 0; got {self.height0}")
        if self.mode not in _MODES:
            raise ConfigError(f"barrier mode must be one of {_MODES}; got {self.mode!r}")
        if self.mode == LINEAR_RAMP:
            if self.t_p <= 0:
                raise ConfigError(f"ramp requires t_p > 0; got {self.t_p}")
            if self.epsilon <= 0:
                raise ConfigError(f"ramp requires epsilon > 0; got {self.epsilon}")

    @property
    def left_edge(self) -> float:
        return self.center - self.width / 2.0

    @property
    def right_edge(self) -> float:
        return self.center + self.width / 2.0


def static_barrier(center: float, width: float, height0: float) -> BarrierSchedule:
    return BarrierSchedule(center=center, width=width, height0=height0)

def ramped_barrier(
    center: float, width: float, height0: float, t_p: float, epsilon: float
) -> BarrierSchedule:
    return BarrierSchedule(
        center=center, width=width, height0=height0,
        mode=LINEAR_RAMP, t_p=t_p, epsilon=epsilon,
    )


def height_at(schedule: BarrierSchedule, t: float) -> float:
    """Barrier height at time t (continuous, non-increasing for ramps)."""
    if schedule.mode == STATIC:
        return schedule.height0
    if t <= schedule.t_p:
        return schedule.height0
    if t >= schedule.t_p + schedule.epsilon:
        return 0.0
    return schedule.height0 * (1.0 - (t - schedule.t_p) / schedule.epsilon)


def support_slice(schedule: BarrierSchedule, grid: Grid) -> slice:
    """Index slice of grid nodes inside the closed barrier support."""
    x = grid.x
    inside = np.flatnonzero(np.abs(x - schedule.center) <= schedule.width / 2.0 + 1e-12)
    if inside.size == 0:
        return slice(0, 0)
    return slice(int(inside[0]), int(inside[-1]) + 1)


def potential_on_grid(
    schedule: BarrierSchedule,
    grid: Grid,
    t: float,
    edge_weight: float = 0.5,
) -> np.ndarray:
    """Sample V(x, t) on the grid nodes.

    Nodes with |x - center| <= width/2 (closed interval) carry the current
    height; the two edge nodes are scaled by edge_weight.  The default 0.5
    (trapezoidal sampling) makes the discrete barrier scatter like the
    nominal-width continuum barrier to second order in dx; edge_weight=1.0
    gives the plain closed-interval top hat, whose effective width is
    biased by one cell.
    """
    if schedule.width < 3.0 * grid.dx:
        warnings.warn(
            f"barrier width {schedule.width:.3e} < 3*dx ({3.0 * grid.dx:.3e}); "
            f"under-resolved",
            UnderResolvedBarrierWarning,
            stacklevel=2,
        )
    v = np.zeros(grid.n_points)
    sl = support_slice(schedule, grid)
    if sl.stop > sl.start:
        h = height_at(schedule, t)
        v[sl] = h
        v[sl.start] *= edge_weight
        v[sl.stop - 1] *= edge_weight
    return v
