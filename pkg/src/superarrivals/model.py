"""Units, grid, packet and experiment configuration types.

Everything here is an immutable value object; runs share them freely
across worker processes.  Units are fixed to hbar = 1, m = 1/2, so the
evolution equation is  i dpsi/dt = -d2psi/dx2 + V(x,t) psi  and a packet
with carrier momentum p0 moves at group velocity 2*p0.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace

import numpy as np

from .barrier import BarrierSchedule, LINEAR_RAMP
from .errors import ConfigError, GridResolutionError, SpreadingWarning

HBAR = 1.0
MASS = 0.5


@dataclass(frozen=True)
class UnitSystem:
    """Fixed natural units: hbar = 1 and m = 1/2."""

    hbar: float = HBAR
    mass: float = MASS

    def __post_init__(self):
        if self.hbar != HBAR or self.mass != MASS:
            raise ConfigError(
                f"unit system is fixed to hbar=1, mass=1/2; got "
                f"hbar={self.hbar}, mass={self.mass}"
            )


UNITS = UnitSystem()


@dataclass(frozen=True)
class Grid:
    """Uniform spatial grid on [x_min, x_max] with a fixed time step."""

    x_min: float
    x_max: float
    n_points: int
    dt: float

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / (self.n_points - 1)

    @property
    def x(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n_points)

    def node_of(self, pos: float) -> int:
        """Index of the grid node nearest to pos."""
        return int(round((pos - self.x_min) / self.dx))


def build_grid(x_min: float, x_max: float, n_points: int, dt: float) -> Grid:
    """Construct a grid, rejecting degenerate geometry.

    The carrier-wavelength resolution check (dx <= lambda/40) needs a
    packet and is enforced in validate_config once one is attached.
    """
    if not x_min < x_max:
        raise ConfigError(f"grid requires x_min < x_max; got [{x_min}, {x_max}]")
    if n_points < 2:
        raise ConfigError(f"grid requires n_points >= 2; got {n_points}")
    if dt <= 0:
        raise ConfigError(f"grid requires dt > 0; got {dt}")
    return Grid(x_min=x_min, x_max=x_max, n_points=n_points, dt=dt)


@dataclass(frozen=True)
class PacketSpec:
    """Gaussian packet: center x0, width sigma0, carrier momentum p0 (> 0)."""

    x0: float
    sigma0: float
    p0: float

    def __post_init__(self):
        if self.sigma0 <= 0:
            raise ConfigError(f"packet requires sigma0 > 0; got {self.sigma0}")
        if self.p0 <= 0:
            raise ConfigError(f"packet requires p0 > 0; got {self.p0}")

    @property
    def wavelength(self) -> float:
        return 2.0 * math.pi / self.p0


@dataclass(frozen=True)
class DerivedQuantities:
    """Pure functions of the packet: mean energy and group velocity."""

    energy_E: float
    v_g: float


def derived_quantities(packet: PacketSpec) -> DerivedQuantities:
    """Mean energy p0^2 + 1/(4 sigma0^2) and group velocity 2 p0."""
    return DerivedQuantities(
        energy_E=packet.p0**2 + 0.25 / packet.sigma0**2,
        v_g=2.0 * packet.p0,
    )


def momentum_width(packet: PacketSpec) -> float:
    """Momentum-space standard deviation 1/(2 sigma0) (minimum uncertainty)."""
    return 0.5 / packet.sigma0


@dataclass(frozen=True)
class ExperimentConfig:
    """Full description of one run pair (geometry, packet, barrier, sampling).

    detector_x is the right edge x' of the reflection-counting region;
    sample_stride is the observable sampling interval in steps.  The
    classical-run fields (n_particles, w_s, sigma_p, rng_seed) are unused
    by the quantum solver.
    """

    grid: Grid
    packet: PacketSpec
    barrier: BarrierSchedule
    detector_x: float
    t_end: float
    sample_stride: int = 1
    rng_seed: int = 12345
    n_particles: int = 100_000
    w_s: float = 1e-3
    sigma_p: float | None = None
    delta: float = 1e-4
    tail_fraction: float = 0.2

    def with_barrier_mode(self, mode: str) -> "ExperimentConfig":
        return replace(self, barrier=replace(self.barrier, mode=mode))

    @property
    def n_steps(self) -> int:
        return int(round(self.t_end / self.grid.dt))

    def classical_sigma_p(self) -> float:
        return self.sigma_p if self.sigma_p is not None else momentum_width(self.packet)


def validate_config(config: ExperimentConfig) -> list[str]:
    """Check every config invariant; raise ConfigError naming the violated
    inequality, and return a list of advisory warnings (also emitted via
    the warnings machinery).
    """
    g, pk, b = config.grid, config.packet, config.barrier
    build_grid(g.x_min, g.x_max, g.n_points, g.dt)  # re-run geometry checks

    lam = pk.wavelength
    if g.dx > lam / 40.0 + 1e-15:
        raise GridResolutionError(
            f"dx <= lambda/40 violated: dx={g.dx:.6e} > {lam / 40.0:.6e} "
            f"(lambda=2*pi/p0={lam:.6e})"
        )

    left_edge = b.center - b.width / 2.0
    if not pk.x0 + 3.0 * pk.sigma0 < left_edge:
        raise ConfigError(
            f"x0 + 3*sigma0 < barrier left edge violated: "
            f"{pk.x0 + 3.0 * pk.sigma0:.6e} >= {left_edge:.6e}"
        )

    det_limit = pk.x0 - 3.0 * pk.sigma0 / math.sqrt(2.0)
    if not config.detector_x <= det_limit:
        raise ConfigError(
            f"detector_x <= x0 - 3*sigma0/sqrt(2) violated: "
            f"{config.detector_x:.6e} > {det_limit:.6e}"
        )
    if not g.x_min < config.detector_x < g.x_max:
        raise ConfigError(
            f"detector_x must lie inside the box: {config.detector_x} "
            f"not in ({g.x_min}, {g.x_max})"
        )

    if config.t_end <= 0:
        raise ConfigError(f"t_end > 0 violated: {config.t_end}")
    if b.mode == LINEAR_RAMP and not config.t_end > b.t_p + b.epsilon:
        raise ConfigError(
            f"t_end > t_p + epsilon violated: {config.t_end:.6e} <= "
            f"{b.t_p + b.epsilon:.6e}"
        )
    if config.sample_stride < 1:
        raise ConfigError(f"sample_stride >= 1 violated: {config.sample_stride}")
    if config.n_steps < 1:
        raise ConfigError(f"t_end shorter than one time step: {config.t_end} < {g.dt}")
    if config.n_particles < 1:
        raise ConfigError(f"n_particles >= 1 violated: {config.n_particles}")
    if config.w_s <= 0:
        raise ConfigError(f"w_s > 0 violated: {config.w_s}")
    if config.delta <= 0:
        raise ConfigError(f"delta > 0 violated: {config.delta}")
    if not 0 < config.tail_fraction <= 1:
        raise ConfigError(f"tail_fraction in (0, 1] violated: {config.tail_fraction}")

    notes: list[str] = []
    # free-spreading diagnostic: sigma(t_end)/sigma0 for the free packet
    ratio = math.sqrt(1.0 + (config.t_end / pk.sigma0**2) ** 2)
    if ratio > 5.0:
        msg = (
            f"packet spreads {ratio:.2f}x over the run; "
            f"quasi-particle interpretation degraded"
        )
        warnings.warn(msg, SpreadingWarning, stacklevel=2)
        notes.append(msg)
    if b.width < 3.0 * g.dx:
        notes.append(
            f"barrier width {b.width:.3e} spans fewer than 3 cells (dx={g.dx:.3e})"
        )
    return notes
