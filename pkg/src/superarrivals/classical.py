"""Classical counterpart: a phase-space ensemble under the same barrier.

The phase-space density is evolved by characteristics: N independent
particles sampled from the Gaussian marginals x ~ N(x0, sigma0^2) and
p ~ N(p0, sigma_p^2), sigma_p = 1/(2 sigma0) unless overridden.  The
rectangular barrier gets linear edge ramps of half-width w_s so forces
are defined.  Within each time step the height is frozen at its
half-step value and every particle follows the exact piecewise-parabolic
flow of that frozen Hamiltonian (dx/dt = 2p, dp/dt = -dV/dx, m = 1/2);
the exact flow is symplectic and conserves the static-barrier energy to
roundoff, where a fixed-step integrator would lose accuracy crossing the
steep edge ramps.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .barrier import BarrierSchedule, STATIC, height_at
from .errors import ConfigError, SuperarrivalsError
from .kernels import get_backend
from .model import ExperimentConfig, PacketSpec, momentum_width
from .observables import ReflectionSeries


@dataclass(frozen=True)
class ClassicalEnsemble:
    """N phase-space points (x, p) at a common time t."""

    x: np.ndarray
    p: np.ndarray
    t: float
    seed: int

    @property
    def n(self) -> int:
        return int(self.x.size)


def sample_ensemble(
    packet: PacketSpec, n: int, seed: int, sigma_p: float | None = None
) -> ClassicalEnsemble:
    """Draw n particles from the packet's position/momentum marginals.

    Deterministic for a given seed: positions are drawn first, then
    momenta, from numpy's default bit generator.
    """
    if n < 1:
        raise ConfigError(f"ensemble size must be >= 1; got {n}")
    sp = sigma_p if sigma_p is not None else momentum_width(packet)
    rng = np.random.default_rng(seed)
    x = rng.normal(packet.x0, packet.sigma0, n)
    p = rng.normal(packet.p0, sp, n)
    return ClassicalEnsemble(x=x, p=p, t=0.0, seed=seed)


def breakpoints(schedule: BarrierSchedule, w_s: float) -> np.ndarray:
    """The four force-discontinuity positions of the edge-smoothed barrier."""
    if not 0 < w_s < schedule.width / 2.0:
        raise ConfigError(
            f"edge smoothing requires 0 < w_s < width/2; got w_s={w_s}, "
            f"width={schedule.width}"
        )
    le, re = schedule.left_edge, schedule.right_edge
    return np.array([le - w_s, le + w_s, re - w_s, re + w_s])


def smoothed_potential(
    x: np.ndarray, schedule: BarrierSchedule, t: float, w_s: float
) -> np.ndarray:
    """Edge-smoothed barrier V_s(x, t): linear ramps of half-width w_s."""
    bp = breakpoints(schedule, w_s)
    h = height_at(schedule, t)
    v = np.zeros_like(np.asarray(x, dtype=float))
    xx = np.asarray(x, dtype=float)
    up = (xx >= bp[0]) & (xx < bp[1])
    v[up] = h * (xx[up] - bp[0]) / (2.0 * w_s)
    v[(xx >= bp[1]) & (xx <= bp[2])] = h
    down = (xx > bp[2]) & (xx <= bp[3])
    v[down] = h * (bp[3] - xx[down]) / (2.0 * w_s)
    return v


def particle_energies(
    ens: ClassicalEnsemble, schedule: BarrierSchedule, w_s: float
) -> np.ndarray:
    """Per-particle energy p^2 + V_s(x) at the ensemble's current time."""
    return ens.p**2 + smoothed_potential(ens.x, schedule, ens.t, w_s)


def _half_step_heights(
    schedule: BarrierSchedule, t0: float, n_steps: int, dt: float
) -> np.ndarray:
    t_half = t0 + (np.arange(n_steps) + 0.5) * dt
    return np.array([height_at(schedule, t) for t in t_half])


def advance_ensemble(
    ens: ClassicalEnsemble,
    schedule: BarrierSchedule,
    n_steps: int,
    dt: float,
    w_s: float = 1e-3,
    backend: str | None = None,
) -> ClassicalEnsemble:
    """Advance every particle by n_steps steps of size dt (heights frozen
    at each half step); returns a new ensemble at t + n_steps*dt."""
    kern = get_backend(backend)
    x = ens.x.copy()
    p = ens.p.copy()
    heights = _half_step_heights(schedule, ens.t, n_steps, dt)
    counts = np.zeros(n_steps + 1, dtype=np.int64)
    rc = kern.classical_advance(
        x, p, heights, dt, breakpoints(schedule, w_s), 1.0 / (2.0 * w_s),
        np.inf, 1, counts,
    )
    if rc != 0:
        raise SuperarrivalsError("classical arc iteration failed to terminate")
    return ClassicalEnsemble(x=x, p=p, t=ens.t + n_steps * dt, seed=ens.seed)


def step_classical(
    ens: ClassicalEnsemble,
    schedule: BarrierSchedule,
    dt: float,
    w_s: float = 1e-3,
    backend: str | None = None,
) -> ClassicalEnsemble:
    """Advance every particle by one step of size dt (height at half step)."""
    return advance_ensemble(ens, schedule, 1, dt, w_s=w_s, backend=backend)


def classical_reflection_series(
    config: ExperimentConfig,
    n: int | None = None,
    backend: str | None = None,
) -> ReflectionSeries:
    """R_cl(t): fraction of particles left of the detector at each sample.

    Paired static/perturbed runs with the same config seed use common
    random numbers, so the two series are identical until the switch-off
    begins.
    """
    kern = get_backend(backend)
    n_part = n if n is not None else config.n_particles
    schedule = config.barrier
    dt = config.grid.dt
    n_steps = config.n_steps
    stride = config.sample_stride

    ens = sample_ensemble(
        config.packet, n_part, config.rng_seed, config.classical_sigma_p()
    )
    x, p = ens.x.copy(), ens.p.copy()
    heights = _half_step_heights(schedule, 0.0, n_steps, dt)
    n_samples = n_steps // stride
    counts = np.zeros(n_samples + 1, dtype=np.int64)
    counts[0] = np.count_nonzero(x < config.detector_x)
    rc = kern.classical_advance(
        x, p, heights, dt,
        breakpoints(schedule, config.w_s), 1.0 / (2.0 * config.w_s),
        config.detector_x, stride, counts,
    )
    if rc != 0:
        raise SuperarrivalsError("classical arc iteration failed to terminate")
    label = (
        "static"
        if schedule.mode == STATIC
        else f"perturbed(eps={schedule.epsilon:g})"
    )
    return ReflectionSeries(
        times=np.arange(n_samples + 1) * (stride * dt),
        values=counts / n_part,
        kind="classical",
        label=label,
    )
