"""Key=value config files and the default (production) parameter set.

Defaults reproduce the reference scenario: packet x0 = -0.3,
sigma0 = 0.05/sqrt(2), p0 = 50 pi launched at a barrier of width 0.016
centered at 0 with height 2E, switched off linearly from t_p = 8e-4 over
epsilon, detector at x' = -0.4, dt = 2e-6 on [-1, 1] with 10001 nodes.
"""

from __future__ import annotations

import math
from pathlib import Path

from .barrier import BarrierSchedule, LINEAR_RAMP, STATIC
from .errors import ConfigError
from .model import ExperimentConfig, Grid, PacketSpec, derived_quantities

DEFAULT_EPSILON_SWEEP = (2e-5, 1e-4, 2e-4, 4e-4)
DEFAULT_WIDTH_SWEEP = (0.004, 0.008, 0.016)
DEFAULT_DETECTOR_SWEEP = (-0.6, -0.5, -0.4)
DEFAULT_SNAPSHOT_TIMES = (4e-4, 8e-4, 1.2e-3, 2e-3)

_FLOAT_KEYS = {
    "x_min", "x_max", "dt", "x0", "sigma0", "p0",
    "barrier.center", "barrier.width", "barrier.height_factor",
    "t_p", "epsilon", "detector_x", "t_end", "w_s", "delta", "tail_fraction",
}
_INT_KEYS = {"n_points", "sample_stride", "seed", "n_particles"}
_OPTIONAL_FLOAT_KEYS = {"sigma_p"}
KNOWN_KEYS = _FLOAT_KEYS | _INT_KEYS | _OPTIONAL_FLOAT_KEYS

DEFAULTS: dict = {
    "x_min": -1.0,
    "x_max": 1.0,
    "n_points": 10001,
    "dt": 2e-6,
    "x0": -0.3,
    "sigma0": 0.05 / math.sqrt(2.0),
    "p0": 50.0 * math.pi,
    "barrier.center": 0.0,
    "barrier.width": 0.016,
    "barrier.height_factor": 2.0,
    "t_p": 8e-4,
    "epsilon": 2e-5,
    "detector_x": -0.4,
    "t_end": 4e-3,
    "sample_stride": 1,
    "seed": 12345,
    "n_particles": 100_000,
    "w_s": 1e-3,
    "sigma_p": None,
    "delta": 1e-4,
    "tail_fraction": 0.2,
}


def read_kv_file(path) -> dict[str, str]:
    """Parse a flat key=value text file ('#' starts a comment)."""
    p = Path(path)
    if not p.is_file():
        raise ConfigError(f"config not found: {p}")
    out: dict[str, str] = {}
    for ln, raw in enumerate(p.read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{p}:{ln}: expected key=value, got {raw!r}")
        key, value = line.split("=", 1)
        out[key.strip()] = value.strip()
    return out


def _coerce(key: str, raw: str):
    try:
        if key in _INT_KEYS:
            return int(raw)
        if key in _OPTIONAL_FLOAT_KEYS:
            return None if raw.lower() in ("", "none") else float(raw)
        return float(raw)
    except ValueError:
        raise ConfigError(f"invalid value for {key!r}: {raw!r}") from None


def build_config(values: dict) -> ExperimentConfig:
    """Assemble an ExperimentConfig from a complete key->value mapping.

    barrier height is height_factor times the packet's mean energy;
    epsilon > 0 selects the linear-ramp schedule, epsilon = 0 a barrier
    that stays up.
    """
    v = dict(DEFAULTS)
    v.update(values)
    packet = PacketSpec(x0=v["x0"], sigma0=v["sigma0"], p0=v["p0"])
    height0 = v["barrier.height_factor"] * derived_quantities(packet).energy_E
    eps = v["epsilon"]
    barrier = BarrierSchedule(
        center=v["barrier.center"],
        width=v["barrier.width"],
        height0=height0,
        mode=LINEAR_RAMP if eps > 0 else STATIC,
        t_p=v["t_p"],
        epsilon=eps,
    )
    grid = Grid(
        x_min=v["x_min"], x_max=v["x_max"], n_points=v["n_points"], dt=v["dt"]
    )
    return ExperimentConfig(
        grid=grid,
        packet=packet,
        barrier=barrier,
        detector_x=v["detector_x"],
        t_end=v["t_end"],
        sample_stride=v["sample_stride"],
        rng_seed=v["seed"],
        n_particles=v["n_particles"],
        w_s=v["w_s"],
        sigma_p=v["sigma_p"],
        delta=v["delta"],
        tail_fraction=v["tail_fraction"],
    )


def parse_config_text(kv: dict[str, str]) -> ExperimentConfig:
    values = {}
    for key, raw in kv.items():
        if key not in KNOWN_KEYS:
            raise ConfigError(f"unknown config key: {key!r}")
        values[key] = _coerce(key, raw)
    return build_config(values)


def load_config(path) -> ExperimentConfig:
    return parse_config_text(read_kv_file(path))


def default_config() -> ExperimentConfig:
    return build_config({})


def config_items(config: ExperimentConfig) -> list[tuple[str, object]]:
    """Config as ordered (key, value) pairs; feeds report provenance columns."""
    b, g, pk = config.barrier, config.grid, config.packet
    energy = derived_quantities(pk).energy_E
    return [
        ("x_min", g.x_min),
        ("x_max", g.x_max),
        ("n_points", g.n_points),
        ("dt", g.dt),
        ("x0", pk.x0),
        ("sigma0", pk.sigma0),
        ("p0", pk.p0),
        ("barrier_center", b.center),
        ("barrier_width", b.width),
        ("height_factor", b.height0 / energy),
        ("height0", b.height0),
        ("t_p", b.t_p),
        ("epsilon", b.epsilon),
        ("detector_x", config.detector_x),
        ("t_end", config.t_end),
        ("sample_stride", config.sample_stride),
        ("seed", config.rng_seed),
        ("n_particles", config.n_particles),
        ("w_s", config.w_s),
        ("sigma_p", config.sigma_p),
        ("delta", config.delta),
        ("tail_fraction", config.tail_fraction),
    ]
