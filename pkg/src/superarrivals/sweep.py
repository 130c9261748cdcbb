"""Sweep driver: one (static, perturbed) quantum pair per sweep value.

Points run in a process pool when workers > 1; results are collected in
plan order so output files are byte-identical however the pool schedules
the work.  For the epsilon axis the static run is shared across points
(it does not depend on epsilon); width and detector points each carry
their own static run.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path

from .barrier import LINEAR_RAMP, STATIC
from .config import parse_config_text, read_kv_file
from .errors import ConfigError, SuperarrivalsError
from .model import ExperimentConfig, derived_quantities, validate_config
from .observables import ReflectionSeries, analyze_pair
from .solver import evolve

AXES = ("epsilon", "width", "detector")

REPORT_FIELDS = (
    "eps", "width", "x_prime", "t_p", "t_d", "t_c", "delta_t",
    "I_p", "I_s", "eta", "v_e", "v_g", "ratio", "delta_threshold", "status",
)


@dataclass(frozen=True)
class SweepPlan:
    """One sweep axis, its values (ascending), and the shared base config."""

    axis: str
    values: tuple[float, ...]
    base: ExperimentConfig
    workers: int = 1

    def __post_init__(self):
        if self.axis not in AXES:
            raise ConfigError(f"sweep axis must be one of {AXES}; got {self.axis!r}")
        if not self.values:
            raise ConfigError("sweep values must be non-empty")
        if any(b <= a for a, b in zip(self.values, self.values[1:])):
            raise ConfigError(f"sweep values must be sorted ascending: {self.values}")
        if self.workers < 1:
            raise ConfigError(f"workers must be >= 1; got {self.workers}")
        for v in self.values:
            # every point runs a perturbed pass, so the ramp variant must
            # validate (catches static bases and bad ramp windows up front)
            validate_config(point_config(self, v).with_barrier_mode(LINEAR_RAMP))


def point_config(plan: SweepPlan, value: float) -> ExperimentConfig:
    """Base config with the sweep value applied to the plan's axis."""
    base = plan.base
    if plan.axis == "epsilon":
        return replace(base, barrier=replace(base.barrier, mode=LINEAR_RAMP, epsilon=value))
    if plan.axis == "width":
        return replace(base, barrier=replace(base.barrier, width=value))
    return replace(base, detector_x=value)


def load_sweep_plan(path, base: ExperimentConfig | None = None) -> SweepPlan:
    """Read a plan file: axis=..., values=v1,v2,..., workers=..., plus any
    config keys (or config=<path> for a separate base config file)."""
    kv = read_kv_file(path)
    axis = kv.pop("axis", None)
    if axis is None:
        raise ConfigError(f"sweep plan {path} is missing the 'axis' key")
    raw_values = kv.pop("values", None)
    if raw_values is None:
        raise ConfigError(f"sweep plan {path} is missing the 'values' key")
    try:
        values = tuple(float(tok) for tok in raw_values.split(",") if tok.strip())
    except ValueError:
        raise ConfigError(f"invalid sweep values: {raw_values!r}") from None
    try:
        workers = int(kv.pop("workers", "1"))
    except ValueError:
        raise ConfigError("invalid value for 'workers': must be an integer") from None
    base_path = kv.pop("config", None)
    if base is None:
        if base_path is not None:
            base_kv = read_kv_file(Path(path).parent / base_path)
            base_kv.update(kv)
            base = parse_config_text(base_kv)
        else:
            base = parse_config_text(kv)
    return SweepPlan(axis=axis, values=values, base=base, workers=workers)


@dataclass(frozen=True)
class PointResult:
    """Report row plus the series behind it, in plan order.

    The series are None when the point failed before producing them; the
    failure class is recorded in row["status"] and the sweep continues.
    """

    index: int
    value: float
    row: dict
    static: ReflectionSeries | None
    perturbed: ReflectionSeries | None


def _run_point(task) -> PointResult:
    index, value, cfg, shared_static, backend = task
    v_g = derived_quantities(cfg.packet).v_g
    row = {
        "eps": cfg.barrier.epsilon,
        "width": cfg.barrier.width,
        "x_prime": cfg.detector_x,
        "t_p": cfg.barrier.t_p,
        "v_g": v_g,
        "delta_threshold": cfg.delta,
        "t_d": None, "t_c": None, "delta_t": None,
        "I_p": None, "I_s": None, "eta": None,
        "v_e": None, "ratio": None,
    }
    static = perturbed = None
    try:
        if shared_static is None:
            static, _ = evolve(cfg.with_barrier_mode(STATIC), backend=backend)
        else:
            static = shared_static
        perturbed, _ = evolve(cfg.with_barrier_mode(LINEAR_RAMP), backend=backend)
        rep = analyze_pair(
            static,
            perturbed,
            t_p=cfg.barrier.t_p,
            delta=cfg.delta,
            detector_x=cfg.detector_x,
            barrier_center=cfg.barrier.center,
            v_g=v_g,
        )
        row.update(
            t_d=rep.t_d, t_c=rep.t_c, delta_t=rep.delta_t,
            I_p=rep.I_p, I_s=rep.I_s, eta=rep.eta,
            v_e=rep.v_e, ratio=rep.ratio, status="ok",
        )
    except SuperarrivalsError as exc:
        row["status"] = f"error:{type(exc).__name__}"
    return PointResult(
        index=index, value=value, row=row, static=static, perturbed=perturbed
    )


def run_sweep(plan: SweepPlan, backend: str | None = None) -> list[PointResult]:
    """Execute every sweep point; result list follows plan order."""
    shared_static = None
    if plan.axis == "epsilon":
        shared_static, _ = evolve(plan.base.with_barrier_mode(STATIC), backend=backend)
    tasks = [
        (i, v, point_config(plan, v), shared_static, backend)
        for i, v in enumerate(plan.values)
    ]
    if plan.workers == 1 or len(tasks) == 1:
        return [_run_point(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=plan.workers) as pool:
        return list(pool.map(_run_point, tasks))
