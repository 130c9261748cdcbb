"""Command-line interface: run, sweep, snapshots, validate.

run        one config -> static and/or perturbed series CSVs (optionally
           the classical counterparts)
sweep      a plan file -> report.csv plus per-point series
snapshots  |psi|^2 profiles at chosen instants
validate   config lint: parse, check invariants, print derived values
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from . import artifacts
from .barrier import LINEAR_RAMP, STATIC
from .classical import classical_reflection_series
from .config import DEFAULT_SNAPSHOT_TIMES, config_items, load_config
from .errors import SuperarrivalsError
from .model import derived_quantities, validate_config
from .solver import evolve
from .sweep import load_sweep_plan, run_sweep


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="superarrivals",
        description="1-D wave-packet reflection from a time-varying barrier",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="single run: series CSVs for one config")
    run_p.add_argument("config", help="key=value config file")
    run_p.add_argument(
        "--mode", choices=("static", "perturbed", "both"), default="both"
    )
    run_p.add_argument(
        "--classical", action="store_true",
        help="also run the classical ensemble for each selected mode",
    )
    run_p.add_argument("--out-dir", default="out")
    run_p.add_argument("--seed", type=int, default=None)

    sweep_p = sub.add_parser("sweep", help="sweep a plan file, emit report.csv")
    sweep_p.add_argument("plan", help="plan file: axis=..., values=..., config keys")
    sweep_p.add_argument("--out-dir", default="out")
    sweep_p.add_argument("--workers", type=int, default=None)
    sweep_p.add_argument("--seed", type=int, default=None)

    snap_p = sub.add_parser("snapshots", help="|psi|^2 profiles at chosen times")
    snap_p.add_argument("config")
    snap_p.add_argument(
        "--times",
        default=",".join("%g" % t for t in DEFAULT_SNAPSHOT_TIMES),
        help="comma-separated instants in (0, t_end]",
    )
    snap_p.add_argument(
        "--mode", choices=("static", "perturbed"), default="perturbed"
    )
    snap_p.add_argument("--out-dir", default="out")

    val_p = sub.add_parser("validate", help="parse and check a config file")
    val_p.add_argument("config")
    return parser


def _mode_list(mode: str) -> list[str]:
    return ["static", "perturbed"] if mode == "both" else [mode]


def _with_mode(cfg, mode: str):
    return cfg.with_barrier_mode(STATIC if mode == "static" else LINEAR_RAMP)


def cmd_run(args) -> int:
    cfg = load_config(args.config)
    if args.seed is not None:
        cfg = replace(cfg, rng_seed=args.seed)
    out = Path(args.out_dir)
    written = []
    for mode in _mode_list(args.mode):
        mcfg = _with_mode(cfg, mode)
        validate_config(mcfg)
        series, _ = evolve(mcfg)
        written.append(
            artifacts.write_series_csv(out / f"series_quantum_{mode}.csv", series)
        )
        if args.classical:
            cl = classical_reflection_series(mcfg)
            written.append(
                artifacts.write_series_csv(out / f"series_classical_{mode}.csv", cl)
            )
    written.append(artifacts.emit_plot_script(out, "plot_series.py"))
    for path in written:
        print(path)
    return 0


def cmd_sweep(args) -> int:
    plan = load_sweep_plan(args.plan)
    if args.seed is not None:
        plan = replace(plan, base=replace(plan.base, rng_seed=args.seed))
    if args.workers is not None:
        plan = replace(plan, workers=args.workers)
    out = Path(args.out_dir)
    results = run_sweep(plan)
    written = [artifacts.write_report_csv(out / "report.csv", plan, results)]
    for res in results:
        sub = out / f"{plan.axis}_{res.index:02d}_{res.value:.6g}"
        if res.static is not None:
            written.append(
                artifacts.write_series_csv(
                    sub / "series_quantum_static.csv", res.static
                )
            )
        if res.perturbed is not None:
            written.append(
                artifacts.write_series_csv(
                    sub / "series_quantum_perturbed.csv", res.perturbed
                )
            )
    written.append(artifacts.emit_plot_script(out, "plot_report.py"))
    for path in written:
        print(path)
    return 0


def cmd_snapshots(args) -> int:
    cfg = load_config(args.config)
    try:
        times = [float(tok) for tok in args.times.split(",") if tok.strip()]
    except ValueError:
        print(f"error: invalid --times value {args.times!r}", file=sys.stderr)
        return 2
    mcfg = _with_mode(cfg, args.mode)
    validate_config(mcfg)
    _, snaps = evolve(mcfg, snapshot_times=times)
    out = Path(args.out_dir)
    written = []
    for wf in snaps:
        written.append(
            artifacts.write_snapshot_csv(out / f"snapshot_{wf.t:.6e}.csv", wf)
        )
    written.append(artifacts.emit_plot_script(out, "plot_snapshots.py"))
    for path in written:
        print(path)
    return 0


def cmd_validate(args) -> int:
    cfg = load_config(args.config)
    notes = validate_config(cfg)
    dq = derived_quantities(cfg.packet)
    print(f"config OK: {args.config}")
    print(f"  energy_E = {dq.energy_E:.6f}")
    print(f"  v_g      = {dq.v_g:.6f}")
    print(f"  height0  = {cfg.barrier.height0:.6f}")
    print(f"  dx       = {cfg.grid.dx:.6e}")
    print(f"  steps    = {cfg.n_steps}")
    print(f"  sigma_p  = {cfg.classical_sigma_p():.6f}")
    for key, value in config_items(cfg):
        print(f"  {key} = {value}")
    for note in notes:
        print(f"  note: {note}")
    return 0


_COMMANDS = {
    "run": cmd_run,
    "sweep": cmd_sweep,
    "snapshots": cmd_snapshots,
    "validate": cmd_validate,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except SuperarrivalsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
