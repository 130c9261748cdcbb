"""CSV emission and generated plot scripts.

All numeric output uses full-precision scientific notation so repeated
runs with identical inputs produce byte-identical files.  Plot scripts
are self-contained matplotlib readers of the CSVs next to them; the
package itself never imports a plotting library.
"""

from __future__ import annotations

from pathlib import Path

from .config import config_items
from .observables import ReflectionSeries
from .solver import WaveFunction
from .sweep import REPORT_FIELDS, PointResult, SweepPlan, point_config


def fmt(value) -> str:
    """One CSV cell: ints plain, floats as %.17e, None empty."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return "%.17e" % value
    return str(value)


def _write(path: Path, lines: list[str]) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(lines) + "\n")
    return path


def write_series_csv(path, series: ReflectionSeries) -> Path:
    lines = ["t,R,kind,label"]
    for t, r in zip(series.times, series.values):
        lines.append(f"{fmt(float(t))},{fmt(float(r))},{series.kind},{series.label}")
    return _write(Path(path), lines)


def write_snapshot_csv(path, wf: WaveFunction) -> Path:
    lines = ["x,|psi|^2"]
    dens = wf.density()
    for x, d in zip(wf.grid.x, dens):
        lines.append(f"{fmt(float(x))},{fmt(float(d))}")
    return _write(Path(path), lines)


def write_report_csv(path, plan: SweepPlan, results: list[PointResult]) -> Path:
    prov_keys = [k for k, _ in config_items(plan.base)] + ["d_reference"]
    header = list(REPORT_FIELDS) + prov_keys
    lines = [",".join(header)]
    for res in results:
        cfg = point_config(plan, res.value)
        prov = dict(config_items(cfg))
        prov["d_reference"] = "barrier_center"
        cells = [fmt(res.row.get(f)) for f in REPORT_FIELDS]
        cells += [fmt(prov[k]) for k in prov_keys]
        lines.append(",".join(cells))
    return _write(Path(path), lines)


_PLOT_SERIES = """\
#!/usr/bin/env python3
\"\"\"Plot every series_*.csv in this directory (columns t, R).\"\"\"
import csv
import glob
import os

import matplotlib.pyplot as plt

here = os.path.dirname(os.path.abspath(__file__))
for name in sorted(glob.glob(os.path.join(here, "series_*.csv"))):
    with open(name) as fh:
        rows = list(csv.DictReader(fh))
    t = [float(r["t"]) for r in rows]
    R = [float(r["R"]) for r in rows]
    label = os.path.basename(name).replace("series_", "").replace(".csv", "")
    plt.plot(t, R, label=label)
plt.xlabel("t")
plt.ylabel("R(t)")
plt.legend()
plt.tight_layout()
plt.savefig(os.path.join(here, "series.png"), dpi=150)
print("wrote series.png")
"""

_PLOT_REPORT = """\
#!/usr/bin/env python3
\"\"\"Plot eta, delta_t and v_e/v_g against the sweep axis from report.csv.\"\"\"
import csv
import os

import matplotlib.pyplot as plt

here = os.path.dirname(os.path.abspath(__file__))
with open(os.path.join(here, "report.csv")) as fh:
    rows = [r for r in csv.DictReader(fh) if r["status"] == "ok"]
if not rows:
    raise SystemExit("no successful rows in report.csv")
axis = "eps"
for cand in ("eps", "width", "x_prime"):
    if len({r[cand] for r in rows}) > 1:
        axis = cand
        break
x = [float(r[axis]) for r in rows]
fig, axes = plt.subplots(1, 3, figsize=(12, 3.5))
for ax, col in zip(axes, ("eta", "delta_t", "ratio")):
    ax.plot(x, [float(r[col]) for r in rows], "o-")
    ax.set_xlabel(axis)
    ax.set_ylabel(col)
fig.tight_layout()
fig.savefig(os.path.join(here, "report.png"), dpi=150)
print("wrote report.png")
"""

_PLOT_SNAPSHOTS = """\
#!/usr/bin/env python3
\"\"\"Plot every snapshot_*.csv in this directory (columns x, |psi|^2).\"\"\"
import csv
import glob
import os

import matplotlib.pyplot as plt

here = os.path.dirname(os.path.abspath(__file__))
for name in sorted(glob.glob(os.path.join(here, "snapshot_*.csv"))):
    with open(name) as fh:
        reader = csv.reader(fh)
        next(reader)
        data = [(float(a), float(b)) for a, b in reader]
    label = os.path.basename(name).replace("snapshot_", "t=").replace(".csv", "")
    plt.plot([d[0] for d in data], [d[1] for d in data], label=label)
plt.xlabel("x")
plt.ylabel("|psi|^2")
plt.legend()
plt.tight_layout()
plt.savefig(os.path.join(here, "snapshots.png"), dpi=150)
print("wrote snapshots.png")
"""

_SCRIPTS = {
    "plot_series.py": _PLOT_SERIES,
    "plot_report.py": _PLOT_REPORT,
    "plot_snapshots.py": _PLOT_SNAPSHOTS,
}


def emit_plot_script(out_dir, name: str) -> Path:
    path = Path(out_dir) / name
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(_SCRIPTS[name])
    return path
