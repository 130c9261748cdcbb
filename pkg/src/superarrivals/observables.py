"""Reflection time series and the derived event observables.

A (static, perturbed) pair of series yields the deviation onset t_d, the
crossing t_c, the window measure eta = (I_p - I_s)/I_s, and the inferred
signal speed v_e = D/(t_d - t_p).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateWindowError,
    DetectionError,
    DownwardDeviationError,
    NoCrossingError,
    NoDeviationError,
    NonConvergedTailWarning,
)

_VALUE_SLACK = 1e-9


@dataclass(frozen=True)
class ReflectionSeries:
    """Sampled reflection probability R(t) for one run.

    times must be strictly increasing with a uniform stride; values are
    probabilities (unit slack 1e-9 for roundoff).  kind is "quantum" or
    "classical"; label is "static" or "perturbed(eps=...)".
    """

    times: np.ndarray
    values: np.ndarray
    kind: str
    label: str
    norm_drift: float | None = None

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        v = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "values", v)
        if t.ndim != 1 or t.shape != v.shape or t.size < 2:
            raise ValueError("series needs matching 1-D times/values, length >= 2")
        d = np.diff(t)
        if np.any(d <= 0):
            raise ValueError("series times must be strictly increasing")
        if np.any(np.abs(d - d[0]) > 1e-9 * d[0] + 1e-15):
            raise ValueError("series times must have a uniform stride")
        if np.any(v < -_VALUE_SLACK) or np.any(v > 1.0 + _VALUE_SLACK):
            raise ValueError("series values must lie in [0, 1] up to 1e-9 slack")
        if self.kind not in ("quantum", "classical"):
            raise ValueError(f"series kind must be quantum|classical; got {self.kind!r}")

    @property
    def stride(self) -> float:
        return float(self.times[1] - self.times[0])

    @property
    def t_end(self) -> float:
        return float(self.times[-1])


@dataclass(frozen=True)
class SuperarrivalReport:
    """Headline quantities for one (static, perturbed) pair.

    delta_t = t_c - t_d; eta = (I_p - I_s)/I_s over [t_d, t_c]; v_e uses
    the distance D from the barrier center to the detector (d_reference
    records that convention since the edge choice shifts D by width/2).
    """

    t_p: float
    t_d: float
    t_c: float
    delta_t: float
    eta: float
    I_p: float
    I_s: float
    v_e: float
    v_g: float
    ratio: float
    delta_threshold: float
    d_reference: str = "barrier_center"

    def __post_init__(self):
        if not self.t_p < self.t_d < self.t_c:
            raise DetectionError(
                f"report requires t_p < t_d < t_c; got "
                f"{self.t_p:.6e}, {self.t_d:.6e}, {self.t_c:.6e}"
            )
        if not (self.delta_t > 0 and self.eta > 0):
            raise DetectionError(
                f"detected window must have delta_t > 0 and eta > 0; got "
                f"delta_t={self.delta_t:.6e}, eta={self.eta:.6e}"
            )


def _shared_axis(static: ReflectionSeries, perturbed: ReflectionSeries) -> np.ndarray:
    if static.times.shape != perturbed.times.shape or not np.allclose(
        static.times, perturbed.times, rtol=0, atol=1e-12
    ):
        raise ValueError("series must share the same time axis")
    return static.times


def detect_t_d(
    static: ReflectionSeries, perturbed: ReflectionSeries, delta: float
) -> float:
    """First time |R_p - R_s| exceeds delta, linearly interpolated.

    Raises NoDeviationError when the two series never separate beyond
    delta (switch-off too slow, or no barrier overlap during it).
    """
    if delta <= 0:
        raise ValueError(f"delta must be positive; got {delta}")
    t = _shared_axis(static, perturbed)
    mag = np.abs(perturbed.values - static.values)
    above = mag > delta
    if not above.any():
        raise NoDeviationError(
            f"|R_p - R_s| never exceeds delta={delta:g} "
            f"(max deviation {mag.max():.3e})"
        )
    k = int(np.argmax(above))
    if k == 0:
        return float(t[0])
    frac = (delta - mag[k - 1]) / (mag[k] - mag[k - 1])
    return float(t[k - 1] + frac * (t[k] - t[k - 1]))


def detect_t_c(
    static: ReflectionSeries, perturbed: ReflectionSeries, t_d: float
) -> float:
    """First sign change of R_p - R_s after t_d, linearly interpolated.

    Requires the deviation at t_d to be upward (R_p above R_s); raises
    NoCrossingError when the series end before the curves cross back.
    """
    t = _shared_axis(static, perturbed)
    d = perturbed.values - static.values
    i0 = int(np.searchsorted(t, t_d, side="right"))
    if i0 >= t.size:
        raise NoCrossingError(f"t_d={t_d:.6e} lies beyond the series end")
    if d[i0] <= 0:
        raise DownwardDeviationError(
            f"R_p(t_d+) must exceed R_s(t_d+); difference is {d[i0]:.3e}"
        )
    for j in range(i0, t.size - 1):
        if d[j] > 0 and d[j + 1] <= 0:
            return float(t[j] + d[j] / (d[j] - d[j + 1]) * (t[j + 1] - t[j]))
    raise NoCrossingError(
        "series end before R_p returns below R_s (t_end too small)"
    )


def window_integral(series: ReflectionSeries, t_lo: float, t_hi: float) -> float:
    """Trapezoidal integral of R over [t_lo, t_hi] with fractional end cells."""
    if not t_hi > t_lo:
        raise DegenerateWindowError(f"window [{t_lo:.6e}, {t_hi:.6e}] is empty")
    t, v = series.times, series.values
    if t_lo < t[0] or t_hi > t[-1]:
        raise DegenerateWindowError("window extends beyond the sampled series")
    vlo = float(np.interp(t_lo, t, v))
    vhi = float(np.interp(t_hi, t, v))
    i0 = int(np.searchsorted(t, t_lo, side="right"))
    i1 = int(np.searchsorted(t, t_hi, side="left")) - 1
    if i0 > i1:
        return 0.5 * (vlo + vhi) * (t_hi - t_lo)
    total = 0.5 * (vlo + v[i0]) * (t[i0] - t_lo)
    total += float(np.trapezoid(v[i0 : i1 + 1], t[i0 : i1 + 1]))
    total += 0.5 * (v[i1] + vhi) * (t_hi - t[i1])
    return total


def compute_eta(
    static: ReflectionSeries,
    perturbed: ReflectionSeries,
    window: tuple[float, float],
) -> tuple[float, float, float]:
    """(eta, I_p, I_s) over the window, eta = (I_p - I_s)/I_s."""
    t_lo, t_hi = window
    _shared_axis(static, perturbed)
    I_p = window_integral(perturbed, t_lo, t_hi)
    I_s = window_integral(static, t_lo, t_hi)
    if I_s <= 0:
        raise DegenerateWindowError(f"static window integral not positive: {I_s:.3e}")
    return (I_p - I_s) / I_s, I_p, I_s


def signal_velocity(
    t_p: float,
    t_d: float,
    detector_x: float,
    barrier_center: float,
    v_g: float,
) -> tuple[float, float]:
    """(v_e, v_e/v_g) with v_e = D/(t_d - t_p), D measured from the barrier center."""
    if not t_d > t_p:
        raise DetectionError(f"t_d must exceed t_p; got t_d={t_d:.6e}, t_p={t_p:.6e}")
    v_e = abs(detector_x - barrier_center) / (t_d - t_p)
    return v_e, v_e / v_g


def asymptotic_reflection(series: ReflectionSeries, tail_fraction: float) -> float:
    """Mean of the last tail_fraction of samples.

    Warns (NonConvergedTailWarning) when the tail's fitted slope, scaled
    by the full series span, exceeds 1e-3: the series has not settled.
    """
    if not 0 < tail_fraction <= 1:
        raise ValueError(f"tail_fraction must be in (0, 1]; got {tail_fraction}")
    n = series.times.size
    m = max(2, int(round(tail_fraction * n)))
    tt = series.times[-m:]
    vv = series.values[-m:]
    slope = float(np.polyfit(tt, vv, 1)[0])
    span = float(series.times[-1] - series.times[0])
    if abs(slope) * span > 1e-3:
        warnings.warn(
            f"tail still drifts: |slope|*span = {abs(slope) * span:.3e} > 1e-3",
            NonConvergedTailWarning,
            stacklevel=2,
        )
    return float(vv.mean())


def analyze_pair(
    static: ReflectionSeries,
    perturbed: ReflectionSeries,
    *,
    t_p: float,
    delta: float,
    detector_x: float,
    barrier_center: float,
    v_g: float,
) -> SuperarrivalReport:
    """Full event analysis of a (static, perturbed) pair.

    Raises a DetectionError subclass when no superarrival window exists
    (no deviation, downward deviation, or no crossing within the run).
    """
    t_d = detect_t_d(static, perturbed, delta)
    t_c = detect_t_c(static, perturbed, t_d)
    eta, I_p, I_s = compute_eta(static, perturbed, (t_d, t_c))
    v_e, ratio = signal_velocity(t_p, t_d, detector_x, barrier_center, v_g)
    return SuperarrivalReport(
        t_p=t_p,
        t_d=t_d,
        t_c=t_c,
        delta_t=t_c - t_d,
        eta=eta,
        I_p=I_p,
        I_s=I_s,
        v_e=v_e,
        v_g=v_g,
        ratio=ratio,
        delta_threshold=delta,
    )
