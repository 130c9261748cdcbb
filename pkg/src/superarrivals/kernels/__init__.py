"""Backend selection for the hot numerical kernels.

Two interchangeable implementations exist:

* ``numba``: @njit-compiled loops (default when numba imports cleanly);
* ``numpy``: vectorized numpy plus scipy's banded solver.

The environment variable ``SUPERARRIVALS_BACKEND`` picks the default
(``auto`` | ``numba`` | ``numpy``); call sites may override per call.
Both backends implement the same function pair:

* ``cn_step(psi, a_diag, b_diag, off_a, off_b, work_c, work_d)``
* ``classical_advance(x, p, heights, dt, breakpoints, slope_scale,
  detector_x, stride, counts)``

See ``benchmarks/compare_backends.py`` for a side-by-side timing and
agreement check.
"""

from __future__ import annotations

import importlib
import os

from ..errors import ConfigError

_ENV_VAR = "SUPERARRIVALS_BACKEND"
_CHOICES = ("auto", "numba", "numpy")
_cache: dict[str, object] = {}


def _load(name: str):
    if name not in _cache:
        _cache[name] = importlib.import_module(f".{name}_backend", __package__)
    return _cache[name]


def default_backend() -> str:
    """Resolve the backend name selected by the environment."""
    raw = os.environ.get(_ENV_VAR, "auto").strip().lower()
    if raw not in _CHOICES:
        raise ConfigError(
            f"{_ENV_VAR} must be one of {_CHOICES}; got {raw!r}"
        )
    if raw != "auto":
        return raw
    try:
        _load("numba")
        return "numba"
    except ImportError:
        return "numpy"


def get_backend(name: str | None = None):
    """Return the kernel module for `name` (default: environment choice)."""
    resolved = name if name is not None else default_backend()
    if resolved == "auto":
        resolved = default_backend()
    if resolved not in ("numba", "numpy"):
        raise ConfigError(f"unknown backend {resolved!r}; use 'numba' or 'numpy'")
    return _load(resolved)


def active_backend() -> str:
    """Name of the backend get_backend() would currently return."""
    return default_backend()
