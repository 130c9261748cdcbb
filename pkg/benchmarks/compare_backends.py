#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure numpy/scipy fallback.

Times the two hot paths end to end on the same inputs:

1. the quantum run (Crank-Nicolson stepping on the production grid);
2. the classical ensemble run (exact piecewise-parabolic advance).

Both backends must agree; the script reports timings, speedups and the
worst numerical deviation between them.  Select the default backend for
the package itself with SUPERARRIVALS_BACKEND={auto|numba|numpy}.
"""

import argparse
import time
import warnings

import numpy as np

from superarrivals import STATIC, classical_reflection_series, evolve
from superarrivals.config import build_config

BACKENDS = ("numba", "numpy")


def time_call(fn, repeats):
    best = np.inf
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n-points", type=int, default=10001)
    parser.add_argument("--steps", type=int, default=2000)
    parser.add_argument("--particles", type=int, default=100_000)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    dt = 2e-6
    cfg = build_config(
        {"n_points": args.n_points, "dt": dt, "t_end": args.steps * dt,
         "n_particles": args.particles}
    ).with_barrier_mode(STATIC)

    warnings.simplefilter("ignore")
    print(f"grid: {args.n_points} nodes x {args.steps} steps; "
          f"ensemble: {args.particles} particles")

    # warm up the JIT so compile time is not billed to the numba timing
    warm = build_config({"n_points": 2001, "dt": dt, "t_end": 10 * dt,
                         "n_particles": 100}).with_barrier_mode(STATIC)
    evolve(warm, backend="numba")
    classical_reflection_series(warm, backend="numba")

    times = {}
    results = {}
    for backend in BACKENDS:
        tq, (series, _) = time_call(
            lambda b=backend: evolve(cfg, backend=b), args.repeats
        )
        tc, cl = time_call(
            lambda b=backend: classical_reflection_series(cfg, backend=b),
            args.repeats,
        )
        times[backend] = (tq, tc)
        results[backend] = (series.values, cl.values)
        print(f"{backend:>6}: quantum {tq:8.3f} s   classical {tc:8.3f} s")

    dq = np.max(np.abs(results["numba"][0] - results["numpy"][0]))
    dc = np.max(np.abs(results["numba"][1] - results["numpy"][1]))
    print(f"quantum speedup (numpy/numba):   {times['numpy'][0] / times['numba'][0]:.2f}x")
    print(f"classical speedup (numpy/numba): {times['numpy'][1] / times['numba'][1]:.2f}x")
    print(f"max |R diff|:    {dq:.3e}")
    print(f"max |R_cl diff|: {dc:.3e}")
    if dq > 1e-9 or dc > 1e-9:
        raise SystemExit("backends disagree beyond tolerance")
    print("backends agree")


if __name__ == "__main__":
    main()
