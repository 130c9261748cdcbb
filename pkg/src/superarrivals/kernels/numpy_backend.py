"""Pure numpy/scipy kernels; same contracts as the numba backend.

The Crank-Nicolson solve goes through scipy's banded LAPACK driver; the
classical ensemble advance vectorizes the same parabolic-arc logic the
numba backend runs per particle.
"""

import numpy as np
from scipy.linalg import solve_banded

MAX_ARCS = 64


def cn_step(psi, a_diag, b_diag, off_a, off_b, work_c, work_d):
    """Advance the interior wave function by one Crank-Nicolson step in place."""
    work_d[:] = b_diag * psi
    work_d[1:] += off_b * psi[:-1]
    work_d[:-1] += off_b * psi[1:]
    n = psi.size
    ab = np.zeros((3, n), dtype=np.complex128)
    ab[0, 1:] = off_a
    ab[1, :] = a_diag
    ab[2, :-1] = off_a
    psi[:] = solve_banded(
        (1, 1), ab, work_d, check_finite=False, overwrite_ab=True
    )


def _step_arcs(x, p, dt, bp, s, bpad):
    """One global step for every particle near the barrier (vectorized arcs).

    Returns 0 on success, -1 if the arc iteration fails to terminate.
    """
    span = 2.0 * dt * p
    lo = x + np.minimum(0.0, span)
    hi = x + np.maximum(0.0, span)
    near = (hi >= bp[0]) & (lo <= bp[3])
    far = ~near
    x[far] += span[far]
    idx = np.flatnonzero(near)
    if idx.size == 0:
        return 0
    xa = x[idx].copy()
    pa = p[idx].copy()
    tau = np.full(idx.size, dt)
    for _ in range(MAX_ARCS):
        live = np.flatnonzero(tau > 0.0)
        if live.size == 0:
            break
        xl = xa[live]
        pl = pa[live]
        tl = tau[live]
        r = np.searchsorted(bp, xl, side="right")
        onb = np.full(live.size, -1, dtype=np.int64)
        for b in range(4):
            onb[xl == bp[b]] = b
        ob = onb >= 0
        if ob.any():
            # direction rule on a kink: move with the momentum, or with the
            # force if at rest; rest exactly on the kink otherwise
            gl = np.where(onb == 1, -s, np.where(onb == 3, s, 0.0))
            gr = np.where(onb == 0, -s, np.where(onb == 2, s, 0.0))
            right = (pl > 0.0) | ((pl == 0.0) & (gr > 0.0))
            left = (pl < 0.0) | ((pl == 0.0) & (gl < 0.0))
            rest = ob & ~right & ~left
            r = np.where(ob & right, onb + 1, r)
            r = np.where(ob & left & ~right, onb, r)
            tl = np.where(rest, 0.0, tl)
        g = np.where(r == 1, -s, np.where(r == 3, s, 0.0))
        tbest = np.full(live.size, np.inf)
        xbest = np.zeros(live.size)
        with np.errstate(all="ignore"):
            for bound in (bpad[r], bpad[r + 1]):
                finite = np.isfinite(bound)
                c = xl - np.where(finite, bound, 0.0)
                lin = finite & (g == 0.0) & (pl != 0.0)
                tt = -c / np.where(pl != 0.0, 2.0 * pl, 1.0)
                hit = lin & (tt > 0.0) & (tt < tbest)
                tbest = np.where(hit, tt, tbest)
                xbest = np.where(hit, bound, xbest)
                quad = finite & (g != 0.0)
                disc = pl * pl - g * c
                okd = quad & (disc >= 0.0)
                sq = np.sqrt(np.where(okd, disc, 0.0))
                q = np.where(pl >= 0.0, -(pl + sq), -(pl - sq))
                qnz = okd & (q != 0.0)
                tt = c / np.where(q != 0.0, q, 1.0)
                hit = qnz & (tt > 0.0) & (tt < tbest)
                tbest = np.where(hit, tt, tbest)
                xbest = np.where(hit, bound, xbest)
                tt = q / np.where(g != 0.0, g, 1.0)
                hit = qnz & (tt > 0.0) & (tt < tbest)
                tbest = np.where(hit, tt, tbest)
                xbest = np.where(hit, bound, xbest)
        cross = tbest <= tl
        xa[live] = np.where(cross, xbest, xl + 2.0 * pl * tl + g * tl * tl)
        pa[live] = pl + g * np.where(cross, tbest, tl)
        tau[live] = np.where(cross, tl - tbest, 0.0)
    else:
        if (tau > 0.0).any():
            return -1
    x[idx] = xa
    p[idx] = pa
    return 0


def classical_advance(x, p, heights, dt, bp, slope_scale, detector_x, stride, counts):
    """Advance the ensemble through len(heights) steps of size dt in place.

    Same contract as the numba backend: returns 0 on success, negative on
    a non-terminating arc iteration.
    """
    bpad = np.concatenate(([-np.inf], bp, [np.inf]))
    n_steps = heights.size
    for i in range(n_steps):
        s = heights[i] * slope_scale
        if s == 0.0:
            x += 2.0 * dt * p
        else:
            if _step_arcs(x, p, dt, bp, s, bpad) != 0:
                return -(i + 1)
        if (i + 1) % stride == 0:
            counts[(i + 1) // stride] = np.count_nonzero(x < detector_x)
    return 0
