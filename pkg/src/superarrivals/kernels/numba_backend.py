"""Numba-compiled kernels: Crank-Nicolson step and classical ensemble advance."""

import numpy as np
from numba import njit

MAX_ARCS = 64


@njit(cache=True)
def cn_step(psi, a_diag, b_diag, off_a, off_b, work_c, work_d):
    """Advance the interior wave function by one Crank-Nicolson step in place.

    Solves (off_a, a_diag, off_a) psi' = rhs with rhs the tridiagonal
    product (off_b, b_diag, off_b) @ psi, via the Thomas algorithm.
    Boundary neighbors are implicitly zero (hard walls).
    """
    n = psi.size
    work_d[0] = b_diag[0] * psi[0] + off_b * psi[1]
    for j in range(1, n - 1):
        work_d[j] = b_diag[j] * psi[j] + off_b * (psi[j - 1] + psi[j + 1])
    work_d[n - 1] = b_diag[n - 1] * psi[n - 1] + off_b * psi[n - 2]

    beta = a_diag[0]
    psi[0] = work_d[0] / beta
    for j in range(1, n):
        work_c[j] = off_a / beta
        beta = a_diag[j] - off_a * work_c[j]
        psi[j] = (work_d[j] - off_a * psi[j - 1]) / beta
    for j in range(n - 2, -1, -1):
        psi[j] = psi[j] - work_c[j + 1] * psi[j + 1]


@njit(cache=True)
def _advance_one(xk, pk, tau, bp, s):
    """Move one particle through the piecewise-linear barrier for time tau.

    The potential is flat except on the two edge ramps, so the exact flow
    is a chain of parabolic arcs; each arc ends at a region boundary or
    when tau runs out.  Returns (x, p, ok).
    """
    narc = 0
    while tau > 0.0:
        narc += 1
        if narc > MAX_ARCS:
            return xk, pk, False
        # locate region 0..4 (boundaries bp[0..3]); onb = boundary index if on one
        r = 0
        onb = -1
        for b in range(4):
            if xk > bp[b]:
                r = b + 1
            elif xk == bp[b]:
                onb = b
                break
            else:
                break
        if onb >= 0:
            # force just left/right of boundary onb; region forces are
            # (-s) in region 1, (+s) in region 3, zero elsewhere
            gl = -s if onb == 1 else (s if onb == 3 else 0.0)
            gr = -s if onb == 0 else (s if onb == 2 else 0.0)
            if pk > 0.0 or (pk == 0.0 and gr > 0.0):
                r = onb + 1
            elif pk < 0.0 or (pk == 0.0 and gl < 0.0):
                r = onb
            else:
                break  # resting exactly on a kink; no motion this step
        if r == 1:
            g = -s
        elif r == 3:
            g = s
        else:
            g = 0.0
        # earliest boundary crossing in (0, tau]; x(t) = x + 2 p t + g t^2
        tbest = np.inf
        xbest = 0.0
        for side in range(2):
            if side == 0:
                if r == 0:
                    continue
                b = bp[r - 1]
            else:
                if r == 4:
                    continue
                b = bp[r]
            c = xk - b
            if g == 0.0:
                if pk != 0.0:
                    tt = -c / (2.0 * pk)
                    if 0.0 < tt < tbest:
                        tbest = tt
                        xbest = b
            else:
                disc = pk * pk - g * c
                if disc >= 0.0:
                    sq = np.sqrt(disc)
                    q = -(pk + sq) if pk >= 0.0 else -(pk - sq)
                    if q != 0.0:
                        tt = c / q
                        if 0.0 < tt < tbest:
                            tbest = tt
                            xbest = b
                        tt = q / g
                        if 0.0 < tt < tbest:
                            tbest = tt
                            xbest = b
        if tbest <= tau:
            pk = pk + g * tbest
            xk = xbest  # snap exactly onto the boundary
            tau -= tbest
        else:
            xk = xk + 2.0 * pk * tau + g * tau * tau
            pk = pk + g * tau
            tau = 0.0
    return xk, pk, True


@njit(cache=True)
def classical_advance(x, p, heights, dt, bp, slope_scale, detector_x, stride, counts):
    """Advance the ensemble through len(heights) steps of size dt in place.

    heights[i] is the barrier height frozen for step i (half-step sampled
    by the caller); the edge-ramp force magnitude is heights[i]*slope_scale
    with slope_scale = 1/(2 w_s).  Every `stride` steps the number of
    particles left of detector_x is recorded in counts[(i+1)//stride]
    (counts[0] is the caller's initial count).  Returns 0 on success.
    """
    n_steps = heights.size
    npart = x.size
    for i in range(n_steps):
        s = heights[i] * slope_scale
        for k in range(npart):
            xk = x[k]
            pk = p[k]
            span = 2.0 * pk * dt
            lo = xk + min(0.0, span)
            hi = xk + max(0.0, span)
            if s == 0.0 or hi < bp[0] or lo > bp[3]:
                x[k] = xk + span
                continue
            xk, pk, ok = _advance_one(xk, pk, dt, bp, s)
            if not ok:
                return -(i * npart + k + 1)
            x[k] = xk
            p[k] = pk
        if (i + 1) % stride == 0:
            c = 0
            for k in range(npart):
                if x[k] < detector_x:
                    c += 1
            counts[(i + 1) // stride] = c
    return 0
