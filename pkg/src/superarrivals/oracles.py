"""Independent analytic cross-checks for the numerical solvers.

Plane-wave rectangular-barrier coefficients (m = 1/2, hbar = 1, so
E = p^2), the packet-weighted momentum integral of the reflection
coefficient, and closed-form free-Gaussian evolution.  None of these
touch the time-domain solver; they exist to validate it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import PacketSpec, momentum_width

# series switch-over for sinh^2(w sqrt(t))/t near t = 0
_SMALL_Z2 = 1e-8


@dataclass(frozen=True)
class MomentumSpectrum:
    """|phi(p)|^2 samples of the packet's momentum distribution."""

    p_values: np.ndarray
    weights: np.ndarray


def momentum_spectrum(
    packet: PacketSpec, n_sigma: float = 6.0, n_samples: int = 4001
) -> MomentumSpectrum:
    """Gaussian |phi(p)|^2 with mean p0 and variance 1/(4 sigma0^2),
    sampled uniformly over p0 +- n_sigma standard deviations."""
    sp = momentum_width(packet)
    p = np.linspace(packet.p0 - n_sigma * sp, packet.p0 + n_sigma * sp, n_samples)
    w = np.exp(-((p - packet.p0) ** 2) / (2.0 * sp * sp)) / (sp * math.sqrt(2 * math.pi))
    return MomentumSpectrum(p_values=p, weights=w)


def _sinh2_over(t: float, width: float) -> float:
    """sinh^2(width sqrt(t))/t, analytically continued through t = 0.

    For t < 0 this is sin^2(width sqrt(-t))/(-t) >= 0; the t -> 0 limit
    is width^2.  Returns 0.0 exactly at transmission resonances.
    """
    z2 = t * width * width
    if abs(z2) < _SMALL_Z2:
        return width * width * (1.0 + z2 / 3.0 + 2.0 * z2 * z2 / 45.0)
    if t > 0:
        z = math.sqrt(t) * width
        if z > 300.0:  # sinh overflow; caller handles via the huge value
            return math.inf
        s = math.sinh(z)
        return s * s / t
    s = math.sin(math.sqrt(-t) * width)
    return s * s / (-t)


def plane_wave_reflection(p: float, height: float, width: float) -> float:
    """|R(p)|^2 for exp(ipx) on a rectangular barrier (m = 1/2, E = p^2).

    Continuous across E = V; for E < V the usual sinh form, for E > V the
    sin form (zero at transmission resonances); |R|^2 -> 1 as the barrier
    becomes opaque.
    """
    if p <= 0:
        raise ValueError(f"plane-wave momentum must be positive; got {p}")
    if width <= 0:
        raise ValueError(f"barrier width must be positive; got {width}")
    if height == 0.0:
        return 0.0
    energy = p * p
    g = _sinh2_over(height - energy, width)
    if g == 0.0:
        return 0.0
    if math.isinf(g):
        return 1.0
    return 1.0 / (1.0 + 4.0 * energy / (height * height * g))


def plane_wave_transmission(p: float, height: float, width: float) -> float:
    """|T(p)|^2; satisfies |R|^2 + |T|^2 = 1."""
    if p <= 0:
        raise ValueError(f"plane-wave momentum must be positive; got {p}")
    if height == 0.0:
        return 1.0
    energy = p * p
    g = _sinh2_over(height - energy, width)
    if g == 0.0:
        return 1.0
    if math.isinf(g):
        return 0.0
    return 1.0 / (1.0 + height * height * g / (4.0 * energy))


def asymptotic_reflection_integral(
    packet: PacketSpec, height: float, width: float, n_samples: int = 4001
) -> float:
    """Packet reflection probability as the momentum integral of |R(p)|^2
    weighted by |phi(p)|^2 over p0 +- 6 sigma_p (static barrier route)."""
    dist = momentum_spectrum(packet, n_sigma=6.0, n_samples=n_samples)
    vals = np.array(
        [plane_wave_reflection(p, height, width) if p > 0 else 1.0
         for p in dist.p_values]
    )
    return float(np.trapezoid(dist.weights * vals, dist.p_values))


def free_gaussian_moments(packet: PacketSpec, t: float) -> tuple[float, float]:
    """(mean position, width) of the free packet at time t.

    mean = x0 + 2 p0 t; sigma_t = sigma0 sqrt(1 + (t / sigma0^2)^2)
    (the 2 m sigma0^2 spreading time equals sigma0^2 for m = 1/2).
    """
    if t < 0:
        raise ValueError(f"time must be non-negative; got {t}")
    mean_x = packet.x0 + 2.0 * packet.p0 * t
    sigma_t = packet.sigma0 * math.sqrt(1.0 + (t / packet.sigma0**2) ** 2)
    return mean_x, sigma_t
