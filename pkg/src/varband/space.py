"""Reproducing kernel and density functionals of variable-bandwidth spaces.

The space spanned by {psi_{n,l} : l <= b(n)} is a reproducing kernel
Hilbert space with kernel

    k(x, y) = sum_n sum_{l=0}^{b(n)} psi_{n,l}(y) psi_{n,l}(x),

a locally finite sum for compactly supported windows.  The diagonal
k(x, x) is 1-periodic when b is constant and its windowed averages give
the necessary sampling density: any stable sampling set must carry at
least 1 + (average bandwidth) points per unit length, and any interval
(alpha, beta) must contain at least

    ceil(beta - alpha - 2m) + sum_{n/2 in [alpha+m, beta-m]} b(n)

samples.  ``beurling_lower_density`` estimates the lower Beurling density
of a finite point set at a finite radius r.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .window import SQRT2, Window
from .wilson import BandwidthSeq, _int_ceil, _int_floor

__all__ = [
    "KernelEvaluator",
    "kernel",
    "kernel_diag_min",
    "necessary_count",
    "average_bandwidth",
    "beurling_lower_density",
]


@dataclass(frozen=True)
class KernelEvaluator:
    """Reproducing kernel of the space determined by (window, bandwidths)."""

    window: Window
    bandwidths: BandwidthSeq


def _slot_sum(ke: KernelEvaluator, n: int, x: float, y: float) -> float:
    """sum_{l=1}^{b(n)} psi_{n,l}(x) psi_{n,l}(y) for one half-integer slot."""
    b = ke.bandwidths(n)
    if b == 0:
        return 0.0
    gx = ke.window.value(x - n / 2.0)
    gy = ke.window.value(y - n / 2.0)
    if gx == 0.0 or gy == 0.0:
        return 0.0
    ls = np.arange(1, b + 1)
    even = (ls + n) % 2 == 0
    px = np.where(even, np.cos(2 * np.pi * ls * x), np.sin(2 * np.pi * ls * x))
    py = np.where(even, np.cos(2 * np.pi * ls * y), np.sin(2 * np.pi * ls * y))
    return 2.0 * gx * gy * float(np.sum(px * py))


def kernel(ke: KernelEvaluator, x: float, y: float) -> float:
    """k(x, y) by exact finite summation over the overlapping supports."""
    m = ke.window.half_width
    lo, hi = min(x, y), max(x, y)
    total = 0.0
    # integer translates g(. - n): both factors need |.-n| <= m
    for n in range(_int_ceil(hi - m), _int_floor(lo + m) + 1):
        total += ke.window.value(x - n) * ke.window.value(y - n)
    # half-integer slots: n/2 within m of both x and y
    for n in range(_int_ceil(2 * (hi - m)), _int_floor(2 * (lo + m)) + 1):
        total += _slot_sum(ke, n, x, y)
    return total


def kernel_diag_min(ke: KernelEvaluator, grid_step: float) -> float:
    """min of k(x, x) over one period [0, 1), sampled at grid_step.

    The diagonal is 1-periodic when b is constant over the probed range;
    a strictly positive minimum is the lower kernel bound required by the
    necessary-density machinery (it holds whenever b >= 1 there).
    """
    if grid_step <= 0:
        raise ValueError("grid_step must be positive")
    xs = np.arange(0.0, 1.0, grid_step)
    return min(kernel(ke, float(t), float(t)) for t in xs)


def necessary_count(interval: tuple[float, float], b: BandwidthSeq, m: float) -> int:
    """Minimum number of samples any stable sampling set puts in (alpha, beta).

    Equals ceil(beta - alpha - 2m) + sum_{n/2 in [alpha+m, beta-m]} b(n),
    the dimension of the interior local space on the interval.
    """
    alpha, beta = interval
    if not beta > alpha:
        raise ValueError("degenerate interval")
    if beta - alpha < 2 * m - 1e-9:
        raise ValueError("interval must be at least 2m long")
    count = _int_ceil(beta - alpha - 2 * m)
    lo, hi = alpha + m, beta - m
    count += sum(b(n) for n in range(_int_ceil(2 * lo), _int_floor(2 * hi) + 1))
    return count


def average_bandwidth(b: BandwidthSeq, x: float, r: float) -> float:
    """Windowed average (1/2r) sum_{n/2 in [x-r, x+r]} b(n).

    The asymptotic infimum of this quantity over centers and growing r is
    the average bandwidth entering the necessary density 1 + b_bar; the
    sweep over r is left to the caller.
    """
    if r <= 0:
        raise ValueError("radius must be positive")
    total = sum(b(n) for n in range(_int_ceil(2 * (x - r)), _int_floor(2 * (x + r)) + 1))
    return total / (2.0 * r)


def beurling_lower_density(points, r: float) -> float:
    """Finite-radius estimate of the lower Beurling density of a point set.

    Windows of radius r are centered at every point and every midpoint of
    consecutive points (the counting quotient is piecewise constant with
    breakpoints there), clamped to the span of the data, and counted
    half-open:

        quotient(x) = #(points in [lo, hi)) / (hi - lo),
        lo = max(x - r, min(points)),  hi = min(x + r, max(points)).

    Returns the minimum quotient.  Requires 2r <= span so at least one
    full-length window fits the data.
    """
    pts = np.sort(np.asarray(points, dtype=float))
    if pts.size == 0:
        raise ValueError("points must be non-empty")
    if r <= 0:
        raise ValueError("radius must be positive")
    t_min, t_max = float(pts[0]), float(pts[-1])
    if t_max - t_min < 2 * r:
        raise ValueError("radius exceeds half the span of the points")
    centers = np.concatenate([pts, 0.5 * (pts[1:] + pts[:-1])])
    lo = np.maximum(centers - r, t_min)
    hi = np.minimum(centers + r, t_max)
    counts = np.searchsorted(pts, hi, side="left") - np.searchsorted(pts, lo, side="left")
    return float(np.min(counts / (hi - lo)))
