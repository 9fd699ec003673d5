"""Test-signal generation: random in-space signals and chirps.

Random in-space signals draw integer amplitudes u uniformly from
[-200, 200] and set coefficients to u / 100; the sparse variant activates
only the top frequency l = b(n) of each half-integer slot, the full
variant fills every coefficient.  Draws are reproducible from the seed.

Chirps are the motivating out-of-space signals.  A linear chirp

    p(x) = sin(phi0 + pi (w_T - w_0)/T x^2 + 2 pi w_0 x)

sweeps its instantaneous frequency linearly from w_0 to w_T over [0, T];
``chirp_bandwidth_model`` converts that frequency law into a bandwidth
sequence b(n) = ceil(omega(n/2 + 1/2) + margin) so the chirp is well
approximated inside the variable-bandwidth space.  ``gw_chirp`` is the
inspiral waveform c |t - t0|^{-1/4} cos(omega |t - t0|^{5/8} + phi).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from .wilson import BandwidthSeq, BasisSet

__all__ = [
    "ChirpParams",
    "sparse_random_signal",
    "full_random_signal",
    "linear_chirp",
    "gw_chirp",
    "chirp_bandwidth_model",
    "random_bandwidths",
    "BANDWIDTH_PRESETS",
]


@dataclass(frozen=True)
class ChirpParams:
    """Linear-chirp parameters: duration and endpoint frequencies (Hz)."""

    duration: float
    phi0: float
    omega0: float
    omegaT: float

    def __post_init__(self):
        if self.duration <= 0:
            raise ValueError("duration must be positive")

    def omega(self, t):
        """Instantaneous frequency omega(t), linear in t."""
        return (self.omegaT - self.omega0) / self.duration * np.asarray(t, dtype=float) + self.omega0


def sparse_random_signal(basis: BasisSet, seed: int) -> np.ndarray:
    """Coefficients with only the top frequency of each slot active.

    For every half-integer slot with at least one modulated element, the
    coefficient of its highest enumerated frequency is u / 100 with u an
    integer drawn uniformly from [-200, 200]; all other coefficients are
    zero.  Slots are visited in ascending n, one draw each.
    """
    rng = np.random.default_rng(seed)
    c = np.zeros(len(basis))
    for kind, n, col, ls in basis.blocks():
        if kind != "slot":
            continue
        u = int(rng.integers(-200, 201))
        c[col + ls.size - 1] = u / 100.0
    return c


def full_random_signal(basis: BasisSet, seed: int) -> np.ndarray:
    """Every coefficient drawn as u / 100, u uniform integer in [-200, 200]."""
    rng = np.random.default_rng(seed)
    u = rng.integers(-200, 201, size=len(basis))
    return u / 100.0


def linear_chirp(p: ChirpParams) -> Callable:
    """Pointwise evaluator of the linear chirp with parameters ``p``."""
    rate = (p.omegaT - p.omega0) / p.duration

    def chirp(x):
        xa = np.asarray(x, dtype=float)
        return np.sin(p.phi0 + math.pi * rate * xa**2 + 2.0 * math.pi * p.omega0 * xa)

    return chirp


def gw_chirp(c: float, omega: float, t0: float, phi: float = 0.0) -> Callable:
    """Inspiral chirp s(t) = c |t-t0|^{-1/4} cos(omega |t-t0|^{5/8} + phi).

    Defined for t < t0 only (t0 is the coalescence time); evaluating at
    t >= t0 raises.  The frequency proxy omega |t-t0|^{-3/8} grows without
    bound as t approaches t0.
    """

    def chirp(t):
        ta = np.asarray(t, dtype=float)
        if np.any(ta >= t0):
            raise ValueError(f"chirp is defined for t < coalescence time {t0}")
        gap = np.abs(ta - t0)
        out = c * gap ** (-0.25) * np.cos(omega * gap ** 0.625 + phi)
        return float(out) if np.ndim(t) == 0 else out

    return chirp


def chirp_bandwidth_model(p: ChirpParams, margin: int, n_range: Iterable[int]) -> BandwidthSeq:
    """Bandwidths b(n) = ceil(omega(n/2 + 1/2) + margin) on ``n_range``.

    Each half-integer slot gets the chirp's instantaneous frequency at the
    right end of its interval plus a safety margin, rounded up (values a
    hair below an integer are snapped down before the ceiling so exact
    frequencies survive floating-point noise).
    """
    if margin < 0:
        raise ValueError("margin must be >= 0")
    ns = sorted(n_range)
    if ns != list(range(ns[0], ns[-1] + 1)):
        raise ValueError("n_range must be contiguous")
    values = tuple(
        int(math.ceil(float(p.omega(n / 2.0 + 0.5)) + margin - 1e-9)) for n in ns
    )
    return BandwidthSeq(offset=ns[0], values=values)


def random_bandwidths(n_range: Iterable[int], lo: int = 20, hi: int = 500, seed: int = 0) -> BandwidthSeq:
    """Uniform integer bandwidth draw b(n) ~ U[lo, hi] on a contiguous range."""
    ns = sorted(n_range)
    if ns != list(range(ns[0], ns[-1] + 1)):
        raise ValueError("n_range must be contiguous")
    rng = np.random.default_rng(seed)
    return BandwidthSeq(offset=ns[0], values=tuple(int(v) for v in rng.integers(lo, hi + 1, size=len(ns))))


# Frozen bandwidth profiles (draws from U[20, 500]) used by the demo
# experiments, kept literal so the golden dimensions and sample counts
# are reproducible.
BANDWIDTH_PRESETS: dict[str, BandwidthSeq] = {
    # 11 half-integer slots starting at n = 1; interior demo on [0, 6]
    "profile-a": BandwidthSeq(offset=1, values=(102, 35, 499, 444, 341, 111, 197, 241, 492, 95, 431)),
    # 13 slots starting at n = 0; overlapping/boundary demo on [0, 6]
    "profile-b": BandwidthSeq(offset=0, values=(331, 281, 366, 271, 497, 125, 70, 72, 50, 214, 235, 195, 387)),
    # small interior demo on [0, 3]
    "profile-small": BandwidthSeq(offset=1, values=(40, 36, 50, 30, 42)),
}
