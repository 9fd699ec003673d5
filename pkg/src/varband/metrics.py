"""Relative error metrics on evaluation grids and spectrogram emission.

Errors compare a reference f and an approximation f_tilde on the uniform
half-open grid {a + step * n} of an interval [a, b):

    e2   = ||f_tilde - f||_2 / ||f||_2      (grid l2 norms)
    einf = max|f_tilde - f| / max|f|

The spectrogram is a Hann-windowed short-time Fourier magnitude on the
same kind of grid, emitted as long-form (time, frequency, magnitude)
rows for external plotting.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = ["ErrorReport", "SpectrogramResult", "relative_errors", "spectrogram",
           "grid_points", "write_spectrogram_csv"]


@dataclass(frozen=True)
class ErrorReport:
    e2: float
    einf: float
    grid_step: float
    interval: tuple[float, float]

    def to_json_dict(self) -> dict:
        return {
            "e2": self.e2,
            "einf": self.einf,
            "grid_step": self.grid_step,
            "interval": list(self.interval),
        }


def grid_points(interval: tuple[float, float], step: float) -> np.ndarray:
    """Uniform grid a + step*n on the half-open interval [a, b)."""
    a, b = interval
    if step <= 0:
        raise ValueError("step must be positive")
    if not b > a:
        raise ValueError("empty interval")
    n = int(np.floor((b - a) / step + 1e-9)) + 1
    pts = a + step * np.arange(n)
    return pts[pts < b - 1e-12 * max(1.0, abs(b))]


def relative_errors(f: Callable, f_tilde: Callable, interval: tuple[float, float], step: float) -> ErrorReport:
    """Relative l2 and sup errors of f_tilde against f on the grid.

    Raises if f vanishes identically on the grid (zero denominator).
    """
    pts = grid_points(interval, step)
    fv = np.asarray(f(pts), dtype=float)
    gv = np.asarray(f_tilde(pts), dtype=float)
    denom2 = float(np.linalg.norm(fv))
    denom_inf = float(np.max(np.abs(fv)))
    if denom2 == 0.0 or denom_inf == 0.0:
        raise ValueError("reference function vanishes on the grid")
    return ErrorReport(
        e2=float(np.linalg.norm(gv - fv)) / denom2,
        einf=float(np.max(np.abs(gv - fv))) / denom_inf,
        grid_step=step,
        interval=(float(interval[0]), float(interval[1])),
    )


@dataclass(frozen=True)
class SpectrogramResult:
    times: np.ndarray        # frame centers
    freqs: np.ndarray        # non-negative frequency bins (Hz)
    magnitudes: np.ndarray   # (len(times), len(freqs))


def spectrogram(
    f: Callable,
    interval: tuple[float, float],
    win_len: float = 0.25,
    hop: float = 0.01,
    fft_size: int = 4096,
    step: float = 1e-4,
) -> SpectrogramResult:
    """Hann-windowed short-time Fourier magnitudes of f on [a, b).

    The signal is sampled at spacing ``step``; frames of ``win_len``
    seconds advance by ``hop`` seconds and are zero-padded to
    ``fft_size`` (a power of two, at least the frame length).
    """
    if fft_size <= 0 or fft_size & (fft_size - 1) != 0:
        raise ValueError("fft_size must be a power of two")
    if win_len <= 0 or hop <= 0:
        raise ValueError("win_len and hop must be positive")
    win_samples = max(2, round(win_len / step))
    if win_samples > fft_size:
        raise ValueError("window longer than fft_size samples")
    hop_samples = max(1, round(hop / step))

    pts = grid_points(interval, step)
    values = np.asarray(f(pts), dtype=float)
    starts = np.arange(0, values.size - win_samples + 1, hop_samples)
    if starts.size == 0:
        raise ValueError("interval shorter than one window")
    hann = np.hanning(win_samples)
    frames = np.stack([values[s : s + win_samples] * hann for s in starts])
    mags = np.abs(np.fft.rfft(frames, n=fft_size, axis=1))
    times = pts[0] + (starts + (win_samples - 1) / 2.0) * step
    freqs = np.fft.rfftfreq(fft_size, d=step)
    return SpectrogramResult(times=times, freqs=freqs, magnitudes=mags)


def write_spectrogram_csv(result: SpectrogramResult, path, max_freq: float | None = None) -> None:
    """Long-form rows (t, f, mag), frames outer, frequencies inner.

    ``max_freq`` truncates the emitted frequency axis.
    """
    keep = result.freqs <= max_freq if max_freq is not None else slice(None)
    freqs = result.freqs[keep]
    mags = result.magnitudes[:, keep]
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["t", "f", "mag"])
        for i, t in enumerate(result.times):
            for j, fr in enumerate(freqs):
                writer.writerow([repr(float(t)), repr(float(fr)), repr(float(mags[i, j]))])
