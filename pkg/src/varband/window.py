"""Compactly supported window functions generating Wilson bases.

A generator g is a real-valued, even function with supp(g) contained in
[-m, m].  The associated Wilson system is an orthonormal basis of L2(R)
exactly when the periodization identity

    sum_n g(x - k - n/2) * g(x - n/2) = 2 * delta_{k,0}    (a.e. x)

holds; ``orthonormality_defect`` measures the worst-case deviation from
this identity on a grid.  Windows are stored as closed-form evaluators
plus the constants m, ||g||_inf and ||g'||_inf that enter the sampling
bounds, so basis elements can be evaluated exactly at arbitrary points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

__all__ = ["Window", "cosine_window", "orthonormality_defect", "sufficiency_constant"]

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class Window:
    """Closed-form window with its support and norm constants.

    Attributes:
        half_width: m, with supp(g) contained in [-m, m].
        sup_norm: ||g||_inf.
        deriv_sup_norm: ||g'||_inf (one-sided derivatives at the kinks).
        profile: vectorized evaluator of g, must return 0 for |x| > m.
        profile_deriv: vectorized evaluator of g' (one-sided, piecewise).
        name: short identifier used by serialization and the CLI.
    """

    half_width: float
    sup_norm: float
    deriv_sup_norm: float
    profile: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    profile_deriv: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    name: str = "custom"

    def __post_init__(self):
        if self.half_width <= 0:
            raise ValueError("window half_width must be positive")

    def value(self, x):
        """Evaluate g(x); scalar in, scalar out."""
        arr = self.profile(np.asarray(x, dtype=float))
        return float(arr) if np.ndim(x) == 0 else arr

    def derivative(self, x):
        """Evaluate g'(x) with one-sided values at the support endpoints."""
        arr = self.profile_deriv(np.asarray(x, dtype=float))
        return float(arr) if np.ndim(x) == 0 else arr


def cosine_window() -> Window:
    """Cosine arch g(x) = sqrt(2) cos(pi x) on [-1/2, 1/2], zero outside.

    Constants: m = 1/2, ||g||_inf = sqrt(2), ||g'||_inf = sqrt(2) pi.
    The derivative at +-1/2 is the one-sided interior value.
    """

    def profile(x: np.ndarray) -> np.ndarray:
        return np.where(np.abs(x) <= 0.5, SQRT2 * np.cos(np.pi * x), 0.0)

    def profile_deriv(x: np.ndarray) -> np.ndarray:
        return np.where(np.abs(x) <= 0.5, -SQRT2 * np.pi * np.sin(np.pi * x), 0.0)

    return Window(
        half_width=0.5,
        sup_norm=SQRT2,
        deriv_sup_norm=SQRT2 * math.pi,
        profile=profile,
        profile_deriv=profile_deriv,
        name="cosine",
    )


def orthonormality_defect(w: Window, k_range: int, grid_step: float) -> float:
    """Worst deviation of the Wilson periodization sums from 2*delta_{k,0}.

    Evaluates S_k(x) = sum_n g(x - k - n/2) g(x - n/2) on the grid
    {0, grid_step, ...} covering one period [0, 1/2) and returns

        max_{|k| <= k_range} max_x |S_k(x) - 2 delta_{k,0}|.

    The n-sum is finite because supp(g) is compact.  A zero defect (up to
    rounding) certifies that the window generates an orthonormal Wilson
    basis; callers choose their own acceptance threshold.

    Raises:
        ValueError: if grid_step does not evenly divide 1/2, or if
            k_range is too small to cover all overlapping translates
            (k_range must be at least ceil(2 m)).
    """
    if grid_step <= 0:
        raise ValueError("grid_step must be positive")
    n_grid = round(0.5 / grid_step)
    if n_grid < 1 or abs(n_grid * grid_step - 0.5) > 1e-9:
        raise ValueError("grid_step must divide 1/2 evenly")
    m = w.half_width
    min_k = math.ceil(2 * m - 1e-9)
    if k_range < min_k:
        raise ValueError(
            f"k_range={k_range} misses overlapping translates; need k_range >= {min_k}"
        )

    x = np.arange(n_grid) * grid_step
    # factors vanish unless |x - n/2| <= m and |x - k - n/2| <= m
    defect = 0.0
    for k in range(-k_range, k_range + 1):
        n_lo = math.floor(2 * (min(0.0, -k) - m)) - 1
        n_hi = math.ceil(2 * (0.5 + max(0.0, -k) + m)) + 1
        total = np.zeros_like(x)
        for n in range(n_lo, n_hi + 1):
            total += w.value(x - k - n / 2) * w.value(x - n / 2)
        target = 2.0 if k == 0 else 0.0
        defect = max(defect, float(np.max(np.abs(total - target))))
    return defect


def sufficiency_constant(w: Window) -> float:
    """Window constant D = 4m * max(2 pi ||g||_inf, ||g'||_inf).

    D couples the maximal sampling gap to the active local bandwidth in
    the sufficient sampling condition delta < pi / (mu * D).
    """
    return 4.0 * w.half_width * max(2.0 * math.pi * w.sup_norm, w.deriv_sup_norm)
