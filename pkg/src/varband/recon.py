"""Design-matrix assembly, least-squares and adaptive-weights reconstruction.

Coefficient vectors are plain 1-D float arrays aligned with a BasisSet's
column order.  Reconstruction from samples y_j taken at points x_j solves

    U c = y,   U[j, i] = psi_i(x_j)

in the least-squares sense via the pseudoinverse; exact in-space data with
a full-column-rank U is recovered to solver precision.  Out-of-space
signals can instead be projected onto the span by trapezoidal quadrature
of the inner products <f, psi_i> over each element's support.

``adaptive_weights_reconstruct`` implements the constructive scheme
behind the gap condition: approximate f by the step function taking the
sample value on each midpoint cell, project it onto the space (operator
A), and invert A by its Neumann series

    f = sum_{n>=0} (Id - A)^n (A f),

which converges geometrically with ratio gamma < 1 whenever the gap
condition holds.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .linalg import pinv_solve
from .sampling import CellWeights, SamplingSet
from .window import SQRT2, Window
from .wilson import BasisSet

__all__ = [
    "SampledData",
    "ConvergenceError",
    "design_matrix",
    "reconstruct_lsq",
    "synthesize",
    "project_quadrature",
    "adaptive_weights_reconstruct",
    "write_coefficients_csv",
]


class ConvergenceError(RuntimeError):
    """Raised when the Neumann iteration diverges."""


@dataclass(frozen=True)
class SampledData:
    """Sample values aligned with the flattened points of a SamplingSet."""

    points: SamplingSet
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.ndim != 1 or vals.size != len(self.points):
            raise ValueError("one value per sampling point required")
        if not np.all(np.isfinite(vals)):
            raise ValueError("sample values must be finite")
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_function(cls, s: SamplingSet, f: Callable) -> "SampledData":
        return cls(points=s, values=np.asarray(f(s.points()), dtype=float))


def _flat_points(s) -> np.ndarray:
    pts = s.points() if isinstance(s, SamplingSet) else np.asarray(s, dtype=float)
    return np.atleast_1d(pts)


def _slot_block(x: np.ndarray, n: int, ls: np.ndarray, w: Window) -> np.ndarray:
    """Evaluate the modulated elements (n, ls) at sorted points x."""
    g = w.profile(x - n / 2.0)
    phase = 2.0 * np.pi * np.outer(x, ls)
    even = (ls + n) % 2 == 0
    block = np.where(even[None, :], np.cos(phase), np.sin(phase))
    block *= SQRT2 * g[:, None]
    return block


def design_matrix(s, basis: BasisSet, w: Window) -> np.ndarray:
    """U[j, i] = psi_i(x_j) for the flattened sample points.

    Accepts a SamplingSet or a sorted 1-D point array.  Rows are assembled
    block-by-block over the basis columns; entries outside an element's
    support are exactly zero.
    """
    x = _flat_points(s)
    m = w.half_width
    is_sorted = bool(np.all(np.diff(x) >= 0))
    out = np.zeros((x.size, len(basis)))
    for kind, n, col, ls in basis.blocks():
        pos = float(n) if kind == "translate" else n / 2.0
        if is_sorted:
            i0 = np.searchsorted(x, pos - m, side="left")
            i1 = np.searchsorted(x, pos + m, side="right")
            sel = slice(i0, i1)
        else:
            sel = np.abs(x - pos) <= m
        xs = x[sel]
        if xs.size == 0:
            continue
        if kind == "translate":
            out[sel, col] = w.profile(xs - n)
        else:
            out[sel, col : col + ls.size] = _slot_block(xs, n, ls, w)
    return out


def reconstruct_lsq(d: SampledData, basis: BasisSet, w: Window, tol: float | None = None) -> np.ndarray:
    """Least-squares coefficients pinv(U) @ y for the sampled data."""
    if len(d.points) < 1:
        raise ValueError("need at least one sample")
    u = design_matrix(d.points, basis, w)
    return pinv_solve(u, d.values, tol=tol)


def synthesize(c, basis: BasisSet, w: Window) -> Callable:
    """Return the function x -> sum_i c_i psi_i(x).

    Evaluation cost per point is bounded by the number of elements
    supported there.  The returned callable accepts scalars or arrays.
    """
    c = np.asarray(c, dtype=float)
    if c.shape != (len(basis),):
        raise ValueError("coefficient length must match basis dimension")
    m = w.half_width
    blocks = list(basis.blocks())

    def f(x):
        xa = np.atleast_1d(np.asarray(x, dtype=float))
        out = np.zeros_like(xa)
        for kind, n, col, ls in blocks:
            pos = float(n) if kind == "translate" else n / 2.0
            mask = np.abs(xa - pos) <= m
            if not np.any(mask):
                continue
            xs = xa[mask]
            if kind == "translate":
                out[mask] += c[col] * w.profile(xs - n)
            else:
                out[mask] += _slot_block(xs, n, ls, w) @ c[col : col + ls.size]
        return float(out[0]) if np.ndim(x) == 0 else out

    return f


def _support_grid(lo: float, hi: float, step: float) -> np.ndarray:
    n_sub = max(1, math.ceil((hi - lo) / step - 1e-9))
    return np.linspace(lo, hi, n_sub + 1)


def project_quadrature(f: Callable, basis: BasisSet, w: Window, step: float = 1e-4) -> np.ndarray:
    """Coefficients <f, psi_i> of the orthogonal projection of f.

    Each inner product is integrated by the trapezoidal rule on a grid of
    spacing <= step aligned with the element's support; accuracy is
    O(step^2) for piecewise-smooth f.  ``f`` must accept arrays.
    """
    if step <= 0:
        raise ValueError("step must be positive")
    m = w.half_width
    out = np.zeros(len(basis))
    for kind, n, col, ls in basis.blocks():
        pos = float(n) if kind == "translate" else n / 2.0
        grid = _support_grid(pos - m, pos + m, step)
        h = grid[1] - grid[0]
        fv = np.asarray(f(grid), dtype=float)
        if kind == "translate":
            out[col] = np.trapezoid(fv * w.profile(grid - n), dx=h)
        else:
            block = _slot_block(grid, n, ls, w)
            out[col : col + ls.size] = np.trapezoid(fv[:, None] * block, dx=h, axis=0)
    return out


def _cell_integrals(cells: np.ndarray, basis: BasisSet, w: Window, step: float) -> np.ndarray:
    """K[j, i] = integral of psi_i over cell j, by per-cell trapezoids."""
    m = w.half_width
    out = np.zeros((cells.shape[0], len(basis)))
    for kind, n, col, ls in basis.blocks():
        pos = float(n) if kind == "translate" else n / 2.0
        lo = np.maximum(cells[:, 0], pos - m)
        hi = np.minimum(cells[:, 1], pos + m)
        for j in np.nonzero(hi > lo)[0]:
            grid = _support_grid(lo[j], hi[j], step)
            h = grid[1] - grid[0]
            if kind == "translate":
                out[j, col] = np.trapezoid(w.profile(grid - n), dx=h)
            else:
                block = _slot_block(grid, n, ls, w)
                out[j, col : col + ls.size] = np.trapezoid(block, dx=h, axis=0)
    return out


def adaptive_weights_reconstruct(
    d: SampledData,
    weights: CellWeights,
    basis: BasisSet,
    w: Window,
    iterations: int = 50,
    quad_step: float = 1e-4,
    callback: Callable[[int, float], None] | None = None,
) -> np.ndarray:
    """Neumann-series inversion of the step-function approximation operator.

    The first term is A(y): project the step function taking value y_j on
    cell j onto the space.  Subsequent terms apply Id - A to the previous
    one by sampling its synthesis at the data points, and the returned
    coefficients are the sum of the first ``iterations`` terms.  Residual
    norms decay geometrically (ratio gamma < 1) when the sampling set
    passes the gap condition; three consecutive increases abort the
    iteration.

    ``callback(iteration, residual_norm)`` is invoked once per term.
    """
    if iterations < 1:
        raise ValueError("need at least one iteration")
    cells = weights.flat_cells()
    if cells.shape[0] != len(d.points):
        raise ValueError("weights do not match the sampled points")
    k_cells = _cell_integrals(cells, basis, w, quad_step)
    u = design_matrix(d.points, basis, w)

    term = k_cells.T @ d.values
    total = term.copy()
    last = float(np.linalg.norm(term))
    if callback is not None:
        callback(0, last)
    growth = 0
    for it in range(1, iterations):
        term = term - k_cells.T @ (u @ term)
        total += term
        norm = float(np.linalg.norm(term))
        if callback is not None:
            callback(it, norm)
        growth = growth + 1 if norm > last else 0
        if growth >= 3:
            raise ConvergenceError(
                f"residual grew for 3 consecutive iterations (last {norm:.3e}); "
                "the sampling set likely violates the gap condition"
            )
        last = norm
    return total


def write_coefficients_csv(c, basis: BasisSet, path) -> None:
    """Write rows (i, n, l, value) in column order."""
    c = np.asarray(c, dtype=float)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["i", "n", "l", "value"])
        for i, (n, l) in enumerate(basis):
            writer.writerow([i, n, l, repr(float(c[i]))])
