"""Dense real linear algebra for the reconstruction pipeline.

Thin, contract-checked layer over LAPACK (via numpy): economy SVD and a
minimum-norm least-squares solver with the conventional singular-value
cutoff tol = max(rows, cols) * eps * sigma_max.  Inputs are validated
(2-D, real, finite); the factorization contracts (reconstruction
residual, factor orthonormality, agreement with normal equations) are
enforced by the test suite against independent oracles.
"""

from __future__ import annotations

import numpy as np

__all__ = ["svd", "pinv_solve"]


def _as_matrix(a) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got ndim={a.ndim}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    return a


def svd(a) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Economy SVD: returns (u, s, vt) with a = u @ diag(s) @ vt.

    Singular values are in descending order; u and vt have orthonormal
    columns / rows.
    """
    return np.linalg.svd(_as_matrix(a), full_matrices=False)


def pinv_solve(a, y, tol: float | None = None) -> np.ndarray:
    """Minimum-norm least-squares solution c = pinv(a) @ y.

    Singular values at or below ``tol`` are treated as zero;
    the default is the conventional cutoff
    max(rows, cols) * machine_eps * sigma_max.  ``y`` may be a vector or
    a (rows, nrhs) matrix of stacked right-hand sides.
    """
    a = _as_matrix(a)
    y = np.asarray(y, dtype=float)
    if y.shape[0] != a.shape[0]:
        raise ValueError(f"rhs length {y.shape[0]} != matrix rows {a.shape[0]}")
    if not np.all(np.isfinite(y)):
        raise ValueError("rhs entries must be finite")
    u, s, vt = np.linalg.svd(a, full_matrices=False)
    if tol is None:
        smax = s[0] if s.size else 0.0
        tol = max(a.shape) * np.finfo(float).eps * smax
    keep = s > tol
    uty = u.T @ y
    scaled = np.zeros_like(uty)
    scaled[keep] = (uty[keep].T / s[keep]).T
    return vt.T @ scaled
