"""Sampling sets on half-integer cells, gap analysis, and adaptive weights.

Samples are grouped by the half-integer interval that contains them:
group k holds the points x_{k/2,j} = k/2 + eta with eta in [0, 1/2].
The sufficient sampling condition couples the maximal gap delta_{k/2}
inside each group to the active local bandwidth

    mu_{k/2} = max_{n in (k-2m, k+2m+1)} (b(n) + 1)

through delta_{k/2} < pi / (mu_{k/2} D), with D the window constant.
Two generators are provided: ``gen_gap_set`` places equispaced points at
exactly the gap bound, and ``gen_rho_set`` places floor(rho mu) + 1
equispaced points per group for an oversampling parameter rho > 0 (the
bound corresponds to rho = D/pi).

``adaptive_weights`` builds the midpoint-cell partition of each group;
the cell lengths are the weights of the weighted sampling inequality and
drive the adaptive-weights reconstruction.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .window import sufficiency_constant
from .wilson import BandwidthSeq, SpaceSpec, _int_ceil, _int_floor

__all__ = [
    "SamplingSet",
    "CellWeights",
    "GroupReport",
    "SufficiencyReport",
    "coverage",
    "mu_active",
    "gen_gap_set",
    "gen_rho_set",
    "verify_sufficiency",
    "adaptive_weights",
    "write_samples_csv",
]


class SamplingSet:
    """Points grouped by half-integer interval, sorted within each group.

    Group k may include the right endpoint (k+1)/2 (the generators emit
    it when the spacing divides the group evenly); duplicate points
    within a group are rejected as degenerate.
    """

    def __init__(self, groups: Mapping[int, Iterable[float]]):
        cleaned: dict[int, np.ndarray] = {}
        for k, pts in sorted(groups.items()):
            arr = np.asarray(list(pts), dtype=float)
            if arr.size == 0:
                continue
            if np.any(np.diff(arr) <= 0):
                raise ValueError(f"group {k}: points must be strictly increasing")
            eta = arr - k / 2.0
            if eta[0] < -1e-12 or eta[-1] > 0.5 + 1e-12:
                raise ValueError(f"group {k}: points leave [k/2, (k+1)/2]")
            cleaned[int(k)] = arr
        if not cleaned:
            raise ValueError("sampling set is empty")
        self.groups: dict[int, np.ndarray] = cleaned

    def __len__(self) -> int:
        return sum(g.size for g in self.groups.values())

    def points(self) -> np.ndarray:
        """All points flattened in (group, position) order."""
        return np.concatenate([self.groups[k] for k in sorted(self.groups)])

    def group_keys(self) -> list[int]:
        return sorted(self.groups)

    def labelled(self) -> Iterable[tuple[int, int, float]]:
        """Yield (k, j, x) rows in flattening order, j counted from 0."""
        for k in sorted(self.groups):
            for j, x in enumerate(self.groups[k]):
                yield k, j, float(x)


@dataclass(frozen=True)
class CellWeights:
    """Midpoint-cell partition of each sampled half-interval.

    edges[k] runs from k/2 to (k+1)/2 through the midpoints of
    consecutive samples; weights[k] are the cell lengths and sum to 1/2
    per group.  Flattened weights align with SamplingSet.points().
    """

    edges: Mapping[int, np.ndarray]
    weights: Mapping[int, np.ndarray]

    def flat_weights(self) -> np.ndarray:
        return np.concatenate([self.weights[k] for k in sorted(self.weights)])

    def flat_cells(self) -> np.ndarray:
        """(L, 2) array of cell [start, end) pairs in flattening order."""
        rows = []
        for k in sorted(self.edges):
            e = self.edges[k]
            rows.append(np.column_stack([e[:-1], e[1:]]))
        return np.concatenate(rows, axis=0)


@dataclass(frozen=True)
class GroupReport:
    """Per-group verdict of the sufficient sampling condition."""

    k: int
    mu: int
    bound: float
    observed_gap: float
    passes: bool
    strict: bool
    note: str = ""


@dataclass(frozen=True)
class SufficiencyReport:
    constant: float  # window constant D
    groups: tuple[GroupReport, ...]

    @property
    def all_pass(self) -> bool:
        return all(g.passes for g in self.groups)

    @property
    def all_strict(self) -> bool:
        return all(g.strict for g in self.groups)

    def to_json_dict(self) -> dict:
        return {
            "window_constant": self.constant,
            "all_pass": self.all_pass,
            "all_strict": self.all_strict,
            "groups": [
                {
                    "k": g.k,
                    "mu": g.mu,
                    "gap_bound": g.bound,
                    "observed_gap": g.observed_gap,
                    "pass": g.passes,
                    "strict": g.strict,
                    "note": g.note,
                }
                for g in self.groups
            ],
        }


def coverage(lo: float, hi: float) -> range:
    """Indices k whose half-interval [k/2, (k+1)/2) meets [lo, hi)."""
    if not hi > lo:
        raise ValueError("empty sampling interval")
    return range(_int_floor(2 * lo - 1) + 1, _int_ceil(2 * hi))


def mu_active(k: int, b: BandwidthSeq, m: float) -> int:
    """Active local bandwidth mu_{k/2} = max over F_k of b(n) + 1.

    F_k = (k - 2m, k + 2m + 1) is the set of positions whose window
    translates reach into [k/2, (k+1)/2); b reads 0 outside its support,
    so mu is always >= 1.
    """
    n_lo = _int_floor(k - 2 * m) + 1
    n_hi = _int_ceil(k + 2 * m + 1) - 1
    return max(b(n) for n in range(n_lo, n_hi + 1)) + 1


def gen_gap_set(spec: SpaceSpec, cov: Iterable[int]) -> SamplingSet:
    """Equispaced samples per half-interval at the exact gap bound.

    Group k gets x_j = k/2 + delta * j for j = 0..floor(1/(2 delta)) with
    delta = pi / (mu_{k/2} D).  Placing the gap exactly at the bound is
    the densest equispaced choice consistent with the sufficient
    condition (verification accepts equality).
    """
    d_const = sufficiency_constant(spec.window)
    b, m = spec.bandwidths, spec.window.half_width
    groups = {}
    for k in cov:
        mu = mu_active(k, b, m)
        delta = math.pi / (mu * d_const)
        j_max = math.floor(1.0 / (2.0 * delta))
        groups[k] = k / 2.0 + delta * np.arange(j_max + 1)
    return SamplingSet(groups)


def gen_rho_set(spec: SpaceSpec, cov: Iterable[int], rho: float) -> SamplingSet:
    """Equispaced samples with oversampling parameter rho > 0.

    Group k gets x_j = k/2 + (1/2) j / (rho mu_{k/2}) for
    j = 0..floor(rho mu_{k/2}); when rho mu is an integer the last point
    lands on (k+1)/2.  The sufficient condition is guaranteed only for
    rho >= D/pi, but much smaller rho works in practice.
    """
    if rho <= 0:
        raise ValueError("rho must be positive")
    b, m = spec.bandwidths, spec.window.half_width
    groups = {}
    for k in cov:
        mu = mu_active(k, b, m)
        j_max = math.floor(rho * mu + 1e-9)
        groups[k] = k / 2.0 + 0.5 * np.arange(j_max + 1) / (rho * mu)
    return SamplingSet(groups)


def verify_sufficiency(
    s: SamplingSet, spec: SpaceSpec, cov: Iterable[int] | None = None
) -> SufficiencyReport:
    """Check the gap condition group by group.

    The observed gap of a group is the largest of: the consecutive
    in-group differences, the offset of the first point from k/2, and the
    offset of the last point from (k+1)/2 (the interval endpoints act as
    virtual samples of the midpoint-cell partition).  A group passes when
    the observed gap is at most pi / (mu_{k/2} D); ``strict`` reports the
    literal theorem hypothesis (strict gap inequality and half-gap
    boundary offsets).  Missing groups inside the coverage fail with the
    whole half-interval as their gap.
    """
    d_const = sufficiency_constant(spec.window)
    b, m = spec.bandwidths, spec.window.half_width
    if cov is None:
        keys = s.group_keys()
        cov = range(keys[0], keys[-1] + 1)
    reports = []
    for k in cov:
        mu = mu_active(k, b, m)
        bound = math.pi / (mu * d_const)
        pts = s.groups.get(k)
        if pts is None:
            reports.append(
                GroupReport(k, mu, bound, 0.5, False, False, "no samples in half-interval")
            )
            continue
        off_first = pts[0] - k / 2.0
        off_last = (k + 1) / 2.0 - pts[-1]
        gap = float(np.max(np.diff(pts))) if pts.size > 1 else 0.0
        observed = max(gap, off_first, off_last)
        passes = observed <= bound * (1 + 1e-12)
        strict = (
            pts.size > 1
            and gap < bound
            and off_first <= gap / 2.0 + 1e-15
            and off_last <= gap / 2.0 + 1e-15
        )
        reports.append(GroupReport(k, mu, bound, observed, passes, strict))
    return SufficiencyReport(d_const, tuple(reports))


def adaptive_weights(s: SamplingSet) -> CellWeights:
    """Midpoint cells and their lengths for every group.

    Cell edges are k/2, the midpoints of consecutive samples, and
    (k+1)/2; weights are the cell lengths, one per sample, summing to
    exactly 1/2 per group.
    """
    edges = {}
    weights = {}
    for k, pts in s.groups.items():
        e = np.empty(pts.size + 1)
        e[0] = k / 2.0
        e[-1] = (k + 1) / 2.0
        e[1:-1] = 0.5 * (pts[1:] + pts[:-1])
        w = np.diff(e)
        edges[k] = e
        weights[k] = w
    return CellWeights(edges=edges, weights=weights)


def write_samples_csv(s: SamplingSet, path, values: np.ndarray | None = None) -> None:
    """Write rows (k, j, x[, y]) in flattening order."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        if values is None:
            writer.writerow(["k", "j", "x"])
            for k, j, x in s.labelled():
                writer.writerow([k, j, repr(x)])
        else:
            writer.writerow(["k", "j", "x", "y"])
            for (k, j, x), y in zip(s.labelled(), values):
                writer.writerow([k, j, repr(x), repr(float(y))])
