"""Wilson basis indexing, evaluation, and enumeration of local spaces.

The basis elements are

    psi_{n,0}(x) = g(x - n)                                   n in Z,
    psi_{n,l}(x) = sqrt(2) cos(2 pi l x) g(x - n/2)           l >= 1, l+n even,
    psi_{n,l}(x) = sqrt(2) sin(2 pi l x) g(x - n/2)           l >= 1, l+n odd.

For l >= 1 the complex form (1/sqrt2)(e^{2 pi i l x} + (-1)^{l+n} e^{-2 pi i l x})
reduces to the cosine branch when l+n is even; when l+n is odd it equals
i sqrt(2) sin(2 pi l x), and we drop the unimodular factor i to keep all
arithmetic real.  This preserves orthonormality and the spanned real space.

A bandwidth sequence b truncates the frequency ladder: the local space on
an interval keeps psi_{n,l} with l <= b(n).  ``enumerate_basis`` lists the
spanning elements of such a space in a fixed linear order (ascending n,
the integer translate first, then l = 1..b(n)), which makes the column
enumeration of reconstruction matrices reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Sequence

import numpy as np

from .window import SQRT2, Window, cosine_window

__all__ = [
    "WilsonIndex",
    "BandwidthSeq",
    "SpaceSpec",
    "BasisSet",
    "eval_psi",
    "enumerate_basis",
    "dim",
    "WINDOW_REGISTRY",
]

# snapping tolerance for interval-membership tests of integer indices
_EPS = 1e-9


def _int_ceil(v: float) -> int:
    return math.ceil(v - _EPS)


def _int_floor(v: float) -> int:
    return math.floor(v + _EPS)


class WilsonIndex(NamedTuple):
    """Index (n, l) of a Wilson element.

    l = 0 addresses the integer translate g(x - n); l >= 1 addresses the
    modulated element at half-integer position n/2.
    """

    n: int
    l: int

    @property
    def position(self) -> float:
        return float(self.n) if self.l == 0 else self.n / 2.0


@dataclass(frozen=True)
class BandwidthSeq:
    """Total map n -> b(n) >= 0 with finite support.

    Stores b on the contiguous range [offset, offset + len(values));
    outside that range b(n) = 0.  The bound B is the maximum stored value.
    """

    offset: int
    values: tuple[int, ...]

    def __post_init__(self):
        if any(v < 0 or int(v) != v for v in self.values):
            raise ValueError("bandwidths must be non-negative integers")
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))

    @property
    def bound(self) -> int:
        """B = max_n b(n)."""
        return max(self.values, default=0)

    @property
    def support(self) -> range:
        return range(self.offset, self.offset + len(self.values))

    def __call__(self, n: int) -> int:
        i = n - self.offset
        if 0 <= i < len(self.values):
            return self.values[i]
        return 0

    def to_json_dict(self) -> dict:
        return {"offset": self.offset, "values": list(self.values)}

    @classmethod
    def from_json_dict(cls, d: dict) -> "BandwidthSeq":
        return cls(offset=int(d["offset"]), values=tuple(d["values"]))


WINDOW_REGISTRY = {"cosine": cosine_window}


@dataclass(frozen=True)
class SpaceSpec:
    """A local variable-bandwidth space: window, bandwidths, interval, mode.

    interior mode spans the elements whose support lies inside
    [alpha, beta]; overlapping mode spans every element whose support
    overlaps (alpha, beta) on a set of positive measure.
    """

    window: Window
    bandwidths: BandwidthSeq
    interval: tuple[float, float]
    mode: str = "interior"

    def __post_init__(self):
        alpha, beta = self.interval
        if not beta > alpha:
            raise ValueError("interval must satisfy beta > alpha")
        if self.mode not in ("interior", "overlapping"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.mode == "interior" and beta - alpha < 2 * self.window.half_width - _EPS:
            raise ValueError("interior mode needs beta - alpha >= 2m")
        object.__setattr__(self, "interval", (float(alpha), float(beta)))

    def to_json_dict(self) -> dict:
        return {
            "interval": list(self.interval),
            "mode": self.mode,
            "window": self.window.name,
            "bandwidths": self.bandwidths.to_json_dict(),
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "SpaceSpec":
        name = d["window"]
        if name not in WINDOW_REGISTRY:
            raise ValueError(f"unknown window {name!r}; registered: {sorted(WINDOW_REGISTRY)}")
        return cls(
            window=WINDOW_REGISTRY[name](),
            bandwidths=BandwidthSeq.from_json_dict(d["bandwidths"]),
            interval=(float(d["interval"][0]), float(d["interval"][1])),
            mode=d.get("mode", "interior"),
        )


class BasisSet:
    """Ordered basis of a local space with an (n, l) <-> column bijection.

    The order is ascending in n; at each n the integer translate (n, 0)
    comes first (when present), followed by l = 1..b(n) (when the
    half-integer slot is present).  Column numbering is 0-based.
    """

    def __init__(self, indices: Sequence[WilsonIndex]):
        self.indices: tuple[WilsonIndex, ...] = tuple(WilsonIndex(*i) for i in indices)
        self._pos = {idx: i for i, idx in enumerate(self.indices)}
        if len(self._pos) != len(self.indices):
            raise ValueError("duplicate indices in basis")
        self.ns = np.array([i.n for i in self.indices], dtype=int)
        self.ls = np.array([i.l for i in self.indices], dtype=int)

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self) -> Iterator[WilsonIndex]:
        return iter(self.indices)

    def __getitem__(self, i: int) -> WilsonIndex:
        return self.indices[i]

    def index_of(self, n: int, l: int) -> int:
        """Column of element (n, l); KeyError if not enumerated."""
        return self._pos[WilsonIndex(n, l)]

    def blocks(self) -> Iterator[tuple[str, int, int, np.ndarray]]:
        """Yield maximal column runs sharing one window translate.

        Yields ("translate", n, col, ls) with ls == [0] for an integer
        translate, or ("slot", n, col, ls) with the contiguous l >= 1 run
        at half-integer position n/2.  Runs are in column order; together
        they partition the columns.
        """
        i = 0
        total = len(self.indices)
        while i < total:
            n, l = self.indices[i]
            if l == 0:
                yield "translate", n, i, np.array([0])
                i += 1
            else:
                j = i
                while j < total and self.indices[j].n == n and self.indices[j].l != 0:
                    j += 1
                yield "slot", n, i, self.ls[i:j]
                i = j


def eval_psi(idx: WilsonIndex | tuple[int, int], x, w: Window):
    """Evaluate the Wilson element psi_{n,l} at x (scalar or array).

    Exactly zero outside the support [pos - m, pos + m], where pos = n for
    l = 0 and pos = n/2 for l >= 1.
    """
    n, l = idx
    if l < 0:
        raise ValueError("frequency index l must be >= 0")
    if l == 0:
        return w.value(np.asarray(x, dtype=float) - n)
    xa = np.asarray(x, dtype=float)
    mod = np.cos if (l + n) % 2 == 0 else np.sin
    out = SQRT2 * mod(2.0 * np.pi * l * xa) * w.profile(xa - n / 2.0)
    return float(out) if np.ndim(x) == 0 else out


def _interior_ranges(spec: SpaceSpec) -> tuple[range, range]:
    alpha, beta = spec.interval
    m = spec.window.half_width
    lo, hi = alpha + m, beta - m
    translates = range(_int_ceil(lo), _int_floor(hi) + 1)
    slots = range(_int_ceil(2 * lo), _int_floor(2 * hi) + 1)
    return translates, slots


def _overlapping_ranges(spec: SpaceSpec) -> tuple[range, range]:
    # positive-measure overlap: [pos - m, pos + m] and (alpha, beta) share
    # an open interval, i.e. alpha - m < pos < beta + m
    alpha, beta = spec.interval
    m = spec.window.half_width
    translates = range(_int_floor(alpha - m) + 1, _int_ceil(beta + m))
    slots = range(_int_floor(2 * (alpha - m)) + 1, _int_ceil(2 * (beta + m)))
    return translates, slots


def enumerate_basis(spec: SpaceSpec) -> BasisSet:
    """Enumerate the Wilson elements spanning the local space of ``spec``.

    interior: translates with n in [alpha+m, beta-m] and slots with
    n/2 in [alpha+m, beta-m], l = 1..b(n).  overlapping: every element
    whose support overlaps (alpha, beta), same frequency truncation.
    The result may be empty (short interval with b = 0).
    """
    if spec.mode == "interior":
        translates, slots = _interior_ranges(spec)
    else:
        translates, slots = _overlapping_ranges(spec)
    b = spec.bandwidths
    indices: list[WilsonIndex] = []
    n_all = sorted(set(translates) | set(slots))
    tset = set(translates)
    sset = set(slots)
    for n in n_all:
        if n in tset:
            indices.append(WilsonIndex(n, 0))
        if n in sset:
            indices.extend(WilsonIndex(n, l) for l in range(1, b(n) + 1))
    return BasisSet(indices)


def dim(spec: SpaceSpec) -> int:
    """Dimension of the local space (= number of enumerated elements)."""
    return len(enumerate_basis(spec))
