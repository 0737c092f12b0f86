"""Frequency subsets of [0, 1) for windowed exponential-sum suprema.

Three variants: a uniform grid (finite, evaluated exactly), an interval
cover (the continuum case, evaluated on a grid intersected with the cover
plus per-interval midpoints, then polished per window), and a finite list.

Cantor-type covers: the ratio-r construction keeps the two end subintervals
of relative length r at every level, so depth m gives 2^m intervals of
length r^m and box dimension log 2 / log(1/r). The thinning map D_n removes
a centered ball of diameter |J|/n from each interval J, leaving two pieces
of length |J| (n-1) / (2n).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

# cover interval count is at most COVER_CONSTANT * (k/eps')^dimension
COVER_CONSTANT = 2.0


@dataclass
class FrequencySet:
    """A subset of [0,1): uniform grid, interval cover, or finite list."""

    kind: str  # 'grid' | 'cover' | 'list'
    resolution: int = 0
    intervals: np.ndarray | None = None  # (m, 2) rows [lo, hi)
    values: np.ndarray | None = None
    label: str = ""

    @classmethod
    def grid(cls, resolution: int) -> "FrequencySet":
        if resolution < 1:
            raise ValueError("grid resolution must be positive")
        return cls(kind="grid", resolution=resolution, label=f"grid:{resolution}")

    @classmethod
    def cover(cls, intervals, label: str = "") -> "FrequencySet":
        arr = np.atleast_2d(np.asarray(intervals, dtype=np.float64))
        fs = cls(
            kind="cover", intervals=arr,
            label=label or f"cover:m={arr.shape[0]}",
        )
        fs.validate()
        return fs

    @classmethod
    def from_values(cls, values, label: str = "") -> "FrequencySet":
        arr = np.sort(np.asarray(values, dtype=np.float64))
        if arr.size == 0:
            raise ValueError("frequency list must be nonempty")
        if arr.min() < 0 or arr.max() >= 1:
            raise ValueError("frequencies must lie in [0, 1)")
        return cls(kind="list", values=arr, label=label or f"list:{arr.size}")

    def validate(self) -> None:
        if self.kind == "cover":
            iv = self.intervals
            if iv is None or iv.size == 0:
                raise ValueError("interval cover must be nonempty")
            if np.any(iv[:, 0] >= iv[:, 1]):
                raise ValueError("intervals must satisfy lo < hi")
            if iv[0, 0] < 0 or iv[-1, 1] > 1:
                raise ValueError("intervals must lie inside [0, 1)")
            if np.any(iv[1:, 0] < iv[:-1, 1]):
                raise ValueError("intervals must be sorted and disjoint")
        elif self.kind == "grid":
            if self.resolution < 1:
                raise ValueError("grid resolution must be positive")

    @property
    def finite(self) -> bool:
        return self.kind in ("grid", "list")

    @property
    def measure(self) -> float:
        if self.kind == "cover":
            return float(np.sum(self.intervals[:, 1] - self.intervals[:, 0]))
        return 0.0

    def sample(self, per_unit: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Evaluation frequencies with per-frequency refinement brackets.

        Finite variants return their own points with zero-width brackets.
        Covers return the global grid of the given density intersected with
        each interval, plus the interval midpoint (so no interval is ever
        missed); brackets are grid cells clamped to the owning interval.
        """
        if self.kind == "grid":
            f = np.arange(self.resolution, dtype=np.float64) / self.resolution
            return f, f.copy(), f.copy()
        if self.kind == "list":
            f = self.values
            return f, f.copy(), f.copy()
        step = 1.0 / per_unit
        freqs = []
        los = []
        his = []
        for lo, hi in self.intervals:
            i0 = int(math.ceil(lo / step))
            i1 = int(math.floor((hi - 1e-15) / step))
            pts = [step * i for i in range(i0, i1 + 1) if lo <= step * i < hi]
            pts.append((lo + hi) / 2)
            for x in sorted(set(pts)):
                freqs.append(x)
                los.append(max(lo, x - step))
                his.append(min(hi, x + step))
        return (
            np.asarray(freqs, dtype=np.float64),
            np.asarray(los, dtype=np.float64),
            np.asarray(his, dtype=np.float64),
        )


def cantor_box_dimension(ratio: float = 1 / 3) -> float:
    """Box dimension log 2 / log(1/ratio) of the ratio-r Cantor set."""
    if not 0 < ratio < 0.5:
        raise ValueError("ratio must lie in (0, 1/2)")
    return math.log(2.0) / math.log(1.0 / ratio)


def cantor_cover(depth: int, ratio: float = 1 / 3) -> FrequencySet:
    """Depth-m cover of the ratio-r Cantor set: 2^m intervals of length r^m."""
    if not 0 < ratio < 0.5:
        raise ValueError("ratio must lie in (0, 1/2)")
    if depth < 0:
        raise ValueError("depth must be >= 0")
    intervals = np.array([[0.0, 1.0]])
    for _ in range(depth):
        length = (intervals[:, 1] - intervals[:, 0]) * ratio
        left = np.stack([intervals[:, 0], intervals[:, 0] + length], axis=1)
        right = np.stack([intervals[:, 1] - length, intervals[:, 1]], axis=1)
        intervals = np.concatenate([left, right])
        intervals = intervals[np.argsort(intervals[:, 0])]
    label = f"cantor:r={ratio:.6g},depth={depth}"
    return FrequencySet.cover(intervals, label=label)


def cantor_cover_for_words(
    k: int, eps_prime: float, ratio: float = 1 / 3
) -> FrequencySet:
    """Cover of the Cantor set by intervals of length <= eps'/k.

    Uses the smallest depth with r^m <= eps'/k, so the interval count 2^m
    is at most COVER_CONSTANT * (k/eps')^d with d the box dimension.
    """
    if not 0 < eps_prime <= 1:
        raise ValueError("eps_prime must lie in (0, 1]")
    if k < 1:
        raise ValueError("k must be >= 1")
    target = eps_prime / k
    # smallest depth with ratio^depth <= target, robust to exact powers
    depth = 0
    length = 1.0
    while length > target * (1.0 + 1e-12):
        length *= ratio
        depth += 1
    cover = cantor_cover(depth, ratio)
    d = cantor_box_dimension(ratio)
    assert 2**depth <= math.ceil(COVER_CONSTANT * (k / eps_prime) ** d)
    return cover


def point_cover(alpha: float, k: int, eps_prime: float) -> FrequencySet:
    """Single-interval cover of a degenerate one-point set."""
    if not 0 <= alpha < 1:
        raise ValueError("alpha must lie in [0, 1)")
    hi = min(1.0, alpha + eps_prime / k)
    return FrequencySet.cover([[alpha, hi]], label=f"point:{alpha:.6g}")


def apply_Dn(cover: FrequencySet, n: int, repetitions: int = 1) -> FrequencySet:
    """Thin a cover by removing central balls of relative diameter 1/n.

    Every interval of length L splits into two of length L (n-1) / (2n);
    applied `repetitions` times.
    """
    if cover.kind != "cover":
        raise ValueError("apply_Dn needs an interval cover")
    if n < 2:
        raise ValueError("n must be >= 2")
    if repetitions < 0:
        raise ValueError("repetitions must be >= 0")
    intervals = cover.intervals.copy()
    for _ in range(repetitions):
        length = intervals[:, 1] - intervals[:, 0]
        keep = length * (n - 1) / (2 * n)
        left = np.stack([intervals[:, 0], intervals[:, 0] + keep], axis=1)
        right = np.stack([intervals[:, 1] - keep, intervals[:, 1]], axis=1)
        intervals = np.concatenate([left, right])
        intervals = intervals[np.argsort(intervals[:, 0])]
    return FrequencySet.cover(
        intervals, label=f"{cover.label}|D{n}^{repetitions}"
    )
