"""Logarithmic averaging and finite-range density proxies.

The logarithmic average of phi over [1, N] weights n by 1/n and normalizes
by the harmonic number H(N). Upper logarithmic density has no finite-N
analog, so it is proxied by the maximum of per-scale log averages over a
geometric grid of scales; the geometric grid mirrors the way log weights
spread mass evenly over decades.

All weighted sums use compensated (Kahan) summation and are accumulated
chunk by chunk in a fixed order, so results are reproducible to better
than 1e-10 per 1e8 terms regardless of threading.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ._kernels import harmonic_sum, kahan_weighted_sum_c16, kahan_weighted_sum_f8

_CHUNK = 1 << 20


@lru_cache(maxsize=256)
def harmonic_number(n: int) -> float:
    """H(n) = sum_{m<=n} 1/m with compensated summation."""
    if n < 1:
        raise ValueError("harmonic_number needs n >= 1")
    return float(harmonic_sum(n))


@dataclass
class LogAverage:
    """A logarithmic average over [1, N]: value and the weight it divides by."""

    N: int
    value: complex
    weight_total: float

    @property
    def abs(self) -> float:
        return abs(self.value)


@dataclass
class DensityEstimate:
    """Per-scale log averages of an indicator and their maximum."""

    grid: list
    per_scale: np.ndarray
    upper: float


def _weighted_sum(seq, n_max: int) -> complex:
    """sum_{n<=n_max} seq(n)/n, chunked, Kahan inside each chunk."""
    total = 0.0 + 0.0j
    for lo in range(1, n_max + 1, _CHUNK):
        hi = min(n_max, lo + _CHUNK - 1)
        block = seq.block(lo, hi + 1)
        if np.iscomplexobj(block):
            total += kahan_weighted_sum_c16(
                np.ascontiguousarray(block, dtype=np.complex128), lo
            )
        else:
            total += complex(
                kahan_weighted_sum_f8(
                    np.ascontiguousarray(block, dtype=np.float64), lo
                )
            )
    return total


def log_average(seq, n_max: int) -> LogAverage:
    """E^log_{n<=n_max} seq(n) as a LogAverage.

    Exact weighted mean of the emitted values; |value| <= 1 whenever the
    sequence is 1-bounded.
    """
    if n_max < 1:
        raise ValueError("log_average needs n_max >= 1")
    if n_max > seq.length:
        raise ValueError(f"n_max={n_max} exceeds sequence length {seq.length}")
    weight = harmonic_number(n_max)
    value = _weighted_sum(seq, n_max) / weight
    if not np.iscomplexobj(seq.block(1, 2)):
        value = complex(value.real, 0.0)
    return LogAverage(N=n_max, value=value, weight_total=weight)


def default_scales(n_max: int, first: int = 128) -> list:
    """Geometric scale grid first, 2*first, ... ending exactly at n_max."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    scales = []
    s = first
    while s < n_max:
        scales.append(s)
        s *= 2
    scales.append(n_max)
    return scales


def upper_log_density(indicator, scales) -> DensityEstimate:
    """Finite-range limsup proxy for the log density of a 0/1 indicator.

    Computes the log average of the indicator at every scale in the
    increasing grid and reports the maximum as the upper density.
    """
    scales = list(scales)
    if not scales:
        raise ValueError("scale list must be nonempty")
    if any(b <= a for a, b in zip(scales, scales[1:])):
        raise ValueError("scales must be strictly increasing")
    if scales[-1] > indicator.length:
        raise ValueError("largest scale exceeds the sequence length")
    per_scale = np.zeros(len(scales))
    acc = 0.0 + 0.0j
    prev = 0
    for j, bound in enumerate(scales):
        for lo in range(prev + 1, bound + 1, _CHUNK):
            hi = min(bound, lo + _CHUNK - 1)
            block = np.ascontiguousarray(
                indicator.block(lo, hi + 1), dtype=np.float64
            )
            if block.min() < -1e-12 or block.max() > 1 + 1e-12:
                raise ValueError("indicator values must lie in {0, 1}")
            acc += kahan_weighted_sum_f8(block, lo)
        per_scale[j] = acc.real / harmonic_number(bound)
        prev = bound
    return DensityEstimate(
        grid=scales, per_scale=per_scale, upper=float(per_scale.max())
    )
