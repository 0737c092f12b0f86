"""Window extraction and counting for finite-alphabet sequences.

A word of length k anchored at n is the value vector (b(n+1), ..., b(n+k));
the anchor carries weight 1/n. Counting modes:

  * exact distinct words with occurrence counts and accumulated log mass,
  * words filtered by positive empirical log density (the per-scale maximum
    of mass / harmonic-normalizer must clear a threshold tau),
  * greedy sup-metric covers for eps-rounded counting on any alphabet.

Sign windows pack into uint64 codes (1 bit per symbol for +-1 sequences,
2 bits for {-1,0,1}), which keeps hashing fixed-width; dense bincount
accumulation is used when 2^k is comparable to the window count and a
sort/unique pass otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._kernels import greedy_sup_cover, word_mass_scan
from .logavg import harmonic_number

# dense per-code accumulators are worthwhile up to this alphabet-power
_DENSE_MAX_K = 22
# the sort/unique path materializes one uint64 code per window
_UNIQUE_MAX_WINDOWS = 30_000_000


@dataclass
class WordStats:
    """Distinct length-k words with counts and logarithmic mass."""

    k: int
    n_max: int
    codes: np.ndarray  # uint64 packed words
    counts: np.ndarray  # int64 occurrences
    masses: np.ndarray  # float64 accumulated 1/n
    total_log_mass: float
    alphabet: str

    @property
    def distinct(self) -> int:
        return int(self.codes.size)

    def words(self) -> np.ndarray:
        """Decode codes into a (distinct, k) matrix of symbol values."""
        return _decode(self.codes, self.k, self.alphabet)

    def as_dict(self) -> dict:
        out = {}
        decoded = self.words()
        for i in range(self.distinct):
            out[tuple(int(v) for v in decoded[i])] = (
                int(self.counts[i]),
                float(self.masses[i]),
            )
        return out


@dataclass
class WordProfile:
    """Per-word density data across a scale grid."""

    k: int
    scales: list
    codes: np.ndarray
    counts: np.ndarray
    masses: np.ndarray
    best_norm: np.ndarray  # max over scales of mass-so-far / H(N_j - k)
    alphabet: str


@dataclass
class GrowthReport:
    """Least-squares growth exponent of word counts s(k)."""

    ks: np.ndarray
    counts: np.ndarray
    fitted_exponent: float
    intercept: float
    residuals: np.ndarray
    below_quadratic: bool | None = None
    below_kt_eps: bool | None = None


def _encode_bits(seq, k: int, n_max: int) -> np.ndarray:
    """bits[pos] = 1 where seq(pos) = +1, over positions [1, n_max + k]."""
    vals = seq.block(1, n_max + k + 1)
    bits = np.zeros(n_max + k + 1, dtype=np.uint8)
    bits[1:] = vals == 1
    return bits


def _codes_signs(seq, k: int, n_max: int) -> np.ndarray:
    """uint64 window codes for a +-1 sequence, 1 bit per symbol."""
    vals = seq.block(1, n_max + k + 1)
    bits = (vals == 1).astype(np.uint64)
    codes = np.zeros(n_max, dtype=np.uint64)
    for h in range(1, k + 1):
        codes |= bits[h : h + n_max] << np.uint64(h - 1)
    return codes


def _codes_signs0(seq, k: int, n_max: int) -> np.ndarray:
    """uint64 window codes for a {-1,0,1} sequence, 2 bits per symbol."""
    vals = seq.block(1, n_max + k + 1)
    digits = (vals.astype(np.int64) + 1).astype(np.uint64)  # {0,1,2}
    codes = np.zeros(n_max, dtype=np.uint64)
    for h in range(1, k + 1):
        codes |= digits[h : h + n_max] << np.uint64(2 * (h - 1))
    return codes


def _decode(codes: np.ndarray, k: int, alphabet: str) -> np.ndarray:
    if alphabet == "signs":
        h = np.arange(k, dtype=np.uint64)
        bits = (codes[:, None] >> h[None, :]) & np.uint64(1)
        return bits.astype(np.int8) * 2 - 1
    h = np.arange(k, dtype=np.uint64)
    digits = (codes[:, None] >> (np.uint64(2) * h[None, :])) & np.uint64(3)
    return digits.astype(np.int8) - 1


def _check_mode(seq, k: int, n_max: int) -> str:
    if k < 1:
        raise ValueError("window length k must be >= 1")
    if not seq.finite_alphabet:
        raise ValueError(
            "exact word counting needs a finite alphabet; use "
            "count_words_eps_rounded for circle or disk sequences"
        )
    if n_max + k > seq.length:
        raise ValueError(
            f"windows reach position {n_max + k} beyond length {seq.length}"
        )
    if seq.alphabet == "signs":
        if k > 64:
            raise ValueError("sign windows support k <= 64")
        return "signs"
    if k > 31:
        raise ValueError("ternary windows support k <= 31")
    return "signs0"


def _anchor_scales(scales, k: int, n_max: int) -> tuple[np.ndarray, np.ndarray]:
    """Anchor cutoffs N_j - k and normalizers H(N_j - k) for usable scales."""
    bounds = []
    hs = []
    for n_j in scales:
        a = min(int(n_j) - k, n_max)
        if a >= 1:
            bounds.append(a)
            hs.append(harmonic_number(a))
    if not bounds or bounds[-1] != n_max:
        raise ValueError("largest scale must reach n_max + k and exceed k")
    b = np.asarray(bounds, dtype=np.int64)
    keep = np.concatenate([np.diff(b) > 0, [True]])
    return b[keep], np.asarray(hs, dtype=np.float64)[keep]


def word_density_profile(seq, k: int, scales) -> WordProfile:
    """Scan all windows up to the last scale, tracking per-scale densities.

    scales is an increasing list of range ends N_j; window anchors run to
    N_j - k at each scale and the normalizer is H(N_j - k), so per-scale
    normalized masses sum to 1.
    """
    scales = sorted(set(int(s) for s in scales))
    n_max = scales[-1] - k
    if n_max < 1:
        raise ValueError("largest scale must exceed the window length")
    mode = _check_mode(seq, k, n_max)
    bounds, hs = _anchor_scales(scales, k, n_max)

    if mode == "signs" and k <= _DENSE_MAX_K and 2**k <= 8 * n_max:
        bits = _encode_bits(seq, k, n_max)
        counts, masses, best = word_mass_scan(bits, k, n_max, bounds, hs)
        keep = np.flatnonzero(counts)
        return WordProfile(
            k=k, scales=scales,
            codes=keep.astype(np.uint64),
            counts=counts[keep], masses=masses[keep], best_norm=best[keep],
            alphabet="signs",
        )

    if n_max > _UNIQUE_MAX_WINDOWS:
        raise ValueError(
            f"window scan of {n_max} anchors exceeds the documented budget "
            f"({_UNIQUE_MAX_WINDOWS}) for k = {k}"
        )
    codes = _codes_signs(seq, k, n_max) if mode == "signs" else _codes_signs0(
        seq, k, n_max
    )
    uniq, inv = np.unique(codes, return_inverse=True)
    weights = 1.0 / np.arange(1, n_max + 1, dtype=np.float64)
    counts = np.bincount(inv, minlength=uniq.size).astype(np.int64)
    best = np.zeros(uniq.size, dtype=np.float64)
    masses = np.zeros(uniq.size, dtype=np.float64)
    prev = 0
    for bound, h_j in zip(bounds, hs):
        masses += np.bincount(
            inv[prev:bound], weights=weights[prev:bound], minlength=uniq.size
        )
        np.maximum(best, masses / h_j, out=best)
        prev = bound
    return WordProfile(
        k=k, scales=scales, codes=uniq, counts=counts, masses=masses,
        best_norm=best, alphabet=mode,
    )


def count_words(seq, k: int, n_max: int) -> WordStats:
    """Exact distinct-window statistics over anchors [1, n_max - k]."""
    profile = word_density_profile(seq, k, [n_max])
    return WordStats(
        k=k, n_max=n_max, codes=profile.codes, counts=profile.counts,
        masses=profile.masses, total_log_mass=harmonic_number(n_max - k),
        alphabet=profile.alphabet,
    )


def count_positive_density_words(seq, k: int, scales, tau: float) -> int:
    """Number of words whose per-scale max normalized log mass reaches tau."""
    if tau <= 0:
        raise ValueError("tau must be positive")
    profile = word_density_profile(seq, k, scales)
    return int(np.count_nonzero(profile.best_norm >= tau))


def count_words_eps_rounded(seq, k: int, eps: float, n_max: int) -> int:
    """Greedy sup-metric cover cardinality of the window set.

    Windows are scanned in anchor order; a window starts a new template
    unless an existing template is within eps in every coordinate. The
    result upper-bounds the minimal cover size. For finite alphabets the
    scan runs over distinct words in first-occurrence order, which yields
    the same template set as the full window scan.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    if k < 1:
        raise ValueError("window length k must be >= 1")
    if n_max - k < 1:
        raise ValueError("n_max must exceed the window length")
    anchors = n_max - k
    if seq.finite_alphabet:
        mode = _check_mode(seq, k, anchors)
        codes = (
            _codes_signs(seq, k, anchors)
            if mode == "signs"
            else _codes_signs0(seq, k, anchors)
        )
        _, first = np.unique(codes, return_index=True)
        order = np.sort(first)
        windows = _decode(codes[order], k, mode).astype(np.complex128)
    else:
        if anchors * k > 50_000_000:
            raise ValueError("window matrix exceeds the documented budget")
        vals = seq.block(1, n_max + 1).astype(np.complex128)
        # window at anchor n covers positions n+1 .. n+k (0-based: n .. n+k-1)
        idx = np.arange(anchors)[:, None] + np.arange(1, k + 1)[None, :]
        windows = np.ascontiguousarray(vals[idx])
    return int(greedy_sup_cover(windows, float(eps)))


def fit_growth(ks, counts, t: float | None = None, eps: float | None = None) -> GrowthReport:
    """Least-squares exponent of log s(k) against log k.

    Classification flags compare the measured counts against k^2 and,
    when t and eps are supplied, against k^(t - eps). Intended for four or
    more k values; fewer than two distinct k is an error.
    """
    ks = np.asarray(ks, dtype=np.float64)
    counts = np.asarray(counts, dtype=np.float64)
    if ks.size != counts.size:
        raise ValueError("ks and counts must align")
    if np.unique(ks).size < 2:
        raise ValueError("need at least 2 distinct k values")
    if np.any(counts <= 0):
        raise ValueError("counts must be positive for a log-log fit")
    lx = np.log(ks)
    ly = np.log(counts)
    slope, intercept = np.polyfit(lx, ly, 1)
    residuals = ly - (slope * lx + intercept)
    below_quadratic = bool(np.all(counts <= ks**2))
    below_kt = None
    if t is not None and eps is not None:
        below_kt = bool(np.all(counts <= ks ** (t - eps)))
    return GrowthReport(
        ks=ks, counts=counts, fitted_exponent=float(slope),
        intercept=float(intercept), residuals=residuals,
        below_quadratic=below_quadratic, below_kt_eps=below_kt,
    )
