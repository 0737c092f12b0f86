"""Generators for the sequence models the statistics are evaluated against.

Every generator returns a SymbolicSequence: a lazily evaluable 1-bounded
function on [1, length] with a declared alphabet. Generators are pure in
(parameters, seed); randomized models draw from numpy Philox streams keyed
by (seed, block index), so a sequence is reproducible bit for bit no matter
how it is sliced.

Irrational parameters are accepted as 64-bit floats. Polynomial-phase
models quantize them to 1/2^64 fixed point and evaluate phases in wrapping
uint64 arithmetic, which keeps the fractional part exact for n well beyond
the sieve ceiling; the statistics measured here are continuous in the
parameters at the tolerances used.
"""

from __future__ import annotations

import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .sieve import SieveTable

_TWO64 = float(2**64)


@dataclass
class SymbolicSequence:
    """A 1-bounded sequence on [1, length] with a declared alphabet.

    alphabet is one of 'signs' (+-1), 'signs0' ({-1, 0, 1}), 'circle'
    (|v| = 1) or 'disk' (|v| <= 1). block(lo, hi) returns values for
    n in [lo, hi): int8 for sign alphabets, complex128 otherwise.
    """

    length: int
    alphabet: str
    label: str
    seed: int | None = None
    block_fn: Callable = field(default=None, repr=False)

    @property
    def finite_alphabet(self) -> bool:
        return self.alphabet in ("signs", "signs0")

    def block(self, lo: int, hi: int) -> np.ndarray:
        if lo < 1 or hi > self.length + 1 or lo > hi:
            raise ValueError(
                f"block [{lo}, {hi}) outside sequence range [1, {self.length}]"
            )
        return self.block_fn(lo, hi)

    def padded_complex(self, n_hi: int, pad: int = 0) -> np.ndarray:
        """Values as complex128 indexed by n on [1, n_hi], zero-padded.

        The returned array has length n_hi + pad + 1 with index 0 unused;
        the pad slots past n_hi stay zero (scratch room for sliding scans
        whose overshooting reads cancel out of every reported value).
        """
        if n_hi > self.length:
            raise ValueError(f"need values to {n_hi}, length is {self.length}")
        out = np.zeros(n_hi + pad + 1, dtype=np.complex128)
        out[1 : n_hi + 1] = self.block(1, n_hi + 1)
        return out


def make_liouville(table: SieveTable) -> SymbolicSequence:
    """The Liouville function read off a sieve table."""

    def block(lo, hi):
        return table.liouville[lo:hi]

    return SymbolicSequence(
        length=table.limit, alphabet="signs", label="liouville", block_fn=block
    )


def make_mobius(table: SieveTable) -> SymbolicSequence:
    """The Moebius function read off a sieve table ({-1, 0, 1} values)."""

    def block(lo, hi):
        return table.mobius[lo:hi]

    return SymbolicSequence(
        length=table.limit, alphabet="signs0", label="mobius", block_fn=block
    )


def make_periodic(pattern, length: int = 2**62) -> SymbolicSequence:
    """b(n) = pattern[(n-1) mod q] for a nonempty 1-bounded pattern."""
    pat = np.asarray(pattern)
    if pat.size == 0:
        raise ValueError("periodic pattern must be nonempty")
    if np.max(np.abs(pat.astype(np.complex128))) > 1 + 1e-12:
        raise ValueError("pattern entries must have modulus <= 1")
    q = pat.size
    if np.isrealobj(pat) and set(np.unique(pat)).issubset({-1, 1}):
        pat_store = pat.astype(np.int8)
        alphabet = "signs"
    elif np.allclose(np.abs(pat.astype(np.complex128)), 1.0):
        pat_store = pat.astype(np.complex128)
        alphabet = "circle"
    else:
        pat_store = pat.astype(np.complex128)
        alphabet = "disk"

    def block(lo, hi):
        idx = (np.arange(lo - 1, hi - 1, dtype=np.int64)) % q
        return pat_store[idx]

    return SymbolicSequence(
        length=length, alphabet=alphabet, label=f"periodic(q={q})", block_fn=block
    )


def make_sturmian(alpha: float, length: int = 2**62) -> SymbolicSequence:
    """b(n) = 2(floor((n+1) alpha) - floor(n alpha)) - 1, a +-1 sequence.

    For irrational alpha this is the classical linear-word-growth model
    with exactly k+1 distinct windows of length k.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must lie in (0, 1)")

    def block(lo, hi):
        n = np.arange(lo, hi, dtype=np.float64)
        d = np.floor((n + 1) * alpha) - np.floor(n * alpha)
        return (2 * d - 1).astype(np.int8)

    return SymbolicSequence(
        length=length, alphabet="signs",
        label=f"sturmian(alpha={alpha!r})", block_fn=block,
    )


def make_quadratic_phase(
    alpha: float, beta: float, length: int = 2**62
) -> SymbolicSequence:
    """b(n) = e(alpha n^2 + beta n) on the unit circle.

    alpha and beta are quantized to 1/2^64; the fractional part of the
    phase is computed exactly in wrapping uint64 arithmetic, so the error
    is at most n^2 / 2^64 regardless of range.
    """
    a_fix = np.uint64(int(round((alpha % 1.0) * _TWO64)) % 2**64)
    b_fix = np.uint64(int(round((beta % 1.0) * _TWO64)) % 2**64)

    def block(lo, hi):
        n = np.arange(lo, hi, dtype=np.uint64)
        with np.errstate(over="ignore"):
            frac = (a_fix * n * n + b_fix * n).astype(np.float64) / _TWO64
        return np.exp(2j * np.pi * frac)

    return SymbolicSequence(
        length=length, alphabet="circle",
        label=f"quadratic_phase(alpha={alpha!r},beta={beta!r})", block_fn=block,
    )


def make_thue_morse(length: int = 2**62) -> SymbolicSequence:
    """b(n) = (-1)^(binary digit sum of n)."""

    def block(lo, hi):
        n = np.arange(lo, hi, dtype=np.uint64)
        pc = np.bitwise_count(n).astype(np.int8)
        return np.where(pc & 1, np.int8(-1), np.int8(1))

    return SymbolicSequence(
        length=length, alphabet="signs", label="thue_morse", block_fn=block
    )


def make_noise(length: int, seed: int) -> SymbolicSequence:
    """Seeded i.i.d. +-1 noise, sliceable deterministically."""
    chunk = 1 << 20

    def block(lo, hi):
        out = np.empty(hi - lo, dtype=np.int8)
        c0 = (lo - 1) // chunk
        c1 = (hi - 2) // chunk if hi > lo else c0
        pos = 0
        for ci in range(c0, c1 + 1):
            base = ci * chunk + 1
            g = np.random.Generator(np.random.Philox(key=(seed, ci)))
            vals = g.integers(0, 2, size=chunk).astype(np.int8) * 2 - 1
            a = max(lo, base)
            b = min(hi, base + chunk)
            out[pos : pos + (b - a)] = vals[a - base : b - base]
            pos += b - a
        return out

    return SymbolicSequence(
        length=length, alphabet="signs", label=f"noise(seed={seed})",
        seed=seed, block_fn=block,
    )


# ---------------------------------------------------------------------------
# block random-phase sign model
# ---------------------------------------------------------------------------

def default_block_rule(start: int, n_max: int) -> int:
    """Block length max(256, isqrt(start)), clamped to isqrt(n_max).

    Long blocks from the outset keep desk-scale windows (k, H up to a few
    hundred) inside single blocks for most of the log mass, which is what
    makes the model's square-wave structure visible at these ranges.
    """
    cap = max(2, math.isqrt(n_max))
    return max(2, min(max(256, math.isqrt(start)), cap))


def log_block_rule(start: int, n_max: int) -> int:
    """Slowly growing blocks of length max(2, floor(log2 start))."""
    return max(2, start.bit_length() - 1)


@dataclass
class _BlockLayout:
    starts: np.ndarray  # int64, block start positions
    lengths: np.ndarray  # int64


def _build_layout(n_max: int, rule: Callable) -> _BlockLayout:
    starts = []
    lengths = []
    s = 1
    while s <= n_max:
        length = int(rule(s, n_max))
        if length < 1:
            raise ValueError(f"block rule produced length {length} at start {s}")
        starts.append(s)
        lengths.append(length)
        s += length
    return _BlockLayout(
        np.asarray(starts, dtype=np.int64), np.asarray(lengths, dtype=np.int64)
    )


def make_sawin_model(
    degree: int,
    length: int,
    seed: int,
    block_rule: Callable | None = None,
) -> SymbolicSequence:
    """Block random-phase sign model: +-1 rounding of a random polynomial
    phase drawn independently on each block.

    The range [1, length] splits into blocks by block_rule. On the block
    starting at s a polynomial P(u) = c_0 + c_1 u + ... + c_d u^d (d =
    degree, u = n - s the block offset) gets uniform coefficients from a
    Philox stream keyed by (seed, block index), and the value at n is
    sign(cos(2 pi P(u))). Degree 1 is the linear model; higher degrees give
    the polynomial variants. Phases are evaluated in float64, so keep
    (block length)^degree well under 2^53.
    """
    if not 1 <= degree <= 4:
        raise ValueError("degree must be between 1 and 4")
    rule = block_rule or default_block_rule
    layout = _build_layout(length, rule)

    def block(lo, hi):
        out = np.empty(hi - lo, dtype=np.int8)
        bi = bisect_right(layout.starts, lo) - 1
        pos = lo
        while pos < hi:
            s = int(layout.starts[bi])
            blen = int(layout.lengths[bi])
            g = np.random.Generator(np.random.Philox(key=(seed, bi)))
            coeffs = g.random(degree + 1)
            a = pos
            b = min(hi, s + blen)
            u = np.arange(a - s, b - s, dtype=np.float64)
            phase = np.full(u.shape, coeffs[degree])
            for j in range(degree - 1, -1, -1):
                phase = phase * u + coeffs[j]
            vals = np.where(
                np.cos(2 * np.pi * (phase % 1.0)) > 0, np.int8(1), np.int8(-1)
            )
            out[a - lo : b - lo] = vals
            pos = b
            bi += 1
        return out

    return SymbolicSequence(
        length=length, alphabet="signs",
        label=f"sawin(degree={degree},seed={seed})", seed=seed, block_fn=block,
    )


# ---------------------------------------------------------------------------
# ticker tape
# ---------------------------------------------------------------------------

@dataclass
class TickerTapeSchedule:
    """Sparse template placements across growing scales.

    scales[i] = (N_i, H_i) with N_i increasing and N_i > H_i. starts[i]
    holds window anchors n confined to (N_{i-1}, N_i - H_i], pairwise at
    least H_i apart; template_ids[i] picks a library entry per anchor. The
    window anchored at n emits template[h-1] at position n + h for
    h <= H_i, so every nonzero stretch of the output is a translate of a
    library template (truncated to its scale's H).
    """

    scales: list
    starts: list
    template_ids: list
    library: list

    def validate(self) -> None:
        if len(self.scales) != len(self.starts) or len(self.scales) != len(
            self.template_ids
        ):
            raise ValueError("scales, starts and template_ids must align")
        prev_n = 0
        for i, (n_i, h_i) in enumerate(self.scales):
            if h_i < 1 or n_i <= h_i:
                raise ValueError(f"scale {i}: need N_i > H_i >= 1")
            if n_i <= prev_n:
                raise ValueError("scale ranges must increase")
            st = np.asarray(self.starts[i], dtype=np.int64)
            ids = np.asarray(self.template_ids[i], dtype=np.int64)
            if st.size != ids.size:
                raise ValueError(f"scale {i}: starts and template ids must align")
            if st.size:
                if np.any(np.diff(st) < h_i):
                    raise ValueError(
                        f"scale {i}: windows overlap (starts closer than H_i)"
                    )
                if st[0] <= prev_n or st[-1] > n_i - h_i:
                    raise ValueError(
                        f"scale {i}: anchors must lie in ({prev_n}, {n_i - h_i}]"
                    )
                if np.any(ids < 0) or np.any(ids >= len(self.library)):
                    raise ValueError(f"scale {i}: template id out of range")
            for t in self.library:
                if len(t) < h_i:
                    raise ValueError(
                        f"library template shorter than scale window H={h_i}"
                    )
            prev_n = n_i

    @property
    def length(self) -> int:
        return int(self.scales[-1][0])


def make_ticker_tape(schedule: TickerTapeSchedule) -> SymbolicSequence:
    """Materialize the ticker tape: templates on scheduled windows, 0 off them."""
    schedule.validate()
    lib = [np.asarray(t) for t in schedule.library]
    signs_only = all(
        np.isrealobj(t) and set(np.unique(t)).issubset({-1, 0, 1}) for t in lib
    )
    alphabet = "signs0" if signs_only else "disk"
    dtype = np.int8 if signs_only else np.complex128
    lib = [t.astype(dtype) for t in lib]

    def block(lo, hi):
        out = np.zeros(hi - lo, dtype=dtype)
        for (n_i, h_i), st, ids in zip(
            schedule.scales, schedule.starts, schedule.template_ids
        ):
            st = np.asarray(st, dtype=np.int64)
            if st.size == 0:
                continue
            # windows cover (anchor, anchor + h_i]; find those meeting [lo, hi)
            first = bisect_left(st.tolist(), lo - h_i)
            for j in range(first, st.size):
                anchor = int(st[j])
                if anchor + 1 >= hi:
                    break
                a = max(lo, anchor + 1)
                b = min(hi, anchor + h_i + 1)
                if a < b:
                    tmpl = lib[int(np.asarray(ids)[j])]
                    out[a - lo : b - lo] = tmpl[a - anchor - 1 : b - anchor - 1]
        return out

    return SymbolicSequence(
        length=schedule.length, alphabet=alphabet, label="ticker_tape",
        block_fn=block,
    )


def default_ticker_schedule(
    n_scales: int = 3,
    n_templates: int = 3,
    seed: int = 1,
    first_scale: int = 4096,
    growth: int = 16,
    fill: float = 0.5,
) -> TickerTapeSchedule:
    """A valid random schedule: geometric scales, H_i ~ N_i^(1/2)/4,
    random +-1 templates, anchors greedily H_i-separated at the given fill."""
    rng = np.random.Generator(np.random.Philox(key=seed))
    scales = []
    n_prev = 0
    n_i = first_scale
    for _ in range(n_scales):
        h_i = max(4, math.isqrt(n_i) // 4)
        scales.append((n_i, h_i))
        n_i *= growth
    h_max = max(h for _, h in scales)
    library = [
        (rng.integers(0, 2, size=h_max).astype(np.int8) * 2 - 1)
        for _ in range(n_templates)
    ]
    starts = []
    ids = []
    n_prev = 0
    for n_i, h_i in scales:
        anchors = []
        pos = n_prev + 1
        while pos <= n_i - h_i:
            if rng.random() < fill:
                anchors.append(pos)
                pos += h_i + int(rng.integers(0, h_i))
            else:
                pos += h_i
        starts.append(np.asarray(anchors, dtype=np.int64))
        ids.append(rng.integers(0, n_templates, size=len(anchors)))
        n_prev = n_i
    return TickerTapeSchedule(
        scales=scales, starts=starts, template_ids=ids, library=library
    )
