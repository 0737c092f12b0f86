"""Vinogradov mean-value counting and prime phase sums.

A 2t-tuple J in [k]^2t solves the s-equation Vinogradov system when
j_1^m + ... + j_t^m = j_{t+1}^m + ... + j_{2t}^m for every m <= s; it is
diagonal when its two halves are equal as multisets (the system's indexing
is read as equal t-halves). Counting enumerates half-tuples as multisets
with multinomial weights and groups them by their exact integer power-sum
vector, so totals are exact:

    total    = sum over power-sum values v of N_v^2,
    diagonal = sum over multisets M of (arrangements of M)^2,

where N_v is the number of ordered t-tuples with power sums v.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from numba import njit

from .sieve import SieveTable

VMV_BUDGET = 10**8
EXPANSION_BUDGET = 10**6
_BRUTE_BUDGET = 2 * 10**6


@dataclass
class VmvCount:
    """Solution and diagonal counts for the system at parameters (k, s, t)."""

    k: int
    s: int
    t: int
    total: int
    diagonal: int

    def __post_init__(self):
        assert self.diagonal <= self.total
        assert self.total >= self.k**self.t  # identically ordered halves solve

    @property
    def ratio(self) -> float:
        return self.total / self.k**self.t


@njit(cache=True)
def _multiset_keys(k, s, t, n_multisets, radix, factorials):
    """Power-sum keys and multinomial weights of nondecreasing t-tuples."""
    keys = np.empty(n_multisets, dtype=np.int64)
    weights = np.empty(n_multisets, dtype=np.int64)
    j = np.ones(t, dtype=np.int64)
    idx = 0
    while True:
        # multinomial weight t! / prod(run lengths!)
        w = factorials[t]
        run = 1
        for i in range(1, t):
            if j[i] == j[i - 1]:
                run += 1
            else:
                w //= factorials[run]
                run = 1
        w //= factorials[run]
        # packed power-sum key
        key = np.int64(0)
        for m in range(1, s + 1):
            ps = np.int64(0)
            for i in range(t):
                ps += j[i] ** m
            key = key * radix[m - 1] + (ps - t)
        keys[idx] = key
        weights[idx] = w
        idx += 1
        # advance the nondecreasing odometer
        i = t - 1
        while i >= 0 and j[i] == k:
            i -= 1
        if i < 0:
            break
        j[i] += 1
        for l in range(i + 1, t):
            j[l] = j[i]
    return keys[:idx], weights[:idx]


def count_vmv(k: int, s: int, t: int) -> VmvCount:
    """Exact total and diagonal solution counts.

    Enumerates the C(k+t-1, t) half-multisets (meet in the middle over the
    two halves via exact integer power-sum keys). Raises when k^t exceeds
    the documented budget or the key packing would overflow int64.
    """
    if k < 1 or s < 1 or t < 1:
        raise ValueError("k, s, t must be positive")
    if k**t > VMV_BUDGET:
        raise ValueError(f"k^t = {k**t} exceeds budget {VMV_BUDGET}")
    radix = [t * (k**m - 1) + 1 for m in range(1, s + 1)]
    if math.prod(radix) >= 2**62:
        raise ValueError("power-sum key packing would overflow; reduce k or s")
    n_multisets = math.comb(k + t - 1, t)
    factorials = np.array([math.factorial(i) for i in range(t + 1)], dtype=np.int64)
    keys, weights = _multiset_keys(
        k, s, t, n_multisets, np.asarray(radix, dtype=np.int64), factorials
    )
    order = np.argsort(keys, kind="stable")
    keys = keys[order]
    weights = weights[order]
    boundaries = np.flatnonzero(np.diff(keys)) + 1
    group_sums = np.add.reduceat(weights, np.concatenate([[0], boundaries]))
    total = int(np.sum(group_sums.astype(object) ** 2))
    diagonal = int(np.sum(weights.astype(object) ** 2))
    return VmvCount(k=k, s=s, t=t, total=total, diagonal=diagonal)


def count_vmv_bruteforce(k: int, s: int, t: int) -> VmvCount:
    """Direct enumeration of [k]^(2t), the independent oracle."""
    if k ** (2 * t) > _BRUTE_BUDGET:
        raise ValueError("brute-force budget exceeded")
    grids = np.indices((k,) * (2 * t)).reshape(2 * t, -1) + 1
    left = grids[:t]
    right = grids[t:]
    ok = np.ones(grids.shape[1], dtype=bool)
    for m in range(1, s + 1):
        ok &= (left.astype(np.int64) ** m).sum(axis=0) == (
            right.astype(np.int64) ** m
        ).sum(axis=0)
    total = int(np.count_nonzero(ok))
    diag = np.all(np.sort(left, axis=0) == np.sort(right, axis=0), axis=0)
    return VmvCount(k=k, s=s, t=t, total=total, diagonal=int(np.count_nonzero(diag)))


def count_diagonal(k: int, t: int) -> int:
    """Number of 2t-tuples whose halves are equal multisets.

    Computed combinatorially: sum over multisets M of size t from [k] of
    (arrangements of M)^2, which equals (t!)^2 [x^t] (sum_m x^m / (m!)^2)^k.
    The truncated series power is taken exactly over rationals.
    """
    if t < 0 or t > 8:
        raise ValueError("t must lie in [0, 8]")
    if k < 1:
        raise ValueError("k must be >= 1")
    base = [Fraction(1, math.factorial(m) ** 2) for m in range(t + 1)]

    def mul(a, b):
        out = [Fraction(0)] * (t + 1)
        for i, ai in enumerate(a):
            if ai:
                for j in range(0, t + 1 - i):
                    out[i + j] += ai * b[j]
        return out

    result = [Fraction(1)] + [Fraction(0)] * t
    power = base
    e = k
    while e:
        if e & 1:
            result = mul(result, power)
        e >>= 1
        if e:
            power = mul(power, power)
    coeff = result[t] * math.factorial(t) ** 2
    assert coeff.denominator == 1
    return int(coeff)


def _fixed_point(x: float) -> np.uint64:
    return np.uint64(int(round((x % 1.0) * 2.0**64)) % 2**64)


def _phase_unit(frac_u64: np.ndarray) -> np.ndarray:
    return np.exp(2j * np.pi * (frac_u64.astype(np.float64) / 2.0**64))


def prime_phase_sum(
    alpha: float,
    beta: float,
    d1: int,
    d2: int,
    P: int,
    table: SieveTable,
) -> complex:
    """Mean over primes P/2 < p <= P of e(alpha p^2 d2 + beta p d1).

    Phase fractions are computed exactly for the 1/2^64 quantizations of
    alpha d2 and beta d1 (wrapping uint64 arithmetic), so the d1 = d2 = 0
    case is exactly 1 and integer phases collapse exactly.
    """
    if P > table.limit:
        raise ValueError("P exceeds the sieve limit")
    primes = table.primes_in(P // 2, P)
    primes = primes[2 * primes > P]
    if primes.size == 0:
        raise ValueError(f"no primes in ({P/2:.0f}, {P}]")
    a2 = _fixed_point(alpha * d2)
    b1 = _fixed_point(beta * d1)
    p = primes.astype(np.uint64)
    frac = a2 * p * p + b1 * p
    return complex(np.mean(_phase_unit(frac)))


def power_mean_expansion_check(
    word,
    alpha: float,
    beta: float,
    P: int,
    t: int,
    table: SieveTable,
) -> tuple[float, float]:
    """Evaluate E_p |E_{h<=k} e(alpha (ph)^2 + beta ph) eps_h|^(2t) two ways.

    The direct route averages the 2t-th power of the windowed sum over
    primes in (P/2, P]. The expanded route enumerates all tuples
    J in [k]^(2t) and combines prime means of the matching phase products.
    Both routes read the same per-(p, h) unit phases, so they agree to
    floating rearrangement error. Returns (direct, expanded).
    """
    eps = np.asarray(word, dtype=np.complex128)
    k = eps.size
    if k < 1:
        raise ValueError("word must be nonempty")
    if t < 1:
        raise ValueError("t must be >= 1")
    if k ** (2 * t) > EXPANSION_BUDGET:
        raise ValueError(
            f"k^(2t) = {k ** (2 * t)} exceeds the expansion budget "
            f"{EXPANSION_BUDGET}"
        )
    if np.max(np.abs(eps)) > 1 + 1e-12:
        raise ValueError("word entries must have modulus <= 1")
    if P > table.limit:
        raise ValueError("P exceeds the sieve limit")
    primes = table.primes_in(P // 2, P)
    primes = primes[2 * primes > P]
    if primes.size == 0:
        raise ValueError(f"no primes in ({P/2:.0f}, {P}]")

    a_fix = _fixed_point(alpha)
    b_fix = _fixed_point(beta)
    p = primes.astype(np.uint64)[:, None]
    h = np.arange(1, k + 1, dtype=np.uint64)[None, :]
    ph = p * h
    z = _phase_unit(a_fix * ph * ph + b_fix * ph)  # shared phase matrix

    w = (z * eps[None, :]).sum(axis=1) / k
    direct = float(np.mean(np.abs(w) ** (2 * t)))

    acc = 0.0 + 0.0j
    n_primes = z.shape[0]
    for J in itertools.product(range(k), repeat=2 * t):
        prod = np.ones(n_primes, dtype=np.complex128)
        phase = 1.0 + 0.0j
        for i in range(t):
            prod *= z[:, J[i]]
            phase *= eps[J[i]]
        for i in range(t, 2 * t):
            prod *= np.conj(z[:, J[i]])
            phase *= np.conj(eps[J[i]])
        acc += phase * prod.mean()
    expanded = float((acc / k ** (2 * t)).real)
    return direct, expanded
