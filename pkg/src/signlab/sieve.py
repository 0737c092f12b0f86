"""Sieved multiplicative-function tables.

A SieveTable holds the Liouville function, the Moebius function and the
smallest prime factor for every n up to a limit, built in one linear-sieve
pass. Values are stored as one byte per n (int8 for the +-1 / {-1,0,1}
functions, uint32 for smallest prime factors); at the documented ceiling of
2 * 10^8 the table needs about 1.2 GB, which fits comfortably on a laptop.

Tables can be written to a small versioned binary cache; the layout is
fixed little-endian so the files are bit-exact across platforms.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ._kernels import linear_sieve

# hard ceiling: uint32 spf storage and ~6 bytes/n of resident memory
MAX_LIMIT = 200_000_000

_CACHE_MAGIC = b"SLSV"
_CACHE_VERSION = 1
# array layouts recorded in the header so readers can verify them
_CACHE_LAYOUT = b"liouville:<i1;mobius:<i1;spf:<u4"


@dataclass
class SieveTable:
    """Packed values of lambda(n), mu(n) and spf(n) on [1, limit].

    Arrays are indexed directly by n (index 0 is unused padding). They are
    immutable by convention after the build and safe to share across threads
    for read-only queries.
    """

    limit: int
    liouville: np.ndarray  # int8, +-1
    mobius: np.ndarray  # int8, {-1, 0, 1}
    spf: np.ndarray  # uint32, smallest prime factor, 0 for n < 2
    primes: np.ndarray = field(repr=False)  # int64, primes <= limit

    def liouville_at(self, n: int) -> int:
        return int(self.liouville[n])

    def mobius_at(self, n: int) -> int:
        return int(self.mobius[n])

    def spf_at(self, n: int) -> int:
        return int(self.spf[n])

    def is_prime(self, n: int) -> bool:
        return n >= 2 and int(self.spf[n]) == n

    def omega_total(self, n: int) -> int:
        """Number of prime factors counted with multiplicity."""
        if n < 1 or n > self.limit:
            raise ValueError(f"n={n} outside sieve range [1, {self.limit}]")
        count = 0
        while n > 1:
            n //= int(self.spf[n])
            count += 1
        return count

    def primes_in(self, lo: int, hi: int) -> np.ndarray:
        """Primes p with lo < p <= hi."""
        i = np.searchsorted(self.primes, lo, side="right")
        j = np.searchsorted(self.primes, hi, side="right")
        return self.primes[i:j]


def build_sieve(limit: int) -> SieveTable:
    """Build the sieve table on [1, limit].

    Deterministic and single-threaded; raises ValueError when the limit is
    zero or exceeds the in-memory ceiling (segmented sieving above the
    ceiling is out of scope, the ceiling is simply documented).
    """
    if limit < 1:
        raise ValueError("sieve limit must be >= 1")
    if limit > MAX_LIMIT:
        raise ValueError(f"sieve limit {limit} exceeds ceiling {MAX_LIMIT}")
    spf, lam, mu, primes = linear_sieve(limit)
    return SieveTable(limit=limit, liouville=lam, mobius=mu, spf=spf, primes=primes)


def save_sieve(table: SieveTable, path: str | Path) -> None:
    """Write the table to a versioned binary cache (little-endian layout)."""
    path = Path(path)
    header = struct.pack(
        "<4sIQH", _CACHE_MAGIC, _CACHE_VERSION, table.limit, len(_CACHE_LAYOUT)
    )
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(_CACHE_LAYOUT)
        fh.write(table.liouville.astype("<i1", copy=False).tobytes())
        fh.write(table.mobius.astype("<i1", copy=False).tobytes())
        fh.write(table.spf.astype("<u4", copy=False).tobytes())


def load_sieve(path: str | Path) -> SieveTable:
    """Read a table written by save_sieve, validating magic and version."""
    path = Path(path)
    with open(path, "rb") as fh:
        header = fh.read(struct.calcsize("<4sIQH"))
        magic, version, limit, layout_len = struct.unpack("<4sIQH", header)
        if magic != _CACHE_MAGIC:
            raise ValueError(f"{path}: not a sieve cache (bad magic {magic!r})")
        if version != _CACHE_VERSION:
            raise ValueError(f"{path}: unsupported cache version {version}")
        layout = fh.read(layout_len)
        if layout != _CACHE_LAYOUT:
            raise ValueError(f"{path}: unexpected array layout {layout!r}")
        n = limit + 1
        lam = np.frombuffer(fh.read(n), dtype="<i1").copy()
        mu = np.frombuffer(fh.read(n), dtype="<i1").copy()
        spf = np.frombuffer(fh.read(4 * n), dtype="<u4").copy()
    primes = np.flatnonzero(spf == np.arange(n, dtype=np.uint32)).astype(np.int64)
    primes = primes[primes >= 2]
    return SieveTable(limit=limit, liouville=lam, mobius=mu, spf=spf, primes=primes)


def liouville_trial_division(n: int) -> int:
    """O(sqrt n) evaluation of lambda(n), used as an independent oracle."""
    if n < 1:
        raise ValueError("n must be >= 1")
    count = 0
    m = n
    p = 2
    while p * p <= m:
        while m % p == 0:
            m //= p
            count += 1
        p += 1
    if m > 1:
        count += 1
    return -1 if count % 2 else 1


def mobius_trial_division(n: int) -> int:
    """O(sqrt n) evaluation of mu(n), used as an independent oracle."""
    if n < 1:
        raise ValueError("n must be >= 1")
    m = n
    p = 2
    count = 0
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            count += 1
        p += 1
    if m > 1:
        count += 1
    return -1 if count % 2 else 1
