"""Dirichlet decomposition of multiplicative functions.

Any multiplicative function a with unit-modulus values on primes splits as
a Dirichlet convolution a = a1 * a2 with a1 completely multiplicative
(a1(p) = a(p)) and a2 supported on squarefull prime powers. On prime powers
the factor a2 is forced by the recursion

    a2(p^k) = a(p^k) - sum_{0 <= i < k} a(p)^(k-i) a2(p^i),

which gives a2(p) = 0 and a2(p^2) = a(p^2) - a(p)^2. The classical instance
is mu = lambda * a2 with a2(d^2) = mu(d).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numba import njit


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def _primes_up_to(ceiling: int, primes: np.ndarray | None) -> np.ndarray:
    if primes is not None:
        return np.asarray(primes[primes <= ceiling], dtype=np.int64)
    sieve = np.ones(ceiling + 1, dtype=bool)
    sieve[:2] = False
    for i in range(2, int(math.isqrt(ceiling)) + 1):
        if sieve[i]:
            sieve[i * i :: i] = False
    return np.flatnonzero(sieve).astype(np.int64)


@dataclass
class MultiplicativeSpec:
    """A multiplicative function described by its prime-power values.

    prime_power_values maps (p, k) to f(p^k). Lookup falls through in
    order: explicit entry, prime_value_default for k = 1, the power rule
    value(p)**k when completely_multiplicative is set, then zero when
    zero_outside is set (for sparsely supported factors), otherwise a
    KeyError. All stored values must lie in the closed unit disk.
    """

    prime_power_values: dict = field(default_factory=dict)
    completely_multiplicative: bool = False
    zero_outside: bool = False
    prime_value_default: complex | None = None
    # the functions under study live in the unit disk; the squarefull factor
    # of a decomposition may exceed it and turns this check off
    unit_bounded: bool = True
    modulus_tol: float = 1e-12

    def validate(self) -> None:
        """Check key sanity, the unit-disk bound and complete-mult consistency."""
        for (p, k), v in self.prime_power_values.items():
            if k < 1 or not _is_prime(p):
                raise ValueError(f"invalid prime-power key ({p}, {k})")
            if self.unit_bounded and abs(v) > 1.0 + self.modulus_tol:
                raise ValueError(f"value at ({p}, {k}) has modulus {abs(v):.6f} > 1")
            if self.completely_multiplicative and k > 1:
                want = self.prime_power_value(p, 1) ** k
                if abs(v - want) > 1e-9:
                    raise ValueError(
                        f"inconsistent completely multiplicative values at "
                        f"({p}, {k}): stored {v}, implied {want}"
                    )

    def prime_power_value(self, p: int, k: int) -> complex:
        key = (p, k)
        if key in self.prime_power_values:
            return complex(self.prime_power_values[key])
        if k == 1 and self.prime_value_default is not None:
            return complex(self.prime_value_default)
        if self.completely_multiplicative:
            return self.prime_power_value(p, 1) ** k
        if self.zero_outside:
            return 0.0 + 0.0j
        raise KeyError(f"spec has no value at prime power ({p}, {k})")


def liouville_spec() -> MultiplicativeSpec:
    """lambda as a spec: completely multiplicative, -1 at every prime."""
    return MultiplicativeSpec(completely_multiplicative=True, prime_value_default=-1.0)


def mobius_spec() -> MultiplicativeSpec:
    """mu as a spec: -1 at every prime, 0 at every higher prime power."""
    return MultiplicativeSpec(zero_outside=True, prime_value_default=-1.0)


def identity_spec() -> MultiplicativeSpec:
    """The convolution identity delta_1 (vanishes at every prime power)."""
    return MultiplicativeSpec(zero_outside=True)


@njit(cache=True)
def _values_dp(spf, ppval):
    """Multiplicative extension f(n) over [1, len-1] from prime-power values."""
    n_max = len(spf) - 1
    f = np.zeros(n_max + 1, dtype=np.complex128)
    pp = np.zeros(n_max + 1, dtype=np.int64)
    if n_max >= 1:
        f[1] = 1.0 + 0.0j
    for n in range(2, n_max + 1):
        p = np.int64(spf[n])
        m = n // p
        if m % p == 0:
            pp[n] = pp[m] * p
        else:
            pp[n] = p
        f[n] = f[n // pp[n]] * ppval[pp[n]]
    return f


def spec_values(spec: MultiplicativeSpec, n_max: int, spf: np.ndarray) -> np.ndarray:
    """Evaluate the multiplicative function on [1, n_max] (complex array).

    spf must cover [1, n_max]; missing prime-power values raise unless the
    spec declares them implicitly.
    """
    spec.validate()
    ppval = np.zeros(n_max + 1, dtype=np.complex128)
    idx = np.arange(n_max + 1, dtype=np.int64)
    primes = idx[2:][spf[2 : n_max + 1].astype(np.int64) == idx[2:]]
    for p in primes:
        p = int(p)
        q = p
        k = 1
        while q <= n_max:
            ppval[q] = spec.prime_power_value(p, k)
            q *= p
            k += 1
    return _values_dp(spf[: n_max + 1].astype(np.uint32), ppval)


def decompose(
    a: MultiplicativeSpec,
    prime_power_ceiling: int,
    primes: np.ndarray | None = None,
) -> tuple[MultiplicativeSpec, MultiplicativeSpec]:
    """Split a into (completely multiplicative a1, squarefull-supported a2).

    Both factors are populated on every prime power <= prime_power_ceiling;
    a1(p) = a(p) and a2 follows the forced recursion, so the convolution
    a1 * a2 reproduces a on all covered prime powers. Passing the primes
    array of a sieve avoids re-enumerating primes.
    """
    a.validate()
    if prime_power_ceiling < 2:
        raise ValueError("prime_power_ceiling must be >= 2")
    plist = _primes_up_to(prime_power_ceiling, primes)
    a1_vals: dict = {}
    a2_vals: dict = {}
    for p in plist:
        p = int(p)
        ap = a.prime_power_value(p, 1)
        a1_vals[(p, 1)] = ap
        a2_pows = [1.0 + 0.0j, 0.0 + 0.0j]  # a2(p^0), a2(p^1)
        q = p * p
        k = 2
        while q <= prime_power_ceiling:
            total = a.prime_power_value(p, k)
            for i in range(k):
                total -= ap ** (k - i) * a2_pows[i]
            a2_pows.append(total)
            if abs(total) > 1e-15:
                a2_vals[(p, k)] = total
            q *= p
            k += 1
    a1 = MultiplicativeSpec(
        a1_vals,
        completely_multiplicative=True,
        prime_value_default=a.prime_value_default,
    )
    a2 = MultiplicativeSpec(a2_vals, zero_outside=True, unit_bounded=False)
    return a1, a2


def dirichlet_value(
    a1: MultiplicativeSpec, a2: MultiplicativeSpec, p: int, k: int
) -> complex:
    """(a1 * a2)(p^k) = sum_{0 <= i <= k} a1(p^(k-i)) a2(p^i)."""
    total = 0.0 + 0.0j
    for i in range(k + 1):
        left = 1.0 + 0.0j if i == k else a1.prime_power_value(p, k - i)
        right = 1.0 + 0.0j if i == 0 else a2.prime_power_value(p, i)
        total += left * right
    return total


def convolve_specs(
    a1: MultiplicativeSpec,
    a2: MultiplicativeSpec,
    prime_power_ceiling: int,
    primes: np.ndarray | None = None,
) -> MultiplicativeSpec:
    """Multiplicative spec of a1 * a2 on prime powers <= the ceiling."""
    vals: dict = {}
    for p in _primes_up_to(prime_power_ceiling, primes):
        p = int(p)
        q = p
        k = 1
        while q <= prime_power_ceiling:
            vals[(p, k)] = dirichlet_value(a1, a2, p, k)
            q *= p
            k += 1
    return MultiplicativeSpec(vals)


def convolve_check(
    reference: MultiplicativeSpec,
    a1: MultiplicativeSpec,
    a2: MultiplicativeSpec,
    n_max: int,
    spf: np.ndarray | None = None,
) -> float:
    """max over n <= n_max of |reference(n) - (a1 * a2)(n)|.

    The convolution is accumulated over the nonzero support of a2, so the
    cost is sum over supported ell of n_max / ell (tiny when a2 lives on
    squarefull numbers).
    """
    if spf is None:
        from .sieve import build_sieve

        spf = build_sieve(n_max).spf
    f_ref = spec_values(reference, n_max, spf)
    f1 = spec_values(a1, n_max, spf)
    f2 = spec_values(a2, n_max, spf)
    conv = np.zeros(n_max + 1, dtype=np.complex128)
    support = np.flatnonzero(f2 != 0)
    for ell in support:
        ell = int(ell)
        m = n_max // ell
        conv[ell :: ell][:m] += f2[ell] * f1[1 : m + 1]
    return float(np.max(np.abs(f_ref[1:] - conv[1:])))


def random_unit_spec(
    prime_power_ceiling: int,
    seed: int,
    completely_multiplicative: bool = False,
    primes: np.ndarray | None = None,
) -> MultiplicativeSpec:
    """Random multiplicative function with unit-circle prime-power values.

    Phases come from a Philox stream keyed by the seed, so specs are
    reproducible across platforms.
    """
    rng = np.random.Generator(np.random.Philox(key=seed))
    vals: dict = {}
    for p in _primes_up_to(prime_power_ceiling, primes):
        p = int(p)
        q = p
        k = 1
        while q <= prime_power_ceiling:
            if k == 1 or not completely_multiplicative:
                theta = rng.random()
                vals[(p, k)] = complex(
                    math.cos(2 * math.pi * theta), math.sin(2 * math.pi * theta)
                )
            q *= p
            k += 1
    return MultiplicativeSpec(vals, completely_multiplicative=completely_multiplicative)
