import numpy as np
import pytest

from signlab import build_sieve, load_sieve, save_sieve
from signlab.sieve import (
    MAX_LIMIT,
    liouville_trial_division,
    mobius_trial_division,
)


def test_small_values():
    t = build_sieve(16)
    # lambda(1) = 1 (empty product), lambda(4) = 1, mu(4) = 0
    assert t.liouville_at(1) == 1 and t.mobius_at(1) == 1
    assert t.liouville_at(4) == 1 and t.mobius_at(4) == 0
    # 12 = 2^2 * 3 has Omega = 3
    assert t.liouville_at(12) == -1 and t.mobius_at(12) == 0
    assert t.liouville_at(2) == -1 and t.liouville_at(9) == 1
    assert t.omega_total(12) == 3
    assert t.is_prime(13) and not t.is_prime(12)


def test_trial_division_oracle_exhaustive():
    n = 20_000
    t = build_sieve(n)
    for m in range(1, n + 1):
        assert t.liouville_at(m) == liouville_trial_division(m)
        assert t.mobius_at(m) == mobius_trial_division(m)


def test_prime_at_minus_one_and_spf(table_1e5):
    t = table_1e5
    for p in t.primes[:500]:
        assert t.liouville_at(int(p)) == -1
        assert t.spf_at(int(p)) == int(p)
    # spf of composites is the least prime factor
    assert t.spf_at(91) == 7 and t.spf_at(49) == 7 and t.spf_at(12) == 2


def test_complete_multiplicativity_exhaustive(table_1e6):
    lam = table_1e6.liouville
    n = 1_000_000
    for m in range(2, 1001):
        top = n // m
        ns = np.arange(1, top + 1, dtype=np.int64)
        assert np.array_equal(
            lam[m * ns], lam[m] * lam[ns]
        ), f"multiplicativity broken at m={m}"


def test_mobius_vanishes_iff_not_squarefree(table_1e5):
    t = table_1e5
    n = 100_000
    not_squarefree = np.zeros(n + 1, dtype=bool)
    for p in t.primes[t.primes * t.primes <= n]:
        not_squarefree[p * p :: p * p] = True
    assert np.array_equal(t.mobius[1 : n + 1] == 0, not_squarefree[1:])
    # where mu is nonzero it matches lambda
    nz = t.mobius[1 : n + 1] != 0
    assert np.array_equal(t.mobius[1 : n + 1][nz], t.liouville[1 : n + 1][nz])


def test_squarefree_density(table_1e7):
    n = 10_000_000
    density = np.count_nonzero(table_1e7.mobius[1 : n + 1]) / n
    assert abs(density - 6 / np.pi**2) < 0.002


def test_limit_errors():
    with pytest.raises(ValueError):
        build_sieve(0)
    with pytest.raises(ValueError):
        build_sieve(MAX_LIMIT + 1)


def test_cache_roundtrip(tmp_path):
    t = build_sieve(10_000)
    path = tmp_path / "sieve.bin"
    save_sieve(t, path)
    r = load_sieve(path)
    assert r.limit == t.limit
    assert np.array_equal(r.liouville, t.liouville)
    assert np.array_equal(r.mobius, t.mobius)
    assert np.array_equal(r.spf, t.spf)
    assert np.array_equal(r.primes, t.primes)
    # byte-identical rewrite
    path2 = tmp_path / "sieve2.bin"
    save_sieve(r, path2)
    assert path.read_bytes() == path2.read_bytes()


def test_cache_rejects_garbage(tmp_path):
    path = tmp_path / "bad.bin"
    path.write_bytes(b"NOPE" + b"\x00" * 64)
    with pytest.raises(ValueError):
        load_sieve(path)


def test_primes_in(table_1e5):
    ps = table_1e5.primes_in(10, 30)
    assert list(ps) == [11, 13, 17, 19, 23, 29]
