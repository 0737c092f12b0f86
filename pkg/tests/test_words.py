import math

import numpy as np
import pytest

from signlab import (
    count_positive_density_words,
    count_words,
    count_words_eps_rounded,
    default_scales,
    fit_growth,
    harmonic_number,
    make_liouville,
    make_periodic,
    make_quadratic_phase,
    make_sawin_model,
    make_sturmian,
    make_ticker_tape,
    default_ticker_schedule,
    word_density_profile,
)

GOLDEN_CONJ = (math.sqrt(5) - 1) / 2


def naive_word_stats(seq, k, n_max):
    """String-map recount oracle: dict keyed by the literal value tuple."""
    vals = seq.block(1, n_max + 1)
    out = {}
    for n in range(1, n_max - k + 1):
        key = tuple(int(v) for v in vals[n : n + k])
        cnt, mass = out.get(key, (0, 0.0))
        out[key] = (cnt + 1, mass + 1.0 / n)
    return out


def test_liouville_sign_patterns_small(table_1e6):
    seq = make_liouville(table_1e6)
    assert count_words(seq, 3, 1_000_000).distinct == 8
    assert count_words(seq, 4, 1_000_000).distinct == 16


def test_periodic_words():
    seq = make_periodic([1, -1, 1, 1, -1])
    stats = count_words(seq, 9, 100_000)
    assert stats.distinct == 5  # rotations of the period


def test_naive_recount_oracle(table_1e6):
    seq = make_liouville(table_1e6)
    n, k = 100_000, 6
    stats = count_words(seq, k, n)
    oracle = naive_word_stats(seq, k, n)
    mine = stats.as_dict()
    assert set(mine) == set(oracle)
    for key, (cnt, mass) in oracle.items():
        assert mine[key][0] == cnt
        assert abs(mine[key][1] - mass) < 1e-9
    # total mass accounting
    assert abs(stats.masses.sum() - stats.total_log_mass) < 1e-9
    assert stats.counts.min() >= 1


def test_dense_and_unique_paths_agree(table_1e6):
    from signlab import words as words_mod

    seq = make_liouville(table_1e6)
    scales = [1000, 10_000, 100_000]
    dense = word_density_profile(seq, 5, scales)
    old = words_mod._DENSE_MAX_K
    words_mod._DENSE_MAX_K = 0  # force the sort/unique path
    try:
        sparse = word_density_profile(seq, 5, scales)
    finally:
        words_mod._DENSE_MAX_K = old
    assert np.array_equal(dense.codes, sparse.codes)
    assert np.array_equal(dense.counts, sparse.counts)
    assert np.allclose(dense.masses, sparse.masses, atol=1e-12)
    assert np.allclose(dense.best_norm, sparse.best_norm, atol=1e-12)


def test_raw_counts_nondecreasing_in_k(table_1e6):
    seq = make_liouville(table_1e6)
    counts = [count_words(seq, k, 200_000).distinct for k in range(1, 10)]
    assert all(b >= a for a, b in zip(counts, counts[1:]))


def test_masses_normalize(table_1e6):
    seq = make_liouville(table_1e6)
    stats = count_words(seq, 4, 500_000)
    norm = stats.masses / stats.total_log_mass
    assert np.all(norm >= 0) and np.all(norm <= 1)
    assert abs(norm.sum() - 1.0) < 1e-9


def test_positive_density_periodic():
    # every rotation of a period-q pattern has density exactly 1/q
    q = 7
    rng = np.random.Generator(np.random.Philox(key=3))
    seq = make_periodic(rng.integers(0, 2, size=q) * 2 - 1)
    scales = default_scales(200_000)
    assert count_positive_density_words(seq, 5, scales, tau=1 / (2 * q)) == q
    # tau monotonicity
    c1 = count_positive_density_words(seq, 5, scales, tau=1e-4)
    c2 = count_positive_density_words(seq, 5, scales, tau=1e-1)
    assert c1 >= c2
    with pytest.raises(ValueError):
        count_positive_density_words(seq, 5, scales, tau=0.0)


def test_positive_density_liouville(table_1e6):
    seq = make_liouville(table_1e6)
    scales = default_scales(1_000_000)
    assert count_positive_density_words(seq, 3, scales, tau=1e-3) == 8


def test_positive_density_ticker():
    sched = default_ticker_schedule(n_scales=2, n_templates=3, seed=4)
    seq = make_ticker_tape(sched)
    k = 12
    scales = default_scales(seq.length)
    raw = count_words(seq, k, seq.length).distinct
    dense = count_positive_density_words(seq, k, scales, tau=1e-3)
    # the zero word plus template windows dominate; boundary words filtered
    assert 1 <= dense <= raw
    h_max = max(h for _, h in sched.scales)
    n_templates = len(sched.library)
    assert dense <= n_templates * (k + h_max) + 1


def test_continuous_alphabet_rejected():
    seq = make_quadratic_phase(0.3, 0.1)
    with pytest.raises(ValueError, match="eps_rounded"):
        count_words(seq, 4, 10_000)


def test_eps_rounded_constant():
    seq = make_periodic([1])
    assert count_words_eps_rounded(seq, 6, 0.2, 50_000) == 1
    with pytest.raises(ValueError):
        count_words_eps_rounded(seq, 6, 0.0, 50_000)


def test_eps_rounded_matches_pairwise_oracle():
    # greedy cover on a small continuous case, cross-checked directly
    seq = make_quadratic_phase(GOLDEN_CONJ, 0.123)
    k, eps, n = 4, 0.6, 2_000
    got = count_words_eps_rounded(seq, k, eps, n)
    vals = seq.block(1, n + 1)
    reps = []
    for a in range(1, n - k + 1):
        w = vals[a : a + k]
        if not any(np.max(np.abs(w - r)) <= eps for r in reps):
            reps.append(w)
    assert got == len(reps)
    assert got >= 2


def test_eps_rounded_linear_vs_quadratic_phase():
    # same parameters: the quadratic phase needs strictly more templates
    n, k, eps = 100_000, 8, 0.3
    lin = make_quadratic_phase(0.0, math.sqrt(2) - 1)
    quad = make_quadratic_phase(math.sqrt(2) - 1, 0.0)
    c_lin = count_words_eps_rounded(lin, k, eps, n)
    c_quad = count_words_eps_rounded(quad, k, eps, n)
    assert c_lin < c_quad
    assert c_lin <= 200  # O(k/eps) scale for a pure linear phase


def test_eps_rounded_signs_equals_distinct_below_two(table_1e6):
    seq = make_liouville(table_1e6)
    # on a +-1 alphabet any eps < 2 separates all words
    assert count_words_eps_rounded(seq, 5, 0.5, 50_000) == count_words(
        seq, 5, 50_000
    ).distinct
    # and eps >= 2 collapses everything to one template
    assert count_words_eps_rounded(seq, 5, 2.5, 50_000) == 1


def test_sturmian_word_growth():
    seq = make_sturmian(GOLDEN_CONJ)
    ks = range(1, 13)
    counts = [count_words(seq, k, 100_000).distinct for k in ks]
    assert counts == [k + 1 for k in ks]


def test_fit_growth_synthetic():
    ks = np.arange(10, 61, 5)
    lin = fit_growth(ks, ks + 1)
    assert abs(lin.fitted_exponent - 1.0) < 0.1
    quad = fit_growth(ks, 2 * ks**2 - ks)
    assert abs(quad.fitted_exponent - 2.0) < 0.05
    ks = np.arange(4, 17)
    expo = fit_growth(np.arange(4, 13), 2.0 ** np.arange(4, 13))
    assert expo.fitted_exponent > 3
    assert lin.below_quadratic and not expo.below_quadratic
    flagged = fit_growth(ks, ks**2, t=3.0, eps=0.5)
    assert flagged.below_kt_eps
    with pytest.raises(ValueError):
        fit_growth([4], [5])
    with pytest.raises(ValueError):
        fit_growth([4, 4], [5, 5])
