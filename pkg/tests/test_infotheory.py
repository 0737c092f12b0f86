import math

import numpy as np
import pytest

from signlab import (
    build_sieve,
    entropy_decrement_demo,
    hoeffding_check,
    make_noise,
    mutual_information,
    pinsker_bound_check,
    shannon_entropy,
    window_residue_histogram,
)
from signlab.infotheory import JointHistogram
from signlab.sequences import SymbolicSequence


def test_entropy_basics():
    assert shannon_entropy([1.0]) == 0.0
    assert shannon_entropy([0.0, 3.0]) == 0.0
    assert shannon_entropy([1, 1, 1, 1]) == pytest.approx(math.log(4), abs=1e-12)
    with pytest.raises(ValueError):
        shannon_entropy([0.0, 0.0])
    with pytest.raises(ValueError):
        shannon_entropy([-1.0, 2.0])


def test_entropy_label_invariance():
    rng = np.random.Generator(np.random.Philox(key=1))
    w = rng.random(32)
    perm = rng.permutation(32)
    assert shannon_entropy(w) == pytest.approx(shannon_entropy(w[perm]), abs=1e-12)


def _hist_from_matrix(counts):
    counts = np.asarray(counts, dtype=np.int64)
    return JointHistogram(
        window_len=int(np.log2(counts.shape[0])) or 1,
        modulus=counts.shape[1],
        counts=counts,
        weights=counts.astype(np.float64),
        weighting="uniform",
        samples=int(counts.sum()),
    )


def test_mi_deterministic_function():
    # Y a deterministic function of X: I = H(Y)
    counts = np.zeros((4, 2), dtype=np.int64)
    counts[0, 0] = 10
    counts[1, 0] = 10
    counts[2, 1] = 10
    counts[3, 1] = 10
    j = _hist_from_matrix(counts)
    hy = shannon_entropy(counts.sum(axis=0))
    assert mutual_information(j) == pytest.approx(hy, abs=1e-12)


def test_mi_independent_synthetic():
    rng = np.random.Generator(np.random.Philox(key=2))
    x = rng.integers(0, 16, size=1_000_000)
    y = rng.integers(0, 3, size=1_000_000)
    counts = np.zeros((16, 3), dtype=np.int64)
    np.add.at(counts, (x, y), 1)
    j = _hist_from_matrix(counts)
    mi = mutual_information(j)
    assert 0 <= mi <= 0.01


def test_mi_bounds_and_nonnegativity():
    rng = np.random.Generator(np.random.Philox(key=3))
    for _ in range(20):
        counts = rng.integers(0, 50, size=(8, 5))
        j = _hist_from_matrix(counts + 1)
        mi = mutual_information(j)
        hx = shannon_entropy((counts + 1).sum(axis=1))
        hy = shannon_entropy((counts + 1).sum(axis=0))
        assert -1e-12 <= mi <= min(hx, hy) + 1e-12


def test_window_residue_histogram_marginals(table_1e6):
    from signlab import make_liouville

    seq = make_liouville(table_1e6)
    j = window_residue_histogram(seq, 4, 3, 300_000, weighting="uniform")
    assert j.counts.sum() == j.samples
    # residue classes of a full range are near-uniform
    assert j.marginal_residue_deviation() <= 2.0 / 3 * 3  # within a couple counts
    jl = window_residue_histogram(seq, 4, 3, 300_000, weighting="log")
    assert jl.weights.sum() == pytest.approx(
        np.sum(1.0 / np.arange(1, 300_000 - 4 + 1)), rel=1e-9
    )


def test_hoeffding_trivial_and_grid():
    emp, bound = hoeffding_check(100, 5.0, 1000, seed=1)
    assert emp == 0.0 and bound < 1e-60
    # sum-scale deviation 40 on n=100 means mean deviation 0.4
    emp, bound = hoeffding_check(100, 0.4, 20_000, seed=2)
    assert emp <= bound
    for n in (100, 1000):
        for tt in (0.1, 0.2, 0.4, 0.8):
            emp, bound = hoeffding_check(n, tt, 20_000, seed=n)
            sigma = math.sqrt(max(bound * (1 - bound), 1e-12) / 20_000)
            assert emp <= bound + 3 * sigma, (n, tt, emp, bound)
    with pytest.raises(ValueError):
        hoeffding_check(100, 0.1, 0, seed=1)


def test_pinsker_uniform_case():
    # Y uniform: lhs = P(W in E), rhs = -log2 / log P(W in E) scaled
    size = 16
    w = np.ones(size)
    mask = np.zeros(size, dtype=bool)
    mask[:4] = True
    lhs, rhs = pinsker_bound_check(w, mask)
    assert lhs == pytest.approx(0.25)
    assert rhs == pytest.approx(-math.log(2.0) / math.log(0.25))
    assert lhs <= rhs


def test_pinsker_point_mass_case():
    # point mass inside a single-element event over 2^8 states
    size = 256
    w = np.zeros(size)
    w[0] = 1.0
    mask = np.zeros(size, dtype=bool)
    mask[0] = True
    lhs, rhs = pinsker_bound_check(w, mask)
    assert lhs == pytest.approx(1.0)
    assert rhs == pytest.approx((8 * math.log(2) + math.log(2)) / (8 * math.log(2)))


def test_pinsker_random_cases():
    rng = np.random.Generator(np.random.Philox(key=5))
    for _ in range(1000):
        size = 64
        w = rng.random(size) ** 3
        n_event = int(rng.integers(1, size))
        mask = np.zeros(size, dtype=bool)
        mask[rng.permutation(size)[:n_event]] = True
        lhs, rhs = pinsker_bound_check(w, mask)
        assert lhs <= rhs + 1e-9


def test_pinsker_degenerate_event():
    with pytest.raises(ValueError):
        pinsker_bound_check(np.ones(4), np.ones(4, dtype=bool))
    with pytest.raises(ValueError):
        pinsker_bound_check(np.ones(4), np.zeros(4, dtype=bool))


def test_entropy_decrement_liouville(table_1e6):
    demo = entropy_decrement_demo(table_1e6, 4, [2, 3], 1_000_000)
    assert demo["max_mi_nats"] <= 0.01
    assert demo["independent_at_threshold"]


def test_log_weighting_head_artifact(table_1e6):
    # under log weights the smallest anchors dominate and fake dependence;
    # the uniform estimator stays at the plug-in bias scale
    from signlab import make_liouville

    seq = make_liouville(table_1e6)
    uni = mutual_information(
        window_residue_histogram(seq, 8, 7, 1_000_000, weighting="uniform")
    )
    logw = mutual_information(
        window_residue_histogram(seq, 8, 7, 1_000_000, weighting="log")
    )
    assert uni <= 0.01
    assert logw > 10 * uni


def test_entropy_decrement_flags_constructed_dependence():
    # b(n) = parity of (n mod p): the window determines n mod 2 completely
    p = 2

    def block(lo, hi):
        n = np.arange(lo, hi, dtype=np.int64)
        return np.where((n % p) % 2 == 0, np.int8(1), np.int8(-1))

    seq = SymbolicSequence(length=2_000_000, alphabet="signs",
                           label="parity", block_fn=block)
    from signlab.infotheory import window_residue_histogram as hist

    j = hist(seq, 4, 2, 1_000_000, weighting="log")
    mi = mutual_information(j)
    hy = shannon_entropy(j.weights.sum(axis=0))
    assert mi == pytest.approx(hy, abs=1e-6)  # fully dependent
    assert mi > 0.5
