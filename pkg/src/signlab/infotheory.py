"""Entropy and mutual-information estimators plus concentration checks.

Entropies are in nats throughout. Mutual information uses plug-in
estimates on empirical (optionally log-weighted) histograms; no bias
correction is applied, the Miller-Madow first-order bias
(|support| - 1) / (2 samples) is reported alongside so thresholds can be
set an order of magnitude above it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .sieve import SieveTable

_CHUNK = 1 << 20


def shannon_entropy(weights) -> float:
    """Shannon entropy -sum q log q of normalized nonnegative weights."""
    w = np.asarray(weights, dtype=np.float64).ravel()
    if np.any(w < 0):
        raise ValueError("weights must be nonnegative")
    total = w.sum()
    if total <= 0:
        raise ValueError("weights must not all be zero")
    q = w[w > 0] / total
    return float(-np.sum(q * np.log(q)))


@dataclass
class JointHistogram:
    """Joint counts of (packed sign window, residue class) pairs.

    counts[c, r] tallies anchors n with window code c and n mod p = r;
    weights holds the matching 1/n mass when the weighting is logarithmic
    (otherwise it mirrors counts).
    """

    window_len: int
    modulus: int
    counts: np.ndarray  # int64, shape (2^m, p)
    weights: np.ndarray  # float64, same shape
    weighting: str  # 'uniform' | 'log'
    samples: int

    def marginal_residue_deviation(self) -> float:
        """Max absolute count deviation of the residue marginal from uniform."""
        marg = self.counts.sum(axis=0)
        return float(np.max(np.abs(marg - self.samples / self.modulus)))

    @property
    def plugin_bias_nats(self) -> float:
        support = int(np.count_nonzero(self.counts))
        return (support - 1) / (2.0 * max(self.samples, 1))


def window_residue_histogram(
    seq, m: int, p: int, n_max: int, weighting: str = "uniform"
) -> JointHistogram:
    """Histogram of (sign window at n, n mod p) over anchors n <= n_max - m.

    The sequence must be +-1 valued; windows cover n+1 .. n+m. Uniform
    weighting is the default estimator: log weights place an H(small)/H(N)
    fraction of all mass on the few smallest anchors, whose (window,
    residue) pairs are point atoms, which inflates any plug-in mutual
    information by roughly that fraction times log p independently of the
    sequence (about 0.4 nats at m = 8, p = 7, N = 1e7).
    """
    if not 1 <= m <= 16:
        raise ValueError("window length m must lie in [1, 16]")
    if p < 2 or p > 101:
        raise ValueError("modulus must lie in [2, 101]")
    if weighting not in ("uniform", "log"):
        raise ValueError("weighting must be 'uniform' or 'log'")
    anchors = n_max - m
    if anchors < 1:
        raise ValueError("n_max must exceed the window length")
    if n_max > seq.length:
        raise ValueError("n_max exceeds the sequence length")
    size = 1 << m
    counts = np.zeros(size * p, dtype=np.int64)
    masses = np.zeros(size * p, dtype=np.float64)
    for lo in range(1, anchors + 1, _CHUNK):
        hi = min(anchors, lo + _CHUNK - 1)
        n_win = hi - lo + 1
        vals = seq.block(lo + 1, hi + m + 1)
        if np.iscomplexobj(vals):
            raise ValueError("window histograms need a +-1 sequence")
        bits = (vals == 1).astype(np.uint64)
        codes = np.zeros(n_win, dtype=np.uint64)
        for h in range(m):
            codes |= bits[h : h + n_win] << np.uint64(h)
        ns = np.arange(lo, hi + 1, dtype=np.int64)
        joint = codes.astype(np.int64) * p + ns % p
        counts += np.bincount(joint, minlength=size * p)
        if weighting == "log":
            masses += np.bincount(joint, weights=1.0 / ns, minlength=size * p)
    if weighting == "uniform":
        masses = counts.astype(np.float64)
    return JointHistogram(
        window_len=m, modulus=p,
        counts=counts.reshape(size, p), weights=masses.reshape(size, p),
        weighting=weighting, samples=anchors,
    )


def mutual_information(joint: JointHistogram) -> float:
    """Plug-in I(X;Y) = H(X) + H(Y) - H(X,Y) in nats.

    Nonnegative up to floating rounding (worst case about -1e-12).
    """
    w = joint.weights
    if w.sum() <= 0:
        raise ValueError("joint histogram is empty")
    hx = shannon_entropy(w.sum(axis=1))
    hy = shannon_entropy(w.sum(axis=0))
    hxy = shannon_entropy(w)
    return hx + hy - hxy


def hoeffding_check(
    n_vars: int, t: float, trials: int, seed: int
) -> tuple[float, float]:
    """Empirical tail of |mean of n i.i.d. [-2,2] variables| against
    the concentration bound exp(-n t^2 / 16).

    t is the deviation of the mean (sum deviation n*t). Variables are
    uniform on [-2, 2] from a Philox stream. Returns (empirical, bound).
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if n_vars < 1:
        raise ValueError("n_vars must be >= 1")
    rng = np.random.Generator(np.random.Philox(key=seed))
    exceed = 0
    done = 0
    batch = max(1, min(trials, 50_000_000 // n_vars))
    while done < trials:
        b = min(batch, trials - done)
        z = rng.uniform(-2.0, 2.0, size=(b, n_vars))
        means = z.mean(axis=1)
        exceed += int(np.count_nonzero(np.abs(means) > t))
        done += b
    bound = math.exp(-n_vars * t * t / 16.0)
    return exceed / trials, bound


def pinsker_bound_check(y_weights, event_mask) -> tuple[float, float]:
    """Both sides of P(Y in E) <= -(H(W) - H(Y) + log 2) / log P(W in E).

    W is uniform on the same finite set as Y. Requires 0 < P(W in E) < 1.
    Raises AssertionError if the bound fails beyond floating slack (it is
    a theorem, so a failure means an implementation bug).
    """
    w = np.asarray(y_weights, dtype=np.float64).ravel()
    mask = np.asarray(event_mask, dtype=bool).ravel()
    if w.size != mask.size:
        raise ValueError("weights and event mask must align")
    if np.any(w < 0) or w.sum() <= 0:
        raise ValueError("invalid distribution")
    size = w.size
    n_event = int(np.count_nonzero(mask))
    if n_event == 0 or n_event == size:
        raise ValueError("P(W in E) must lie strictly between 0 and 1")
    q = w / w.sum()
    lhs = float(q[mask].sum())
    h_w = math.log(size)
    h_y = shannon_entropy(q)
    p_w_e = n_event / size
    rhs = -(h_w - h_y + math.log(2.0)) / math.log(p_w_e)
    assert lhs <= rhs + 1e-9, f"entropy bound violated: {lhs} > {rhs}"
    return lhs, rhs


def entropy_decrement_demo(
    table: SieveTable,
    m: int,
    primes,
    n_max: int,
    threshold: float = 0.02,
) -> dict:
    """Mutual information between Liouville sign windows and n mod p.

    Estimates I(window at n; n mod p) with uniform anchor weighting for
    each requested prime and flags whether every estimate stays at or
    below the threshold (near-independence, the empirical face of the
    entropy-decrement phenomenon). See window_residue_histogram for why
    the uniform estimator is used.
    """
    from .sequences import make_liouville

    seq = make_liouville(table)
    rows = []
    for p in primes:
        joint = window_residue_histogram(seq, m, int(p), n_max, weighting="uniform")
        mi = mutual_information(joint)
        h_window = shannon_entropy(joint.weights.sum(axis=1))
        rows.append(
            {
                "p": int(p),
                "m": m,
                "n": n_max,
                "mi_nats": mi,
                "window_entropy_nats": h_window,
                "plugin_bias_nats": joint.plugin_bias_nats,
            }
        )
    max_mi = max(r["mi_nats"] for r in rows)
    return {
        "rows": rows,
        "max_mi_nats": max_mi,
        "independent_at_threshold": bool(max_mi <= threshold),
        "threshold": threshold,
    }
