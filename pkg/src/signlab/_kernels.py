"""Compiled kernels for the scans that dominate runtime.

Everything here is deliberately loop-structured for numba: linear sieving,
rolling-window word scans, sliding exponential sums for the local Fourier
statistic, strided window sums for the local periodic statistic, and
compensated (Kahan) weighted reductions.

Parallel kernels split the n-range into fixed-size chunks and return one
partial per chunk; callers combine the partials in index order, so results
do not depend on the number of threads.
"""

import numpy as np
from numba import njit, prange

# chunk length for parallel scans; also the resync period of sliding sums
CHUNK = 1 << 16


@njit(cache=True)
def linear_sieve(limit):
    """Euler sieve returning (spf, liouville, mobius, primes) up to limit.

    spf[n] is the smallest prime factor (spf[0] = spf[1] = 0), liouville and
    mobius are int8 arrays indexed by n. One O(limit) pass: each composite is
    crossed exactly once through its smallest prime factor.
    """
    spf = np.zeros(limit + 1, dtype=np.uint32)
    lam = np.zeros(limit + 1, dtype=np.int8)
    mu = np.zeros(limit + 1, dtype=np.int8)
    if limit >= 1:
        lam[1] = 1
        mu[1] = 1
    cap = int(1.3 * limit / max(np.log(limit + 2), 2.0)) + 64
    primes = np.empty(cap, dtype=np.int64)
    count = 0
    for i in range(2, limit + 1):
        if spf[i] == 0:
            spf[i] = i
            lam[i] = -1
            mu[i] = -1
            primes[count] = i
            count += 1
        for j in range(count):
            p = primes[j]
            ip = i * p
            if p > spf[i] or ip > limit:
                break
            spf[ip] = p
            lam[ip] = -lam[i]
            mu[ip] = 0 if i % p == 0 else -mu[i]
    return spf, lam, mu, primes[:count]


@njit(cache=True)
def kahan_weighted_sum_f8(values, n0):
    """Compensated sum of values[i] / (n0 + i)."""
    s = 0.0
    c = 0.0
    for i in range(len(values)):
        term = values[i] / (n0 + i)
        y = term - c
        t = s + y
        c = (t - s) - y
        s = t
    return s


@njit(cache=True)
def kahan_weighted_sum_c16(values, n0):
    """Compensated sum of complex values[i] / (n0 + i)."""
    sr = 0.0
    cr = 0.0
    si = 0.0
    ci = 0.0
    for i in range(len(values)):
        w = 1.0 / (n0 + i)
        tr = values[i].real * w
        ti = values[i].imag * w
        y = tr - cr
        t = sr + y
        cr = (t - sr) - y
        sr = t
        y = ti - ci
        t = si + y
        ci = (t - si) - y
        si = t
    return complex(sr, si)


@njit(cache=True)
def harmonic_sum(n):
    """Compensated sum of 1/m for m = 1..n."""
    s = 0.0
    c = 0.0
    for m in range(1, n + 1):
        term = 1.0 / m
        y = term - c
        t = s + y
        c = (t - s) - y
        s = t
    return s


@njit(cache=True)
def word_mass_scan(bits, k, n_max, scale_bounds, hs):
    """Rolling-code scan of +-1 windows with per-scale mass maxima.

    bits[n] is 1 where the sequence value at n is +1, 0 where it is -1
    (index 0 unused). The window anchored at n holds positions n+1 .. n+k
    and carries weight 1/n; codes pack the window bits little-endian.

    scale_bounds are increasing window-anchor cutoffs (the last must equal
    n_max) and hs[j] the harmonic normalizer of scale j. Returns
    (counts, mass, best_norm): occurrence counts and accumulated 1/n mass
    per code over the full range, and the per-code maximum over scales of
    mass-so-far / hs[j].
    """
    size = 1 << k
    counts = np.zeros(size, dtype=np.int64)
    mass = np.zeros(size, dtype=np.float64)
    comp = np.zeros(size, dtype=np.float64)
    best = np.zeros(size, dtype=np.float64)
    code = np.uint64(0)
    for h in range(1, k + 1):
        if bits[1 + h]:
            code |= np.uint64(1) << np.uint64(h - 1)
    top = np.uint64(k - 1)
    si = 0
    nscales = len(scale_bounds)
    for n in range(1, n_max + 1):
        if n > 1:
            code >>= np.uint64(1)
            if bits[n + k]:
                code |= np.uint64(1) << top
        idx = np.int64(code)
        counts[idx] += 1
        term = 1.0 / n
        y = term - comp[idx]
        t = mass[idx] + y
        comp[idx] = (t - mass[idx]) - y
        mass[idx] = t
        if si < nscales and n == scale_bounds[si]:
            inv_h = 1.0 / hs[si]
            for c in range(size):
                v = mass[c] * inv_h
                if v > best[c]:
                    best[c] = v
            si += 1
    return counts, mass, best


@njit(cache=True)
def _window_abs(vals, n, H, alpha):
    """|sum_{h<=H} vals[n+h] e(h alpha)| / H via incremental rotation."""
    c = np.cos(2.0 * np.pi * alpha)
    s = np.sin(2.0 * np.pi * alpha)
    rr = 1.0
    ri = 0.0
    ar = 0.0
    ai = 0.0
    for h in range(1, H + 1):
        t = rr * c - ri * s
        ri = rr * s + ri * c
        rr = t
        v = vals[n + h]
        ar += v.real * rr - v.imag * ri
        ai += v.real * ri + v.imag * rr
    return np.sqrt(ar * ar + ai * ai) / H


@njit(cache=True)
def _refine_cell(vals, n, H, lo, hi, width_target, best_val):
    """Golden-section polish of the windowed sup inside [lo, hi]."""
    gr = 0.6180339887498949
    a = lo
    b = hi
    x1 = b - gr * (b - a)
    x2 = a + gr * (b - a)
    f1 = _window_abs(vals, n, H, x1)
    f2 = _window_abs(vals, n, H, x2)
    while b - a > width_target:
        if f1 < f2:
            a = x1
            x1 = x2
            f1 = f2
            x2 = a + gr * (b - a)
            f2 = _window_abs(vals, n, H, x2)
        else:
            b = x2
            x2 = x1
            f2 = f1
            x1 = b - gr * (b - a)
            f1 = _window_abs(vals, n, H, x1)
    f = f1 if f1 > f2 else f2
    return f if f > best_val else best_val


@njit(parallel=True, cache=True)
def fourier_sup_scan(vals, n_max, H, freqs, cell_lo, cell_hi, refine, width_target):
    """Log-weighted mean over n of the windowed exponential-sum supremum.

    For every frequency the window sum over h <= H slides along n in O(1)
    per step; per-n the maximum over frequencies is kept.  When refine is
    true the best frequency's bracket [cell_lo, cell_hi] is polished by
    golden section down to width_target (brackets already intersected with
    the cover by the caller).  Returns per-chunk partials of
    sum_n sup / (H n); chunks are combined in order by the caller.
    """
    nf = len(freqs)
    nchunks = (n_max + CHUNK - 1) // CHUNK
    partials = np.zeros(nchunks, dtype=np.float64)
    for ci in prange(nchunks):
        lo = ci * CHUNK + 1
        hi = min(n_max, lo + CHUNK - 1)
        m = hi - lo + 1
        best = np.zeros(m, dtype=np.float64)
        argf = np.zeros(m, dtype=np.int32)
        for fi in range(nf):
            alpha = freqs[fi]
            c = np.cos(2.0 * np.pi * alpha)
            s = np.sin(2.0 * np.pi * alpha)
            cH = np.cos(2.0 * np.pi * alpha * H)
            sH = np.sin(2.0 * np.pi * alpha * H)
            sr = 0.0
            si = 0.0
            rr = 1.0
            ri = 0.0
            for h in range(1, H + 1):
                t = rr * c - ri * s
                ri = rr * s + ri * c
                rr = t
                v = vals[lo + h]
                sr += v.real * rr - v.imag * ri
                si += v.real * ri + v.imag * rr
            a = np.sqrt(sr * sr + si * si)
            if a > best[0]:
                best[0] = a
                argf[0] = fi
            for i in range(1, m):
                n = lo + i
                vout = vals[n]
                vin = vals[n + H]
                # S <- e(-alpha) S - vals[n] + vals[n+H] e(H alpha)
                tr = sr * c + si * s
                ti = -sr * s + si * c
                sr = tr - vout.real + (vin.real * cH - vin.imag * sH)
                si = ti - vout.imag + (vin.real * sH + vin.imag * cH)
                a = np.sqrt(sr * sr + si * si)
                if a > best[i]:
                    best[i] = a
                    argf[i] = fi
        acc = 0.0
        comp = 0.0
        invH = 1.0 / H
        for i in range(m):
            n = lo + i
            sup = best[i] * invH
            if refine:
                fi = argf[i]
                sup = _refine_cell(
                    vals, n, H, cell_lo[fi], cell_hi[fi], width_target, sup
                )
            term = sup / n
            y = term - comp
            t = acc + y
            comp = (t - acc) - y
            acc = t
        partials[ci] = acc
    return partials


@njit(parallel=True, cache=True)
def periodic_sup_scan(vals, n_max, H, d):
    """Log-weighted mean over n of the exact periodic-correlation supremum.

    For each period q <= d the supremum over 1-bounded q-periodic theta of
    |E_{h<=H} vals(n+h) theta(h)| equals (1/H) sum_r |sum_{h<=H, h=r mod q}
    vals(n+h)|; the residue-lane sums slide along n with period-q updates.
    Returns per-chunk partials of sum_n max_q sup / n.
    """
    nchunks = (n_max + CHUNK - 1) // CHUNK
    partials = np.zeros(nchunks, dtype=np.float64)
    for ci in prange(nchunks):
        lo = ci * CHUNK + 1
        hi = min(n_max, lo + CHUNK - 1)
        m = hi - lo + 1
        stat = np.zeros(m, dtype=np.float64)
        lane = np.zeros(m + d + 1, dtype=np.complex128)
        for q in range(1, d + 1):
            # lane[j] = sum over window positions lo+i+r+t*q once shifted;
            # build V(start) = sum_{t < J} vals[start + t q] for start in
            # [lo+1, hi+q], sliding within each residue class of start.
            Q = H // q
            rem = H - Q * q  # residues r <= rem get Q+1 terms
            for r0 in range(q):
                # starts congruent to lo+1+r0 modulo q, walked with step q
                start = lo + 1 + r0
                # initial sums for the two lane depths
                sbig_r = 0.0
                sbig_i = 0.0
                Jbig = Q + 1
                for t in range(Jbig):
                    v = vals[start + t * q]
                    sbig_r += v.real
                    sbig_i += v.imag
                pos = start
                while pos <= hi + q:
                    v_first = vals[pos]
                    big_r = sbig_r
                    big_i = sbig_i
                    lane[pos - lo] = complex(big_r, big_i)
                    # slide by q: drop first, add next tail element
                    tail = vals[pos + Jbig * q]
                    sbig_r = big_r - v_first.real + tail.real
                    sbig_i = big_i - v_first.imag + tail.imag
                    pos += q
            # combine residues: V_r(n) = lane value at n+r, trimmed by one
            # tail term when the residue only gets Q of the Q+1 stored terms
            invH = 1.0 / H
            for i in range(m):
                n = lo + i
                acc = 0.0
                for r in range(1, q + 1):
                    if r > H:
                        break
                    z = lane[n + r - lo]
                    if r <= rem:
                        acc += np.sqrt(z.real * z.real + z.imag * z.imag)
                    else:
                        tail = vals[n + r + Q * q]
                        zr = z.real - tail.real
                        zi = z.imag - tail.imag
                        acc += np.sqrt(zr * zr + zi * zi)
                val = acc * invH
                if val > stat[i]:
                    stat[i] = val
        acc = 0.0
        comp = 0.0
        for i in range(m):
            term = stat[i] / (lo + i)
            y = term - comp
            t = acc + y
            comp = (t - acc) - y
            acc = t
        partials[ci] = acc
    return partials


@njit(cache=True)
def greedy_sup_cover(windows, eps):
    """Greedy sup-metric cover count over the rows of a complex matrix.

    Scans rows in order; a row starts a new representative unless some
    existing representative is within eps in every coordinate. Returns the
    number of representatives.
    """
    n, k = windows.shape
    cap = 256
    reps = np.empty((cap, k), dtype=np.complex128)
    nrep = 0
    for i in range(n):
        covered = False
        for r in range(nrep):
            ok = True
            for j in range(k):
                dz = windows[i, j] - reps[r, j]
                if dz.real * dz.real + dz.imag * dz.imag > eps * eps:
                    ok = False
                    break
            if ok:
                covered = True
                break
        if not covered:
            if nrep == cap:
                cap *= 2
                newreps = np.empty((cap, k), dtype=np.complex128)
                newreps[:nrep] = reps[:nrep]
                reps = newreps
            reps[nrep] = windows[i]
            nrep += 1
    return nrep
