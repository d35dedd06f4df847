"""Pure-Python twins of the compiled kernels in ``_kernels.pyx``."""

import math

import numpy as np

_TINY = 2.2250738585072014e-308


def partition_layers(row, sign, pair, caps, kmax):
    """Per-weight sums of sign * exp(sum_i row[i, lam_i] - sum_{i<k} pair[k-i, lam_i-lam_k]).

    Returns (scaled_sums, log_scales, n_negative, n_terms); the layer-k sum
    equals scaled_sums[k] * exp(log_scales[k]).
    """
    row = np.asarray(row, dtype=float)
    n, width = row.shape
    if n == 0:
        out = np.zeros(kmax + 1)
        out[0] = 1.0
        return out, np.zeros(kmax + 1), 0, 1
    row_l = row.tolist()
    sign_l = np.asarray(sign).tolist()
    pair_l = np.asarray(pair, dtype=float).tolist()
    caps_l = [int(c) for c in caps]
    scale = [-math.inf] * (kmax + 1)
    total = [0.0] * (kmax + 1)
    comp = [0.0] * (kmax + 1)
    lam = [0] * n
    stats = [0, 0]

    def add(k, logt, sgn):
        if logt > scale[k]:
            if scale[k] == -math.inf:
                total[k] = comp[k] = 0.0
            else:
                f = math.exp(scale[k] - logt)
                total[k] *= f
                comp[k] *= f
            scale[k] = logt
            t = float(sgn)
        else:
            t = sgn * math.exp(logt - scale[k])
        s = total[k]
        y = s + t
        if abs(s) >= abs(t):
            comp[k] += (s - y) + t
        else:
            comp[k] += (t - y) + s
        total[k] = y
        stats[1] += 1
        if sgn < 0:
            stats[0] += 1

    def dfs(i, prev, weight, logacc, sgnacc):
        top = min(prev, caps_l[i], kmax - weight)
        r, sg = row_l[i], sign_l[i]
        for v in range(top + 1):
            s = sg[v]
            if s == 0:
                break
            c = r[v]
            for k in range(i):
                c -= pair_l[i - k][lam[k] - v]
            lam[i] = v
            if i == n - 1:
                add(weight + v, logacc + c, sgnacc * s)
            else:
                dfs(i + 1, v, weight + v, logacc + c, sgnacc * s)

    dfs(0, width - 1, 0, 0.0, 1)
    sums = np.array(total) + np.array(comp)
    sc = np.array(scale)
    sc[np.isneginf(sc)] = 0.0
    return sums, sc, stats[0], stats[1]


def _pivmin(d, e2):
    scale = max(float(np.max(np.abs(d))) if len(d) else 0.0,
                float(np.max(e2)) if len(e2) else 0.0, 1.0)
    return _TINY * scale


def _count(d, e2, x, pivmin):
    count = 0
    q = d[0] - x
    if abs(q) < pivmin:
        q = -pivmin
    if q < 0:
        count += 1
    for i in range(1, len(d)):
        q = d[i] - x - e2[i - 1] / q
        if abs(q) < pivmin:
            q = -pivmin
        if q < 0:
            count += 1
    return count


def sturm_count(d, e, x):
    """Number of eigenvalues strictly below ``x``."""
    d = np.asarray(d, dtype=float)
    e2 = np.asarray(e, dtype=float) ** 2
    return _count(d.tolist(), e2.tolist(), float(x), _pivmin(d, e2))


def bisect_eigenvalues(d, e, k_lo, k_hi, rtol):
    """Eigenvalues k_lo..k_hi (0-based, ascending) of a symmetric tridiagonal matrix."""
    d = np.asarray(d, dtype=float)
    e = np.asarray(e, dtype=float)
    n = d.size
    if n == 0:
        return np.zeros(0)
    e2 = e ** 2
    rad = np.zeros(n)
    if n > 1:
        rad[:-1] += np.abs(e)
        rad[1:] += np.abs(e)
    glo = float(np.min(d - rad))
    ghi = float(np.max(d + rad))
    scale = max(abs(glo), abs(ghi), 1e-300)
    pivmin = _pivmin(d, e2)
    dl, el = d.tolist(), e2.tolist()
    out = np.empty(k_hi - k_lo + 1)
    for k in range(k_lo, k_hi + 1):
        lo = glo - 1e-14 * scale - 1e-300
        hi = ghi + 1e-14 * scale + 1e-300
        tol = rtol * scale
        for _ in range(2000):
            mid = 0.5 * (lo + hi)
            if hi - lo <= tol or mid <= lo or mid >= hi:
                break
            if _count(dl, el, mid, pivmin) > k:
                hi = mid
            else:
                lo = mid
        out[k - k_lo] = 0.5 * (lo + hi)
    return out
