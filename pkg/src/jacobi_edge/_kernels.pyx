# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: partition-series accumulation and Sturm bisection.

The signatures mirror ``_kernels_py`` exactly; ``_backend`` picks one.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport exp, fabs, INFINITY

cnp.import_array()


cdef struct Acc:
    double *row
    signed char *sign
    double *pair
    int *caps
    int n
    int width
    int kmax
    int lam[16]
    double *scale
    double *total
    double *comp
    long n_neg
    long n_terms


cdef inline void _add(Acc *a, int k, double logt, int sgn) noexcept nogil:
    cdef double t, s, y, f
    if logt > a.scale[k]:
        if a.scale[k] == -INFINITY:
            a.total[k] = 0.0
            a.comp[k] = 0.0
        else:
            f = exp(a.scale[k] - logt)
            a.total[k] *= f
            a.comp[k] *= f
        a.scale[k] = logt
        t = sgn
    else:
        t = sgn * exp(logt - a.scale[k])
    s = a.total[k]
    y = s + t
    if fabs(s) >= fabs(t):
        a.comp[k] += (s - y) + t
    else:
        a.comp[k] += (t - y) + s
    a.total[k] = y
    a.n_terms += 1
    if sgn < 0:
        a.n_neg += 1


cdef void _dfs(Acc *a, int i, int prev, int weight, double logacc, int sgnacc) noexcept nogil:
    cdef int v, k, top, s
    cdef double c
    top = prev
    if a.caps[i] < top:
        top = a.caps[i]
    if a.kmax - weight < top:
        top = a.kmax - weight
    for v in range(top + 1):
        s = a.sign[i * a.width + v]
        if s == 0:
            break
        c = a.row[i * a.width + v]
        for k in range(i):
            c -= a.pair[(i - k) * a.width + a.lam[k] - v]
        a.lam[i] = v
        if i == a.n - 1:
            _add(a, weight + v, logacc + c, sgnacc * s)
        else:
            _dfs(a, i + 1, v, weight + v, logacc + c, sgnacc * s)


def partition_layers(double[:, ::1] row, signed char[:, ::1] sign,
                     double[:, ::1] pair, int[::1] caps, int kmax):
    """Per-weight sums of sign * exp(sum_i row[i, lam_i] - sum_{i<k} pair[k-i, lam_i-lam_k]).

    Returns (scaled_sums, log_scales, n_negative, n_terms); the layer-k sum
    equals scaled_sums[k] * exp(log_scales[k]).
    """
    cdef int n = row.shape[0]
    if n > 16:
        raise ValueError("at most 16 rows")
    if n == 0:
        out = np.zeros(kmax + 1)
        out[0] = 1.0
        return out, np.zeros(kmax + 1), 0, 1
    scale = np.full(kmax + 1, -np.inf)
    total = np.zeros(kmax + 1)
    comp = np.zeros(kmax + 1)
    cdef double[::1] sc = scale
    cdef double[::1] tt = total
    cdef double[::1] cc = comp
    cdef Acc a
    a.row = &row[0, 0]
    a.sign = &sign[0, 0]
    a.pair = &pair[0, 0]
    a.caps = &caps[0]
    a.n = n
    a.width = row.shape[1]
    a.kmax = kmax
    a.scale = &sc[0]
    a.total = &tt[0]
    a.comp = &cc[0]
    a.n_neg = 0
    a.n_terms = 0
    with nogil:
        _dfs(&a, 0, a.width - 1, 0, 0.0, 1)
    sums = total + comp
    scale[np.isneginf(scale)] = 0.0
    return sums, scale, int(a.n_neg), int(a.n_terms)


cdef inline int _sturm_count(double *d, double *e2, int n, double x, double pivmin) noexcept nogil:
    cdef int i, count = 0
    cdef double q = d[0] - x
    if fabs(q) < pivmin:
        q = -pivmin
    if q < 0:
        count += 1
    for i in range(1, n):
        q = d[i] - x - e2[i - 1] / q
        if fabs(q) < pivmin:
            q = -pivmin
        if q < 0:
            count += 1
    return count


def sturm_count(double[::1] d, double[::1] e, double x):
    """Number of eigenvalues strictly below ``x``."""
    cdef int n = d.shape[0]
    e2 = np.asarray(e) ** 2
    cdef double[::1] ee = e2 if n > 1 else np.zeros(1)
    pivmin = _pivmin(d, e2)
    return _sturm_count(&d[0], &ee[0], n, x, pivmin)


def _pivmin(d, e2):
    scale = max(float(np.max(np.abs(d))) if len(d) else 0.0,
                float(np.max(e2)) if len(e2) else 0.0, 1.0)
    return 2.2250738585072014e-308 * scale


def bisect_eigenvalues(double[::1] d, double[::1] e, int k_lo, int k_hi, double rtol):
    """Eigenvalues k_lo..k_hi (0-based, ascending) of a symmetric tridiagonal matrix.

    Gershgorin bounds seed each bisection; stops when the bracket is below
    rtol * max(|lo|, |hi|, scale) or at machine resolution.
    """
    cdef int n = d.shape[0]
    cdef int k, cnt, it
    cdef double lo, hi, mid, glo, ghi, tol, scale, pm
    if n == 0:
        return np.zeros(0)
    e2a = np.zeros(max(n - 1, 1))
    if n > 1:
        e2a[: n - 1] = np.asarray(e) ** 2
    cdef double[::1] e2 = e2a
    abse = np.abs(np.asarray(e)) if n > 1 else np.zeros(0)
    rad = np.zeros(n)
    if n > 1:
        rad[: n - 1] += abse
        rad[1:] += abse
    glo = float(np.min(np.asarray(d) - rad))
    ghi = float(np.max(np.asarray(d) + rad))
    scale = max(fabs(glo), fabs(ghi), 1e-300)
    pm = _pivmin(d, e2a)
    out = np.empty(k_hi - k_lo + 1)
    cdef double[::1] o = out
    for k in range(k_lo, k_hi + 1):
        lo = glo - 1e-14 * scale - 1e-300
        hi = ghi + 1e-14 * scale + 1e-300
        tol = rtol * scale
        with nogil:
            for it in range(2000):
                mid = 0.5 * (lo + hi)
                if hi - lo <= tol or mid <= lo or mid >= hi:
                    break
                cnt = _sturm_count(&d[0], &e2[0], n, mid, pm)
                if cnt > k:
                    hi = mid
                else:
                    lo = mid
        o[k - k_lo] = 0.5 * (lo + hi)
    return out
