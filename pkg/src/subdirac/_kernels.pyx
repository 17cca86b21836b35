# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled symmetric tridiagonal kernels (Sturm counts, bisection, implicit QL)."""
import numpy as np
from libc.math cimport fabs, sqrt, copysign

DEF EPS = 2.220446049250313e-16


cdef Py_ssize_t _count(const double[::1] d, const double[::1] e2, double x,
                       double pivmin) noexcept nogil:
    cdef Py_ssize_t n = d.shape[0], i, c = 0
    cdef double q = d[0] - x
    if fabs(q) < pivmin:
        q = -pivmin
    if q < 0:
        c += 1
    for i in range(1, n):
        q = d[i] - x - e2[i - 1] / q
        if fabs(q) < pivmin:
            q = -pivmin
        if q < 0:
            c += 1
    return c


def _prep(d, e):
    d = np.ascontiguousarray(d, dtype=np.float64)
    e = np.ascontiguousarray(e, dtype=np.float64)
    e2 = np.ascontiguousarray(e * e)
    if d.shape[0] > 1:
        r = np.abs(np.concatenate(([0.0], e))) + np.abs(np.concatenate((e, [0.0])))
        lo, hi = float(np.min(d - r)), float(np.max(d + r))
    else:
        lo = hi = float(d[0])
    scale = max(abs(lo), abs(hi), 1e-300)
    pivmin = max(float(np.max(e2)) if e2.shape[0] else 0.0, 1.0) * 1e-300
    return d, e2, lo - 1e-12 * scale, hi + 1e-12 * scale, scale, pivmin


def sturm_count(d, e, shifts):
    """Number of eigenvalues strictly below each shift."""
    cdef double[::1] dv, e2v
    d, e2, _, _, _, pivmin = _prep(d, e)
    dv, e2v = d, e2
    sh = np.atleast_1d(np.asarray(shifts, dtype=np.float64))
    out = np.empty(sh.shape[0], dtype=np.int64)
    cdef Py_ssize_t i
    cdef double pm = pivmin
    for i in range(sh.shape[0]):
        out[i] = _count(dv, e2v, sh[i], pm)
    return out


def bisect_eigenvalues(d, e, Py_ssize_t k_lo, Py_ssize_t k_hi, double rtol=4 * EPS):
    """Eigenvalues k_lo..k_hi-1 (ascending, 0-based) by Sturm bisection."""
    cdef double[::1] dv, e2v
    cdef double lo0, hi0, scale, pm, lo, hi, mid, atol
    cdef Py_ssize_t k, it
    d, e2, lo0, hi0, scale, pivmin = _prep(d, e)
    dv, e2v = d, e2
    pm = pivmin
    atol = 2 * EPS * scale
    out = np.empty(max(k_hi - k_lo, 0), dtype=np.float64)
    cdef double[::1] ov = out
    with nogil:
        for k in range(k_lo, k_hi):
            lo = lo0
            hi = hi0
            for it in range(200):
                mid = 0.5 * (lo + hi)
                if _count(dv, e2v, mid, pm) <= k:
                    lo = mid
                else:
                    hi = mid
                if hi - lo <= atol + rtol * fabs(mid):
                    break
            ov[k - k_lo] = 0.5 * (lo + hi)
    return out


def tql_eigenvalues(d, e, int max_iter=60):
    """All eigenvalues by the implicit QL algorithm with Wilkinson shifts."""
    cdef double[::1] dv
    cdef double[::1] ev
    cdef Py_ssize_t n, l, m, i, it
    cdef double dd, g, r, s, c, p, f, b
    cdef bint failed = 0
    dv = np.array(d, dtype=np.float64)
    n = dv.shape[0]
    ev = np.zeros(n, dtype=np.float64)
    for i in range(n - 1):
        ev[i] = e[i]
    with nogil:
        for l in range(n):
            it = 0
            while True:
                m = l
                while m < n - 1:
                    dd = fabs(dv[m]) + fabs(dv[m + 1])
                    if fabs(ev[m]) <= EPS * dd:
                        break
                    m += 1
                if m == l:
                    break
                it += 1
                if it > max_iter:
                    failed = 1
                    break
                g = (dv[l + 1] - dv[l]) / (2.0 * ev[l])
                r = sqrt(g * g + 1.0)
                g = dv[m] - dv[l] + ev[l] / (g + copysign(r, g))
                s = 1.0
                c = 1.0
                p = 0.0
                i = m - 1
                while i >= l:
                    f = s * ev[i]
                    b = c * ev[i]
                    r = sqrt(f * f + g * g)
                    ev[i + 1] = r
                    if r == 0.0:
                        dv[i + 1] -= p
                        ev[m] = 0.0
                        break
                    s = f / r
                    c = g / r
                    g = dv[i + 1] - p
                    r = (dv[i] - g) * s + 2.0 * c * b
                    p = s * r
                    dv[i + 1] = g + p
                    g = c * r - b
                    i -= 1
                if r == 0.0 and i >= l:
                    continue
                dv[l] -= p
                ev[l] = g
                ev[m] = 0.0
            if failed:
                break
    if failed:
        return None
    return np.sort(np.asarray(dv))


cdef inline void _rot(double[:, ::1] A, Py_ssize_t p, Py_ssize_t q, double c, double s,
                      Py_ssize_t lo, Py_ssize_t hi) noexcept nogil:
    cdef Py_ssize_t j
    cdef double x, y
    for j in range(lo, hi):
        x = A[p, j]
        y = A[q, j]
        A[p, j] = c * x + s * y
        A[q, j] = -s * x + c * y
    for j in range(lo, hi):
        x = A[j, p]
        y = A[j, q]
        A[j, p] = c * x + s * y
        A[j, q] = -s * x + c * y


def band_to_tridiagonal(A, Py_ssize_t m):
    """Givens band reduction of a symmetric matrix with half-bandwidth m.

    Returns (d, e) of an orthogonally similar tridiagonal matrix.
    """
    cdef double[:, ::1] W = np.array(A, dtype=np.float64, order="C")
    cdef Py_ssize_t n = W.shape[0], k, i, j, lo, hi, col
    cdef double x, y, r, c, s
    with nogil:
        for k in range(n - 2):
            i = k + m if k + m < n - 1 else n - 1
            while i >= k + 2:
                # zero W[i, k] against W[i-1, k], then chase the bulge down the band
                col = k
                j = i
                while True:
                    x = W[j - 1, col]
                    y = W[j, col]
                    if y != 0.0:
                        r = sqrt(x * x + y * y)
                        c = x / r
                        s = y / r
                        lo = col
                        hi = j + m + 1 if j + m + 1 < n else n
                        _rot(W, j - 1, j, c, s, lo, hi)
                        W[j, col] = 0.0
                        W[col, j] = 0.0
                    if j + m >= n:
                        break
                    col = j - 1
                    j = j + m
                i -= 1
    d = np.array([W[i, i] for i in range(n)])
    e = np.array([W[i + 1, i] for i in range(n - 1)])
    return d, np.abs(e)
