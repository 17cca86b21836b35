"""Pure-numpy versions of the tridiagonal kernels, used when the extension is absent.

Shifts are processed as vectors, so bisection advances all requested
eigenvalues together.
"""
import numpy as np

EPS = np.finfo(float).eps


def _prep(d, e):
    d = np.asarray(d, dtype=np.float64)
    e = np.asarray(e, dtype=np.float64)
    e2 = e * e
    if d.shape[0] > 1:
        r = np.abs(np.concatenate(([0.0], e))) + np.abs(np.concatenate((e, [0.0])))
        lo, hi = float(np.min(d - r)), float(np.max(d + r))
    else:
        lo = hi = float(d[0])
    scale = max(abs(lo), abs(hi), 1e-300)
    pivmin = max(float(np.max(e2)) if e2.shape[0] else 0.0, 1.0) * 1e-300
    return d, e2, lo - 1e-12 * scale, hi + 1e-12 * scale, scale, pivmin


def _counts_vec(d, e2, x, pivmin):
    q = d[0] - x
    q = np.where(np.abs(q) < pivmin, -pivmin, q)
    c = (q < 0).astype(np.int64)
    for i in range(1, d.shape[0]):
        q = d[i] - x - e2[i - 1] / q
        q = np.where(np.abs(q) < pivmin, -pivmin, q)
        c += q < 0
    return c


def _counts_scalar(dl, e2l, xs, pivmin):
    out = []
    for x in xs:
        q = dl[0] - x
        if abs(q) < pivmin:
            q = -pivmin
        c = q < 0
        for di, ei in zip(dl[1:], e2l):
            q = di - x - ei / q
            if abs(q) < pivmin:
                q = -pivmin
            c += q < 0
        out.append(c)
    return np.array(out, dtype=np.int64)


# below this many shifts a plain float loop beats per-row numpy calls
SCALAR_SHIFTS = 32


def _counts(d, e2, x, pivmin, lists=None):
    if x.shape[0] <= SCALAR_SHIFTS:
        dl, e2l = lists if lists is not None else (d.tolist(), e2.tolist())
        return _counts_scalar(dl, e2l, x.tolist(), pivmin)
    return _counts_vec(d, e2, x, pivmin)


def sturm_count(d, e, shifts):
    d, e2, _, _, _, pivmin = _prep(d, e)
    return _counts(d, e2, np.atleast_1d(np.asarray(shifts, dtype=np.float64)), pivmin)


def bisect_eigenvalues(d, e, k_lo, k_hi, rtol=4 * EPS):
    d, e2, lo0, hi0, scale, pivmin = _prep(d, e)
    k = np.arange(k_lo, k_hi)
    lo = np.full(k.shape, lo0)
    hi = np.full(k.shape, hi0)
    atol = 2 * EPS * scale
    lists = (d.tolist(), e2.tolist())
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        below = _counts(d, e2, mid, pivmin, lists) <= k
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
        if np.all(hi - lo <= atol + rtol * np.abs(mid)):
            break
    return 0.5 * (lo + hi)


def tql_eigenvalues(d, e, max_iter=60):
    # the QL sweep is scalar; in pure Python bisection over all indices is faster
    return np.sort(bisect_eigenvalues(d, e, 0, len(d)))


def band_to_tridiagonal(A, m):
    # Householder on the dense matrix is the vectorizable choice in numpy
    from .eigen import householder_tridiagonal
    T = householder_tridiagonal(np.asarray(A, dtype=np.float64), want_basis=False)
    return T.d, T.e
