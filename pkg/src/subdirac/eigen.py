"""Self-contained Hermitian eigensolver.

Dense input is reduced to a real symmetric tridiagonal matrix by Householder
reflections (complex off-diagonals are absorbed by a diagonal phase
similarity), then handed to the tridiagonal kernels. Eigenvectors, needed for
residual checks and boundary-mass diagnostics, come from inverse iteration.
"""
import numpy as np

from . import kernels
from .errors import NoConvergence, NotHermitian

HERM_TOL = 1e-13


class Tridiagonal:
    """Real symmetric tridiagonal T with an optional back-transform to the source basis."""

    def __init__(self, d, e, basis=None):
        self.d = np.asarray(d, dtype=np.float64)
        self.e = np.asarray(e, dtype=np.float64)
        self.basis = basis  # columns map T-coordinates to source coordinates

    @property
    def n(self):
        return self.d.shape[0]

    def norm(self):
        if self.n == 1:
            return abs(self.d[0])
        a = np.abs(self.d)
        a[:-1] += np.abs(self.e)
        a[1:] += np.abs(self.e)
        return float(a.max())

    def matvec(self, x):
        y = self.d * x
        y[:-1] += self.e * x[1:]
        y[1:] += self.e * x[:-1]
        return y


def check_hermitian(A, tol=HERM_TOL):
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise NotHermitian("matrix is not square")
    scale = max(np.abs(A).max(), 1e-300)
    dev = np.abs(A - A.conj().T).max()
    if dev > tol * scale:
        raise NotHermitian(f"|A - A^H| = {dev:.3e} exceeds {tol:g} * |A|")
    return dev / scale


def householder_tridiagonal(A, want_basis=True):
    """T = P^H A P with P unitary and T real symmetric tridiagonal."""
    A = np.array(A, dtype=np.complex128 if np.iscomplexobj(A) else np.float64)
    A = 0.5 * (A + A.conj().T)
    n = A.shape[0]
    P = np.eye(n, dtype=A.dtype) if want_basis else None
    for k in range(n - 2):
        x = A[k + 1:, k]
        nx = np.linalg.norm(x)
        if nx == 0.0:
            continue
        x0 = x[0]
        ph = x0 / abs(x0) if x0 != 0 else 1.0
        v = x.copy()
        v[0] += ph * nx
        v /= np.linalg.norm(v)
        sub = A[k + 1:, k + 1:]
        p = sub @ v
        K = np.vdot(v, p).real
        w = p - K * v
        sub -= 2.0 * (np.outer(v, w.conj()) + np.outer(w, v.conj()))
        A[k + 1:, k] = 0.0
        A[k, k + 1:] = 0.0
        A[k + 1, k] = -ph * nx
        A[k, k + 1] = np.conj(A[k + 1, k])
        if want_basis:
            Pk = P[:, k + 1:]
            Pk -= 2.0 * np.outer(Pk @ v, v.conj())
    d = np.real(np.diag(A)).copy()
    sub = np.diag(A, -1).copy()
    e = np.abs(sub)
    if want_basis and np.iscomplexobj(A):
        # phase similarity making the off-diagonal real and nonnegative
        phases = np.ones(n, dtype=np.complex128)
        for k in range(n - 1):
            phases[k + 1] = phases[k] * (sub[k] / e[k] if e[k] else 1.0)
        P = P * phases[None, :]
    elif want_basis:
        sgn = np.ones(n)
        for k in range(n - 1):
            sgn[k + 1] = sgn[k] * (1.0 if sub[k] >= 0 else -1.0)
        P = P * sgn[None, :]
    return Tridiagonal(d, e, P)


def tridiagonal_solve(d, e, rhs):
    """Solve (tridiag(e, d, e)) x = rhs by Gaussian elimination with partial pivoting.

    Tiny pivots are replaced by eps*|T| so the routine also serves inverse iteration.
    """
    n = d.shape[0]
    tiny = np.finfo(float).eps * max(np.abs(d).max(), np.abs(e).max() if n > 1 else 0.0, 1e-300)
    # rows carry three upper entries after pivoting: (diag, super1, super2)
    a = np.zeros(n)
    b = np.zeros(n)
    c = np.zeros(n)
    x = np.array(rhs, dtype=rhs.dtype if np.iscomplexobj(rhs) else np.float64)
    cur_d = d[0]
    cur_u = e[0] if n > 1 else 0.0
    for i in range(n - 1):
        low = e[i]
        nd = d[i + 1]
        nu = e[i + 1] if i + 1 < n - 1 else 0.0
        if abs(cur_d) >= abs(low):
            piv = cur_d if cur_d != 0.0 else tiny
            m = low / piv
            a[i], b[i], c[i] = piv, cur_u, 0.0
            x[i + 1] -= m * x[i]
            cur_d = nd - m * cur_u
            cur_u = nu
        else:
            m = cur_d / low
            a[i], b[i], c[i] = low, nd, nu
            xi = x[i]
            x[i] = x[i + 1]
            x[i + 1] = xi - m * x[i + 1]
            cur_d = cur_u - m * nd
            cur_u = -m * nu
    a[n - 1] = cur_d if abs(cur_d) > tiny else tiny
    out = x
    out[n - 1] = out[n - 1] / a[n - 1]
    if n > 1:
        out[n - 2] = (out[n - 2] - b[n - 2] * out[n - 1]) / a[n - 2]
    for i in range(n - 3, -1, -1):
        out[i] = (out[i] - b[i] * out[i + 1] - c[i] * out[i + 2]) / a[i]
    return out


def inverse_iteration(T, lam, iters=3, seed=0):
    """Eigenvector of the tridiagonal T for the eigenvalue estimate lam."""
    rng = np.random.default_rng(seed)
    x = rng.standard_normal(T.n)
    shift = lam + 4 * np.finfo(float).eps * max(T.norm(), 1.0)
    for _ in range(iters):
        x = tridiagonal_solve(T.d - shift, T.e, x)
        x /= np.linalg.norm(x)
    return x


def tridiagonal_eigenvalues(T, select=None):
    """Eigenvalues of T, optionally restricted.

    select: None (all), ("index", lo, hi) for ascending indices lo..hi-1,
    or ("interval", a, b) for all eigenvalues in [a, b).
    """
    if select is None:
        w = kernels.tql_eigenvalues(T.d, T.e)
        if w is None:
            w = np.sort(kernels.bisect_eigenvalues(T.d, T.e, 0, T.n))
        return np.asarray(w)
    kind = select[0]
    if kind == "index":
        lo, hi = max(int(select[1]), 0), min(int(select[2]), T.n)
        return np.asarray(kernels.bisect_eigenvalues(T.d, T.e, lo, hi))
    if kind == "interval":
        lo, hi = kernels.sturm_count(T.d, T.e, [select[1], select[2]])
        return np.asarray(kernels.bisect_eigenvalues(T.d, T.e, int(lo), int(hi)))
    raise ValueError(f"unknown selection {select!r}")


def residual_check(A_matvec, T, values, norm, samples=5, tol=1e-10):
    """|A v - lam v| <= tol |A| on evenly spaced sample pairs; raises NoConvergence."""
    if len(values) == 0:
        return 0.0
    idx = np.unique(np.linspace(0, len(values) - 1, min(samples, len(values))).astype(int))
    worst = 0.0
    for i in idx:
        lam = values[i]
        y = inverse_iteration(T, lam)
        v = T.basis @ y if T.basis is not None else y
        r = np.linalg.norm(A_matvec(v) - lam * v) / max(np.linalg.norm(v), 1e-300)
        worst = max(worst, r / max(norm, 1e-300))
    if worst > tol:
        raise NoConvergence(f"eigen-residual {worst:.3e} exceeds {tol:g} |A|")
    return worst


def eigvalsh(A, select=None, check=True):
    """Ascending eigenvalues of a dense Hermitian matrix."""
    A = np.asarray(A)
    check_hermitian(A)
    T = householder_tridiagonal(A, want_basis=check)
    w = tridiagonal_eigenvalues(T, select)
    if check:
        residual_check(lambda v: A @ v, T, w, np.abs(A).sum(axis=1).max())
    return w
