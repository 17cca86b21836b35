"""Independent discretizations of the reduced operators.

fd_dirac:        first-order 2-component operator alpha + c s_d d/dt + i Omega(t)
fd_schrodinger:  -d^2/dt^2 + V(t) with the 3-point Laplacian
hermite_galerkin: scaled Hermite-function bases (quartic potentials, affine symbols)

Everything returns a DiscretizedOperator; hermitian_eigenvalues diagonalizes
it with the package's own solver.
"""
import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .eigen import (Tridiagonal, check_hermitian, householder_tridiagonal, inverse_iteration,
                    residual_check, tridiagonal_eigenvalues)
from .errors import DomainTooSmall, NotConverged

_I2 = np.eye(2, dtype=complex)
_SX = np.array([[0, 1], [1, 0]], dtype=complex)
_SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
_SZ = np.array([[1, 0], [0, -1]], dtype=complex)


class CliffordRep2:
    """The fixed 2x2 Clifford matrices for d = 2 or 3, s_d = diag(i, -i)."""

    def __init__(self, d):
        if d == 2:
            self.mats = (np.array([[0, -1], [1, 0]], dtype=complex),
                         np.array([[1j, 0], [0, -1j]]))
        elif d == 3:
            self.mats = (np.array([[0, 1j], [1j, 0]]),
                         np.array([[0, -1], [1, 0]], dtype=complex),
                         np.array([[1j, 0], [0, -1j]]))
        else:
            raise ValueError("only d = 2 and d = 3 are supported")
        self.d = d

    def __getitem__(self, i):
        return self.mats[i]

    def check(self):
        for i, si in enumerate(self.mats):
            if not np.allclose(si.conj().T, -si):
                return False
            for j, sj in enumerate(self.mats):
                if not np.allclose(si @ sj + sj @ si, -2 * (i == j) * _I2):
                    return False
        return True


@dataclass
class DiscretizedOperator:
    """A Hermitian discretization: tridiagonal (d, e) or a dense matrix."""
    grid: dict
    operator: dict
    d: np.ndarray = None
    e: np.ndarray = None
    matrix: np.ndarray = None
    extra: dict = field(default_factory=dict)

    @property
    def is_tridiagonal(self):
        return self.matrix is None

    @property
    def size(self):
        return self.d.shape[0] if self.is_tridiagonal else self.matrix.shape[0]

    def dense(self):
        if not self.is_tridiagonal:
            return self.matrix
        return np.diag(self.d) + np.diag(self.e, 1) + np.diag(self.e, -1)

    def tridiagonal(self, want_basis=True):
        if self.is_tridiagonal:
            return Tridiagonal(self.d, self.e)
        m = self.extra.get("bandwidth")
        if m is not None and not want_basis:
            return Tridiagonal(*kernels.band_to_tridiagonal(self.matrix, m))
        return householder_tridiagonal(self.matrix, want_basis)

    def matvec(self, v):
        if self.is_tridiagonal:
            return Tridiagonal(self.d, self.e).matvec(v)
        return self.matrix @ v

    def norm(self):
        if self.is_tridiagonal:
            return Tridiagonal(self.d, self.e).norm()
        return float(np.abs(self.matrix).sum(axis=1).max())


def hermitian_eigenvalues(op, select=None, check=True):
    """Ascending eigenvalues of a DiscretizedOperator (or a dense Hermitian array)."""
    if not isinstance(op, DiscretizedOperator):
        op = DiscretizedOperator({}, {}, matrix=np.asarray(op))
    if not op.is_tridiagonal:
        check_hermitian(op.matrix)
    T = op.tridiagonal(want_basis=check)
    w = tridiagonal_eigenvalues(T, select)
    if check:
        residual_check(op.matvec, T, w, op.norm())
    return w


# --- first-order operators -------------------------------------------------

def _polyval(coeffs, t):
    out = np.zeros_like(t)
    for c in reversed(list(coeffs)):
        out = out * t + c
    return out


def fd_dirac(clifford, a_coef, omega_poly, L, N, alpha=0.0, center=0.0):
    """Staggered-grid discretization of alpha + a_coef s_d d/dt + i sum_j Omega_j(t) s_j.

    omega_poly[j] holds ascending real coefficients of Omega_j. A unitary
    rotation maps s_d d/dt to J d/dt with J = [[0, 1], [-1, 0]] and makes the
    multiplication part real; the two spinor components then live on
    interleaved grids (u at t_j, v at t_j + h/2), which gives a real symmetric
    tridiagonal matrix without the doubled modes of central differences.
    """
    if N < 100 or L <= 0:
        raise ValueError("fd_dirac needs N >= 100 and L > 0")
    if all(len([c for c in p[1:] if c]) == 0 for p in omega_poly):
        raise ValueError("omega_poly must be non-constant")
    d = clifford.d
    M = [1j * clifford[j] for j in range(d - 1)]
    # M_j = mx_j sigma_x + my_j sigma_y (traceless Hermitian, anticommutes with s_d)
    mx = [float(np.real(np.trace(Mj @ _SX)) / 2) for Mj in M]
    my = [float(np.real(np.trace(Mj @ _SY)) / 2) for Mj in M]
    h = 2.0 * L / N
    tj = center - L + h * np.arange(N)

    def m1(t):  # coefficient of sigma_z after the rotation
        return -sum(my[j] * _polyval(omega_poly[j], t) for j in range(d - 1))

    def m2(t):  # coefficient of sigma_x
        return sum(mx[j] * _polyval(omega_poly[j], t) for j in range(d - 1))

    c = float(a_coef)
    diag = np.empty(2 * N)
    diag[0::2] = alpha + m1(tj)
    diag[1::2] = alpha - m1(tj + h / 2)
    off = np.empty(2 * N - 1)
    off[0::2] = c / h + m2(tj + h / 4) / 2
    off[1::2] = -c / h + m2(tj[:-1] + 3 * h / 4) / 2
    return DiscretizedOperator({"kind": "staggered", "L": L, "N": N, "h": h, "center": center},
                               {"kind": "dirac", "a": c, "omega": [list(p) for p in omega_poly],
                                "alpha": alpha, "d": d},
                               d=diag, e=off)


def symbol_dirac_data(sym):
    """(clifford, a_coef, omega_poly, alpha) realizing alpha + beta [[i d, conj w], [w, -i d]]."""
    cl = CliffordRep2(3)
    w1 = sym.a * sym.omega1
    w0 = sym.omega0
    # beta (Re w sigma_x + Im w sigma_y) = i(-beta Re w s_1 + beta Im w s_2)
    om = [[-sym.beta * w0.real, -sym.beta * w1.real], [sym.beta * w0.imag, sym.beta * w1.imag]]
    return cl, sym.beta, om, sym.alpha


def model_dirac_data(model, table, xi):
    """(clifford, a_coef, omega_poly, alpha) of D_xi straight from the model.

    Omega_j(t) = pi <A(t)^T xi, s_j> and a_coef = 1/|b|; no reduction to a
    symbol is involved, so this also covers the 3-step family.
    """
    from .closed_form import frame_pairings
    from .group_model import _as_spec
    spec = _as_spec(model)
    g = frame_pairings(spec, xi)
    om = [[math.pi * float(c) for c in row] for row in g]
    alpha = float(table.alpha) if table is not None else 0.0
    return CliffordRep2(spec.d), 1.0 / float(spec.b_norm), om, alpha


def affine_window(sym, levels):
    """(center, L) holding the first `levels` Hermite-like modes of an affine symbol."""
    center = -(sym.omega0 * sym.omega1.conjugate()).real / sym.a
    L = 1.0 + (math.sqrt(2 * levels + 1) + 7.0) / math.sqrt(sym.a)
    return center, L


def _boundary_mass(y, t, center, L):
    w = np.abs(y) ** 2
    far = np.abs(t - center) > L - 1
    return float(w[far].sum() / w.sum())


def fd_dirac_eigenvalues(clifford, a_coef, omega_poly, L, N, n_below, n_above, alpha=0.0,
                         center=0.0, ref=None, check_domain=True):
    """Eigenvalues around ref (default alpha): n_below of them below, n_above at or above."""
    op = fd_dirac(clifford, a_coef, omega_poly, L, N, alpha, center)
    T = op.tridiagonal()
    ref = alpha if ref is None else ref
    i0 = int(kernels.sturm_count(T.d, T.e, [ref])[0])
    w = tridiagonal_eigenvalues(T, ("index", i0 - n_below, i0 + n_above))
    if check_domain and len(w):
        h = op.grid["h"]
        t = np.empty(2 * N)
        t[0::2] = center - L + h * np.arange(N)
        t[1::2] = t[0::2] + h / 2
        for lam in (w[0], w[-1]):
            y = inverse_iteration(T, lam)
            mass = _boundary_mass(y, t, center, L)
            if mass > 1e-8:
                raise DomainTooSmall(f"eigenfunction mass {mass:.2e} within 1 of the boundary")
    return w


def richardson(values_h, values_h2):
    """Second-order extrapolation from step h and h/2."""
    return (4 * np.asarray(values_h2) - np.asarray(values_h)) / 3


def dirac_oracle(clifford, a_coef, omega_poly, L, N, n_below, n_above, alpha=0.0, center=0.0,
                 ref=None):
    """Richardson-extrapolated staggered FD eigenvalues with a crude error estimate."""
    w1 = fd_dirac_eigenvalues(clifford, a_coef, omega_poly, L, N, n_below, n_above, alpha,
                              center, ref)
    w2 = fd_dirac_eigenvalues(clifford, a_coef, omega_poly, L, 2 * N, n_below, n_above, alpha,
                              center, ref, check_domain=False)
    return richardson(w1, w2), np.abs(w2 - w1) / 3


# --- second-order operators ------------------------------------------------

def fd_schrodinger(potential_poly, L, N, center=0.0):
    """-d^2/dt^2 + V on N interior nodes of [center-L, center+L], Dirichlet ends.

    potential_poly is either ascending coefficients or a callable V(t).
    """
    h = 2.0 * L / (N + 1)
    t = center - L + h * np.arange(1, N + 1)
    V = potential_poly(t) if callable(potential_poly) else _polyval(potential_poly, t)
    return DiscretizedOperator({"kind": "3-point", "L": L, "N": N, "h": h, "center": center},
                               {"kind": "schrodinger"},
                               d=2.0 / h ** 2 + V, e=np.full(N - 1, -1.0 / h ** 2),
                               extra={"t": t})


def schrodinger_eigenvalues(potential_poly, count, L, N, center=0.0, check_domain=False):
    op = fd_schrodinger(potential_poly, L, N, center)
    T = op.tridiagonal()
    w = tridiagonal_eigenvalues(T, ("index", 0, count))
    if check_domain:
        y = inverse_iteration(T, w[-1])
        mass = _boundary_mass(y, op.extra["t"], center, L)
        if mass > 1e-8:
            raise DomainTooSmall(f"eigenfunction mass {mass:.2e} within 1 of the boundary")
    return w


def schrodinger_richardson(potential_poly, count, L, N, center=0.0):
    """Two-stage Richardson over N, 2N+1, 4N+3 nodes (step halves each time).

    Returns (values, error estimate).
    """
    lam = [schrodinger_eigenvalues(potential_poly, count, L, n, center, check_domain=(i == 0))
           for i, n in enumerate((N, 2 * N + 1, 4 * N + 3))]
    r1 = richardson(lam[0], lam[1])
    r2 = richardson(lam[1], lam[2])
    r = (16 * r2 - r1) / 15
    # rounding in the finest matrix (norm ~ 4/h^2) is amplified by the extrapolation
    h = 2.0 * L / (4 * N + 4)
    rounding = 16 * np.finfo(float).eps * (4.0 / h ** 2 + np.abs(r))
    return r, np.abs(r2 - r1) / 15 + rounding


# --- Hermite bases ---------------------------------------------------------

def position_matrix(K):
    """x in the normalized Hermite basis: x h_k = sqrt(k/2) h_{k-1} + sqrt((k+1)/2) h_{k+1}."""
    off = np.sqrt(np.arange(1, K) / 2.0)
    return np.diag(off, 1) + np.diag(off, -1)


def quartic_galerkin_matrix(a, b, c, sign, K, sigma):
    """-d^2 + (a t^2 + b t + c)^2 + sign (2 a t + b) in the Hermite basis scaled by t = sigma x."""
    Kb = K + 4
    X = position_matrix(Kb) * sigma
    X2 = X @ X
    Q = a * X2 + b * X + c * np.eye(Kb)
    V = Q @ Q + sign * (2 * a * X + b * np.eye(Kb))
    # -d_t^2 = sigma^-2 (H_osc - x^2)
    kin = (np.diag(2.0 * np.arange(Kb) + 1.0) - X2 / sigma ** 2) / sigma ** 2
    M = (kin + V)[:K, :K]
    return 0.5 * (M + M.T)


def default_sigma(a, K):
    # balances the basis extent sqrt(2K) sigma against the quartic turning points
    return (1.0 / max(abs(a), 1e-300)) ** (1 / 3) * max(1.0, (K / 40.0) ** (1 / 6))


def hermite_galerkin(problem, K, sigma=None):
    """Galerkin matrix for a QuarticProblem, or the exact block matrix S for an AffineDiracSymbol."""
    if K < 50:
        raise ValueError("hermite_galerkin needs K >= 50")
    if hasattr(problem, "omega1"):
        return _affine_blocks(problem, K)
    a, b, c = problem.a, problem.b, problem.c
    sign = 1 if problem.sign in ("+", 1) else -1
    sigma = default_sigma(a, K) if sigma is None else sigma
    M = quartic_galerkin_matrix(a, b, c, sign, K, sigma)
    return DiscretizedOperator({"kind": "hermite", "K": K, "sigma": sigma},
                               {"kind": "quartic", "a": a, "b": b, "c": c, "sign": sign}, matrix=M,
                               extra={"bandwidth": 4})


def ladder_matrices(a, K):
    """Shifted-basis creation/annihilation: C u_k = sqrt(2a(k+1)) u_{k+1}, A u_k = sqrt(2ak) u_{k-1}."""
    s = np.sqrt(2.0 * a * np.arange(1, K))
    return np.diag(s, -1), np.diag(s, 1)


def _affine_blocks(sym, K):
    """S = Q^* D Q in the ordered basis (u_0,0)..(u_{K-2},0), (0,u_0)..(0,u_{K-1}).

    The truncation keeps whole invariant blocks V_k, so the eigenvalues are
    exactly lambda_0 and lambda_k^+- for k < K (up to rounding).
    """
    w1 = sym.omega1
    im = (sym.omega0 * np.conj(w1)).imag
    C, A = ladder_matrices(sym.a, K)
    n1 = K - 1
    S = np.zeros((n1 + K, n1 + K), dtype=complex)
    S[:n1, :n1] = -im * np.eye(n1)
    S[n1:, n1:] = im * np.eye(K)
    S[:n1, n1:] = np.conj(w1) * A[:n1, :]
    S[n1:, :n1] = w1 * C[:, :n1]
    M = sym.alpha * np.eye(n1 + K) + sym.beta * S
    return DiscretizedOperator({"kind": "hermite-shifted", "K": K},
                               {"kind": "affine", "alpha": sym.alpha, "beta": sym.beta},
                               matrix=M)


def affine_block_eigenvalues(sym, k_max):
    """lambda_0 and the 2x2 blocks on V_1..V_kmax diagonalized one by one."""
    im = (sym.omega0 * np.conj(sym.omega1)).imag
    out = [sym.alpha + sym.beta * im]
    for k in range(1, k_max + 1):
        r = np.sqrt(2 * sym.a * k)
        blk = np.array([[-im, r * np.conj(sym.omega1)], [r * sym.omega1, im]])
        w = hermitian_eigenvalues(sym.alpha * np.eye(2) + sym.beta * blk, check=False)
        out.extend(w)
    return np.sort(np.asarray(out, dtype=float))


def affine_dirac_matrix(sym, K):
    """D itself (alpha=0, beta=1) in the basis (u_k,0), (0,u_k), k < K.

    Uses d/dt = (A - C)/2 and a t + Re(w0 conj w1) = (A + C)/2.
    """
    C, A = ladder_matrices(sym.a, K)
    re = (sym.omega0 * np.conj(sym.omega1)).real
    ddt = (A - C) / 2
    omega = sym.omega1 * ((A + C) / 2 - re * np.eye(K)) + sym.omega0 * np.eye(K)
    D = np.block([[1j * ddt, omega.conj().T], [omega, -1j * ddt]])
    return D


def q_matrix(omega1):
    return np.array([[1, -1j * np.conj(omega1)], [-1j * omega1, 1]]) / np.sqrt(2)


def require_agreement(a, b, tol, what):
    err = np.max(np.abs(np.asarray(a) - np.asarray(b)) / np.maximum(1.0, np.abs(np.asarray(a))))
    if err > tol:
        raise NotConverged(f"{what}: discrepancy {err:.3e} > {tol:g}")
    return err
