"""The semidirect product G = R^n x_A R with nilpotent generator B.

All arithmetic in this module is exact (``fractions.Fraction``).  Vectors of
the Lie algebra g = n + R b are stored as tuples of length n+1, the last
coordinate being the b-component.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .errors import (BadFrame, NotBracketGenerating, NotIntegralSL,
                     NotNilpotent, SingularMatrix)


def frac(x):
    """Parse ints, Fractions and "p/q" strings exactly (floats are refused)."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot read {x!r} as an exact rational")


def frac_str(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# --- small exact linear algebra -------------------------------------------

def identity(n):
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def zeros(n, m=None):
    m = n if m is None else m
    return tuple(tuple(Fraction(0) for _ in range(m)) for _ in range(n))


def matmul(X, Y):
    cols = list(zip(*Y))
    return tuple(tuple(sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in cols)
                 for row in X)


def matvec(X, v):
    return tuple(sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in X)


def transpose(X):
    return tuple(zip(*X))


def matadd(X, Y, c=1):
    return tuple(tuple(a + c * b for a, b in zip(r, s)) for r, s in zip(X, Y))


def is_zero(X):
    return all(a == 0 for row in X for a in row)


def rref(rows):
    """Row-reduced echelon form; returns (reduced rows, pivot columns)."""
    A = [list(map(Fraction, r)) for r in rows]
    pivots = []
    r = 0
    ncols = len(A[0]) if A else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [a * inv for a in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def rank(rows):
    rows = [r for r in rows]
    if not rows:
        return 0
    return len(rref(rows)[1])


def det(M):
    A = [list(map(Fraction, r)) for r in M]
    n = len(A)
    sign = 1
    out = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if A[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            A[c], A[p] = A[p], A[c]
            sign = -sign
        out *= A[c][c]
        for i in range(c + 1, n):
            f = A[i][c] / A[c][c]
            if f:
                A[i] = [a - f * b for a, b in zip(A[i], A[c])]
    return sign * out


def solve(M, rhs):
    """Solve M x = rhs exactly for square invertible M."""
    n = len(M)
    aug = [list(map(Fraction, M[i])) + [Fraction(rhs[i])] for i in range(n)]
    red, piv = rref(aug)
    if len(piv) < n or piv[-1] == n:
        raise SingularMatrix("linear system is singular")
    return tuple(red[i][n] for i in range(n))


# --- model types ----------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ModelSpec:
    n: int
    B: tuple
    d: int
    frame: tuple
    b_norm: Fraction
    complement: tuple = None
    preset: dict = field(default=None)
    gamma: tuple = None

    @classmethod
    def build(cls, n, B, d, frame, b_norm, complement=None, preset=None, gamma=None):
        B = tuple(tuple(frac(a) for a in row) for row in B)
        frame = tuple(tuple(frac(a) for a in v) for v in frame)
        if complement is not None:
            complement = tuple(tuple(frac(a) for a in v) for v in complement)
        if gamma is not None:
            gamma = tuple(tuple(tuple(frac(a) for a in row) for row in plane) for plane in gamma)
        return cls(int(n), B, int(d), frame, frac(b_norm), complement, preset, gamma)


@dataclass(frozen=True, eq=False)
class ValidatedModel:
    spec: ModelSpec
    step: int
    checks: tuple

    def __getattr__(self, name):
        if name == "spec":
            raise AttributeError(name)
        return getattr(self.spec, name)

    @property
    def family(self):
        return (self.spec.preset or {}).get("family")


def _as_spec(model):
    return model.spec if isinstance(model, ValidatedModel) else model


def nilpotency_step(B):
    n = len(B)
    P = identity(n)
    for J in range(1, n + 1):
        P = matmul(P, B)
        if is_zero(P):
            return J
    return None


def bracket(model, X, Y):
    """[(x,s),(y,t)] = (sBy - tBx, 0) in g = R^n x_B R."""
    spec = _as_spec(model)
    n = spec.n
    x, s = X[:n], X[n]
    y, t = Y[:n], Y[n]
    By = matvec(spec.B, y)
    Bx = matvec(spec.B, x)
    return tuple(s * a - t * c for a, c in zip(By, Bx)) + (Fraction(0),)


def frame_vectors(model):
    """Orthonormal frame s_1..s_d of H as vectors of g (s_d = b/|b|)."""
    spec = _as_spec(model)
    out = [tuple(v) + (Fraction(0),) for v in spec.frame]
    out.append(tuple(Fraction(0) for _ in range(spec.n)) + (1 / spec.b_norm,))
    return out


def bracket_generated_dim(model):
    """Dimension of the Lie algebra generated by H under iterated brackets."""
    spec = _as_spec(model)
    H = frame_vectors(spec)
    span = list(H)
    layer = list(H)
    current = rank(span)
    while True:
        new = [bracket(spec, X, Y) for X in H for Y in layer]
        new = [v for v in new if any(v)]
        if not new:
            return current
        cand = span + new
        r = rank(cand)
        if r == current:
            return current
        red, _ = rref(cand)
        span = [tuple(row) for row in red]
        layer = new
        current = r


def validate_model(spec):
    """Check every structural hypothesis; return a ValidatedModel."""
    spec = _as_spec(spec)
    n = spec.n
    checks = []
    if n < 1 or len(spec.B) != n or any(len(r) != n for r in spec.B):
        raise BadFrame(f"B must be an {n}x{n} matrix")
    step = nilpotency_step(spec.B)
    if step is None:
        raise NotNilpotent("B^n != 0: B is not nilpotent")
    checks.append("nilpotent")
    A1 = exp_tB(spec, 1, _checked=True)
    if any(a.denominator != 1 for row in A1 for a in row):
        raise NotIntegralSL("A(1) = exp(B) has non-integral entries")
    if det(A1) != 1:
        raise NotIntegralSL("det A(1) != 1")
    checks.append("A(1) in SL(n,Z)")
    if not 2 <= spec.d <= n + 1:
        raise BadFrame(f"d={spec.d} outside 2..n+1")
    if len(spec.frame) != spec.d - 1 or any(len(v) != n for v in spec.frame):
        raise BadFrame(f"frame must hold d-1={spec.d - 1} vectors of length n={n}")
    if spec.b_norm <= 0:
        raise BadFrame("b_norm must be positive")
    if spec.frame and rank(spec.frame) != len(spec.frame):
        raise BadFrame("frame vectors are linearly dependent")
    checks.append("frame")
    if bracket_generated_dim(spec) != n + 1:
        raise NotBracketGenerating("iterated brackets of H do not span g")
    checks.append("bracket generating")
    if spec.complement is not None:
        if len(spec.complement) != n + 1 - spec.d or any(len(v) != n + 1 for v in spec.complement):
            raise BadFrame(f"complement must hold n+1-d={n + 1 - spec.d} vectors of length n+1")
        if rank(frame_vectors(spec) + list(spec.complement)) != n + 1:
            raise BadFrame("frame and complement do not form a basis of g")
        checks.append("complement")
    if spec.gamma is not None:
        d = spec.d
        if len(spec.gamma) != d or any(len(p) != d or any(len(r) != d for r in p) for p in spec.gamma):
            raise BadFrame("gamma must be a d x d x d array")
        checks.append("gamma override")
    return ValidatedModel(spec, step, tuple(checks))


def exp_tB(model, t, _checked=False):
    """A(t) = sum_k t^k B^k / k!, exact."""
    spec = _as_spec(model)
    t = frac(t) if not isinstance(t, Fraction) else t
    n = spec.n
    out = identity(n)
    P = identity(n)
    for k in range(1, n + 1):
        P = matmul(P, spec.B)
        if is_zero(P):
            break
        out = matadd(out, P, t ** k / factorial(k))
    return out


def coadjoint(model, t, xi):
    """A(t)^T xi."""
    A = exp_tB(model, t)
    return matvec(transpose(A), tuple(frac(x) for x in xi))


def coadjoint_poly(model, xi):
    """Coefficient vectors c_k = (B^T)^k xi / k! so that A(t)^T xi = sum_k t^k c_k."""
    spec = _as_spec(model)
    BT = transpose(spec.B)
    v = tuple(frac(x) for x in xi)
    out = [v]
    k = 1
    while True:
        v = matvec(BT, v)
        if not any(v):
            return out
        out.append(tuple(a / factorial(k) for a in v))
        k += 1
        if k > spec.n + 1:
            raise NotNilpotent("coadjoint polynomial does not terminate")


def is_fixed(model, xi):
    spec = _as_spec(model)
    return not any(matvec(transpose(spec.B), tuple(frac(x) for x in xi)))


# --- Smith normal form ----------------------------------------------------

def smith_normal_form(M):
    """Return (Q1, R, Q2) with R = Q1 M Q2^{-1}, R = diag(r_1..r_p), r_{v+1} | r_v.

    Q1 and Q2 are unimodular integer matrices (lists of lists of int).
    """
    A = [[int(frac(a)) for a in row] for row in M]
    p = len(A)
    if p == 0 or any(len(r) != p for r in A):
        raise SingularMatrix("matrix must be square and non-empty")
    if det(A) == 0:
        raise SingularMatrix("det M = 0")
    U = [[int(i == j) for j in range(p)] for i in range(p)]      # left factor
    Vi = [[int(i == j) for j in range(p)] for i in range(p)]     # inverse of right factor

    def swap_rows(X, i, j):
        X[i], X[j] = X[j], X[i]

    def col_add(i, j, q):
        # column_j += q * column_i on A, and the inverse update on Vi
        for r in range(p):
            A[r][j] += q * A[r][i]
        Vi[i] = [a - q * b for a, b in zip(Vi[i], Vi[j])]

    def col_swap(i, j):
        for r in range(p):
            A[r][i], A[r][j] = A[r][j], A[r][i]
        swap_rows(Vi, i, j)

    def row_add(i, j, q):
        # row_j += q * row_i
        A[j] = [a + q * b for a, b in zip(A[j], A[i])]
        U[j] = [a + q * b for a, b in zip(U[j], U[i])]

    for s in range(p):
        while True:
            # smallest nonzero entry of the trailing block to (s, s)
            best = None
            for i in range(s, p):
                for j in range(s, p):
                    if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                        best = (i, j)
            i, j = best
            if i != s:
                swap_rows(A, i, s)
                swap_rows(U, i, s)
            if j != s:
                col_swap(j, s)
            piv = A[s][s]
            dirty = False
            for i in range(s + 1, p):
                q = A[i][s] // piv
                if q:
                    row_add(s, i, -q)
                if A[i][s]:
                    dirty = True
            for j in range(s + 1, p):
                q = A[s][j] // piv
                if q:
                    col_add(s, j, -q)
                if A[s][j]:
                    dirty = True
            if dirty:
                continue
            bad = next(((i, j) for i in range(s + 1, p) for j in range(s + 1, p)
                        if A[i][j] % piv), None)
            if bad is None:
                break
            row_add(bad[0], s, 1)
        if A[s][s] < 0:
            A[s] = [-a for a in A[s]]
            U[s] = [-a for a in U[s]]
    # ascending divisibility -> descending (r_{v+1} | r_v)
    order = list(range(p))[::-1]
    Q1 = [U[i] for i in order]
    R = [[A[order[i]][order[i]] if i == j else 0 for j in range(p)] for i in range(p)]
    Q2 = [Vi[i] for i in order]
    return Q1, R, Q2


# --- preset families -------------------------------------------------------

def _e(n, i):
    return tuple(Fraction(int(j == i)) for j in range(n))


def heisenberg(r=1, d=1, T=1, subriemannian=False):
    """Heisenberg manifold with [b, e2] = r e1 and frame s1=e1/T, s2=-d e2, s3=(d/r) b.

    In the sub-Riemannian variant H = span{s2, s3} and V = R e1.
    """
    r, d, T = frac(r), frac(d), frac(T)
    if r < 1 or r.denominator != 1 or d <= 0 or T <= 0:
        raise BadFrame("heisenberg needs integer r >= 1 and positive d, T")
    B = ((Fraction(0), r), (Fraction(0), Fraction(0)))
    s1 = (1 / T, Fraction(0))
    s2 = (Fraction(0), -d)
    b_norm = r / d
    preset = {"family": "heisenberg", "r": int(r), "d": d, "T": T,
              "distribution": "subriemannian" if subriemannian else "riemannian"}
    if subriemannian:
        spec = ModelSpec.build(2, B, 2, [s2], b_norm, complement=[(1, 0, 0)], preset=preset)
    else:
        spec = ModelSpec.build(2, B, 3, [s1, s2], b_norm, complement=[], preset=preset)
    return validate_model(spec)


def block2step(r):
    """Standard 2-step block model A(t) = [[I, tR], [0, I]], R = diag(r)."""
    r = [int(x) for x in r]
    p = len(r)
    if any(x == 0 for x in r):
        raise BadFrame("r_v must be nonzero")
    n = 2 * p
    B = [[Fraction(0)] * n for _ in range(n)]
    for v in range(p):
        B[v][p + v] = Fraction(r[v])
    frame = [_e(n, p + v) for v in range(p)]
    complement = [_e(n + 1, v) for v in range(p)]
    preset = {"family": "block2step", "p": p, "r": list(r)}
    spec = ModelSpec.build(n, B, p + 1, frame, 1, complement=complement, preset=preset)
    return validate_model(spec)


def fivedim(r1=2, r2=2, gamma=None):
    m = block2step([r1, r2])
    if gamma is None:
        return m
    s = m.spec
    spec = ModelSpec.build(s.n, s.B, s.d, s.frame, s.b_norm, s.complement, s.preset, gamma)
    return validate_model(spec)


def threestep(r1=2, r2=2):
    """B = [[0, r1, 0], [0, 0, r2], [0, 0, 0]], H = span{e3, b}, V = span{e1, e2}."""
    r1, r2 = int(r1), int(r2)
    if r1 == 0 or r2 == 0:
        raise BadFrame("r1, r2 must be nonzero")
    B = [[0, r1, 0], [0, 0, r2], [0, 0, 0]]
    preset = {"family": "threestep", "r1": r1, "r2": r2}
    spec = ModelSpec.build(3, B, 2, [_e(3, 2)], 1,
                           complement=[_e(4, 0), _e(4, 1)], preset=preset)
    return validate_model(spec)
