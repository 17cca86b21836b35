"""R-orbit representatives meeting Sigma_{eps'} and their Z-orbit counts.

Closed-form enumerators exist for the Heisenberg, block 2-step and 3-step
families; ``zorbit_count_bruteforce`` recovers the counts by an exact scan of
t in (1/L)Z and serves as the oracle for all of them.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import numpy as np

from .errors import ScanInconclusive, UnsupportedModel
from .group_model import coadjoint_poly, is_fixed, matvec, transpose, identity, matmul
from .spin import _box, sigma_contains, sigma_points

FIXED = "fixed"
GENERIC = "generic"


@dataclass(frozen=True)
class OrbitRep:
    xi: tuple
    kind: str
    z_orbit_count: int
    family_data: dict = field(default=None, compare=False)

    def to_json(self):
        return {"xi": list(self.xi), "kind": self.kind, "count": self.z_orbit_count,
                "family_data": self.family_data}


def is_fixed_point(model, xi):
    return is_fixed(model, xi)


def _lcm(a, b):
    return a * b // gcd(a, b)


def _linear_functional(model, xi):
    """An integral functional v with <A(t)^T xi, v> = D*(a0 + a1 t), a1 != 0.

    Any t with A(t)^T xi integral lies in the progression (Z/D - a0)/a1.
    Returns (v, D, a0, a1).
    """
    coeffs = coadjoint_poly(model, xi)
    m = len(coeffs) - 1
    if m == 0:
        raise ValueError("fixed point has no orbit parameter")
    BT = transpose(model.B)
    top = tuple(xi)
    for _ in range(m):
        top = matvec(BT, top)
    j = next(i for i, a in enumerate(top) if a != 0)
    prev = tuple(Fraction(x) for x in xi)
    for _ in range(m - 1):
        prev = matvec(BT, prev)
    # v = B^{m-1} e_j
    e = tuple(Fraction(int(i == j)) for i in range(model.n))
    P = identity(model.n)
    for _ in range(m - 1):
        P = matmul(P, model.B)
    v = matvec(P, e)
    D = 1
    for a in v:
        D = _lcm(D, a.denominator)
    a0, a1 = prev[j], top[j]
    return tuple(int(a * D) for a in v), D, a0, a1


def default_scan_bounds(model, xi):
    """L = 4 lcm of the denominators of the predicted progression, T = 3."""
    _, D, a0, a1 = _linear_functional(model, xi)
    step = 1 / (D * abs(a1))
    offset = -a0 / a1
    L = 4 * _lcm(step.denominator, offset.denominator)
    return L, 3


def _scan_hits(model, spin, xi, L, T):
    coeffs = coadjoint_poly(model, xi)
    m = len(coeffs) - 1
    D = 1
    for c in coeffs:
        for a in c:
            D = _lcm(D, a.denominator)
    S = D * L ** m
    n = model.n
    C = [[int(coeffs[k][nu] * D) * L ** (m - k) for k in range(m + 1)] for nu in range(n)]
    J = int(T * L)
    eps = spin.eps_prime
    bound = max(sum(abs(c) * J ** k for k, c in enumerate(row)) for row in C) + 2 * S
    js = range(-J, J + 1)
    if bound < 2 ** 62:
        j = np.arange(-J, J + 1, dtype=np.int64)
        ok = np.ones(j.shape, dtype=bool)
        for nu in range(n):
            acc = np.zeros_like(j)
            for k in range(m, -1, -1):
                acc = acc * j + C[nu][k]
            ok &= ((acc - eps[nu] * S) % (2 * S)) == 0
        hit_j = [int(x) for x in j[ok]]
    else:
        hit_j = []
        for jj in js:
            good = True
            for nu in range(n):
                acc = 0
                for k in range(m, -1, -1):
                    acc = acc * jj + C[nu][k]
                if (acc - eps[nu] * S) % (2 * S):
                    good = False
                    break
            if good:
                hit_j.append(jj)
    return [Fraction(jj, L) for jj in hit_j]


def bruteforce_hits(model, spin, xi, L=None, T=None):
    """All t in (1/L)Z with |t| <= T and A(t)^T xi in Sigma_{eps'} (exact)."""
    if L is None or T is None:
        L0, T0 = default_scan_bounds(model, xi)
        L = L0 if L is None else L
        T = T0 if T is None else T
    return _scan_hits(model, spin, xi, int(L), Fraction(T))


def zorbit_count_bruteforce(model, spin, xi, L=None, T=None):
    """Number of Z-orbits in (R-orbit of xi) cap Sigma_{eps'}, by exact scanning.

    The hit set must contain 0 and be invariant under t -> t + 1 within the
    scanned range; the returned count is the number of hits in [0, 1).
    """
    xi = tuple(int(x) for x in xi)
    if not sigma_contains(spin, xi):
        raise ValueError(f"{xi} is not in Sigma_eps'")
    if is_fixed(model, xi):
        raise ValueError("zorbit_count_bruteforce needs a non-fixed point")
    if L is None or T is None:
        L0, T0 = default_scan_bounds(model, xi)
        L = L0 if L is None else L
        T = T0 if T is None else T
    T = Fraction(T)
    if T < 2:
        raise ScanInconclusive("scan range must cover at least two periods")
    hits = _scan_hits(model, spin, xi, int(L), T)
    hs = set(hits)
    if Fraction(0) not in hs:
        raise ScanInconclusive(f"t=0 is not a hit for {xi}")
    for h in hits:
        for s in (h - 1, h + 1):
            if -T <= s <= T and s not in hs:
                raise ScanInconclusive(f"hit set of {xi} is not 1-periodic near t={h}")
    base = sorted(h for h in hits if 0 <= h < 1)
    return len(base)


def progression_structure(hits):
    """(t0, step) when the hits in [0,1) form a single progression, else None."""
    base = sorted(h for h in hits if 0 <= h < 1)
    if len(base) < 2:
        return (base[0], Fraction(1)) if base else None
    steps = {b - a for a, b in zip(base, base[1:])}
    steps.add(1 + base[0] - base[-1])
    return (base[0], steps.pop()) if len(steps) == 1 else None


def orbit_hits(model, spin, xi, t_lo, t_hi):
    """Exact orbit points A(t)^T xi in Sigma_{eps'} for t in [t_lo, t_hi].

    Only candidates of the integrality progression are examined. Each
    candidate t = u/M shares the denominator M, so the test runs on integers.
    """
    v, D, a0, a1 = _linear_functional(model, xi)
    coeffs = coadjoint_poly(model, xi)
    m = len(coeffs) - 1
    # t = (k/D - a0)/a1  <=>  k = D (a0 + a1 t)
    ends = sorted([D * (a0 + a1 * Fraction(t_lo)), D * (a0 + a1 * Fraction(t_hi))])
    k_lo = -((-ends[0].numerator) // ends[0].denominator)
    k_hi = ends[1].numerator // ends[1].denominator
    step = 1 / (D * a1)          # t(k+1) - t(k)
    t0 = -a0 / a1
    M = _lcm(step.denominator, t0.denominator)
    du, u0 = int(step * M), int(t0 * M)
    Dc = 1
    for c in coeffs:
        for a in c:
            Dc = _lcm(Dc, a.denominator)
    C = [[int(coeffs[i][nu] * Dc) * M ** (m - i) for i in range(m + 1)] for nu in range(model.n)]
    S = Dc * M ** m
    eps = spin.eps_prime
    out = []
    for k in range(k_lo, k_hi + 1):
        u = u0 + k * du
        pt = []
        for nu in range(model.n):
            acc = 0
            for i in range(m, -1, -1):
                acc = acc * u + C[nu][i]
            q, r = divmod(acc, S)
            if r or (q - eps[nu]) % 2:
                break
            pt.append(q)
        else:
            out.append((Fraction(u, M), tuple(pt)))
    return out


def orbit_contains(model, rho, xi):
    """Exact test: xi = A(t)^T rho for some real t."""
    rho = tuple(Fraction(a) for a in rho)
    xi = tuple(Fraction(a) for a in xi)
    if is_fixed(model, rho):
        return rho == xi
    v, D, a0, a1 = _linear_functional(model, rho)
    val = sum(a * b for a, b in zip(xi, v))
    t = (val / D - a0) / a1
    coeffs = coadjoint_poly(model, rho)
    pt = tuple(sum(c[nu] * t ** i for i, c in enumerate(coeffs)) for nu in range(model.n))
    return pt == xi


# --- closed-form enumerators ----------------------------------------------

def _par_range(lo, hi, e):
    """Integers in [lo, hi] congruent to e mod 2."""
    start = lo + ((lo - e) % 2)
    return range(start, hi + 1, 2)


def representatives_heisenberg(r, spin, window):
    """R1 = {xi_1 = 0} (fixed), R2 = {xi_1 != 0, xi_2 = eps_2} with count |xi_1 r|/2."""
    W1, W2 = _box(window, 2)
    e1, e2 = spin.eps_prime
    out = []
    if e1 == 0:
        out += [OrbitRep((0, x2), FIXED, 1) for x2 in _par_range(-W2, W2, e2)]
    if abs(e2) <= W2:
        for x1 in _par_range(-W1, W1, e1):
            if x1:
                out.append(OrbitRep((x1, e2), GENERIC, abs(x1 * r) // 2))
    return sorted(out, key=lambda o: o.xi)


def block_invariants(r, eta):
    J = [v for v, x in enumerate(eta) if x]
    d = 0
    for v in J:
        d = gcd(d, abs(r[v] * eta[v]))
    j = J[0]
    q = abs(r[j] * eta[j]) // d
    return J, j, d, q


def representatives_2step_block(p, r, spin, window):
    """Representatives for the block model A(t) = [[I, tR], [0, I]].

    Free coordinates: xi_{p+v} for v != j_eta (within the window); xi_{p+j}
    is pinned to [0, 2q-1].
    """
    from itertools import product
    n = 2 * p
    box = _box(window, n)
    eps = spin.eps_prime
    out = []
    bar_ranges = [_par_range(-box[v], box[v], eps[v]) for v in range(p)]
    top_ranges = [_par_range(-box[p + v], box[p + v], eps[p + v]) for v in range(p)]
    for eta in product(*bar_ranges):
        if not any(eta):
            for top in product(*top_ranges):
                out.append(OrbitRep(tuple(eta) + tuple(top), FIXED, 1))
            continue
        J, j, d, q = block_invariants(r, eta)
        ranges = list(top_ranges)
        ranges[j] = _par_range(0, min(2 * q - 1, box[p + j]), eps[p + j])
        data = {"J": [v + 1 for v in J], "j": j + 1, "d": d, "q": q}
        for top in product(*ranges):
            out.append(OrbitRep(tuple(eta) + tuple(top), GENERIC, d // 2, data))
    return sorted(out, key=lambda o: o.xi)


def q_of(r1, r2, k):
    """Reduced denominator of |r2| / |r1 k|."""
    return Fraction(abs(r2), abs(r1 * k)).denominator


def M_set(l, q):
    return [(m1, l - m1) for m1 in range(1, l) if (m1 * (l - m1)) % q == 0]


def m_count(r1, xi1, xi2, q):
    """#{k >= 0 : xi2 + 2k < |r1 xi1|, q | k (k + xi2)}."""
    return sum(1 for k in range(0, abs(r1 * xi1)) if xi2 + 2 * k < abs(r1 * xi1)
               and (k * (k + xi2)) % q == 0)


def representatives_3step(r1, r2, spin, window):
    """Fixed points, R2 = {xi_1 = 0, xi_2 != 0, xi_3 = eps_3}, and R3 (minimal xi_2)."""
    W1, W2, W3 = _box(window, 3)
    e1, e2, e3 = spin.eps_prime
    out = []
    if e1 == 0:
        if e2 == 0:
            out += [OrbitRep((0, 0, x3), FIXED, 1) for x3 in _par_range(-W3, W3, e3)]
        if abs(e3) <= W3:
            for x2 in _par_range(-W2, W2, e2):
                if x2:
                    out.append(OrbitRep((0, x2, e3), GENERIC, abs(r2 * x2) // 2))
    for x1 in _par_range(-W1, W1, e1):
        if not x1:
            continue
        q = q_of(r1, r2, x1)
        for x2 in _par_range(0, min(abs(r1 * x1) - 1, W2), e2):
            if M_set(x2, q):
                continue
            m = m_count(r1, x1, x2, q)
            data = {"q": q, "m": m}
            for x3 in _par_range(-W3, W3, e3):
                out.append(OrbitRep((x1, x2, x3), GENERIC, m, data))
    return sorted(out, key=lambda o: o.xi)


def representatives_bruteforce(model, spin, window):
    """Generic fallback: lexicographically first window point of each orbit.

    The representative choice depends on the window, so tables produced this
    way are only monotone in W, not comparable to the family enumerators.
    """
    box = _box(window, model.n)
    pts = sigma_points(spin, box)
    seen = set()
    out = []
    for xi in pts:
        if xi in seen:
            continue
        if is_fixed(model, xi):
            out.append(OrbitRep(xi, FIXED, 1))
            seen.add(xi)
            continue
        v, D, a0, a1 = _linear_functional(model, xi)
        vmax = sum(abs(a) * w for a, w in zip(v, box))
        ends = sorted([(Fraction(-vmax, D) - a0) / a1, (Fraction(vmax, D) - a0) / a1])
        for _, pt in orbit_hits(model, spin, xi, ends[0], ends[1]):
            if all(abs(a) <= w for a, w in zip(pt, box)):
                seen.add(pt)
        out.append(OrbitRep(xi, GENERIC, zorbit_count_bruteforce(model, spin, xi)))
    return sorted(out, key=lambda o: o.xi)


def representatives(model, spin, window):
    """Dispatch on the model's preset family."""
    preset = model.preset or {}
    fam = preset.get("family")
    if fam == "heisenberg":
        return representatives_heisenberg(preset["r"], spin, window)
    if fam == "block2step":
        return representatives_2step_block(preset["p"], preset["r"], spin, window)
    if fam == "threestep":
        return representatives_3step(preset["r1"], preset["r2"], spin, window)
    if model.step <= 2:
        return representatives_bruteforce(model, spin, window)
    raise UnsupportedModel("no representative enumerator for this model")
