"""Closed multiplicity sums for the preset families, evaluated directly.

Nothing here goes through the orbit enumerator, the symbol builder or the
connection code: each family's eigenvalues and weights are written out as
explicit sums over lattice points, so the result is an independent check on
`assembler.assemble`.
"""
import math
from fractions import Fraction

from .assembler import MERGE_REL, merge
from .quartic import ZERO_FLOOR, quartic_spectrum

FAMILIES = ("heisenberg_riemannian", "heisenberg_subriemannian", "fivedim", "threestep")


def _lattice(lo, hi, e):
    """Integers in [lo, hi] with parity e."""
    return [x for x in range(lo, hi + 1) if (x - e) % 2 == 0]


def _sgn(x):
    return (x > 0) - (x < 0)


def _box(window, n):
    if isinstance(window, int):
        return (window,) * n
    return tuple(window)


def _fixed_k(k_max):
    return range(-k_max, k_max + 1)


def _heisenberg(params, spin, window, k_max, sub):
    r, d, T = params.get("r", 1), float(params.get("d", 1)), float(params.get("T", 1))
    W1, W2 = _box(window, 2)
    e1, e2 = spin.eps_prime
    alpha = 0.0 if sub else -d * d * T / 4
    out = []
    if e1 == 0:
        for x2 in _lattice(-W2, W2, e2):
            for k in _fixed_k(k_max):
                m = 2 * k + spin.eps_dot
                v = math.pi * d / r * math.sqrt(m * m + r * r * x2 * x2)
                out.append((alpha + v, 1, False, ((0, x2), "m1+", k, 1)))
                out.append((alpha - v, 1, False, ((0, x2), "m1-", k, 1)))
    if abs(e2) > W2:
        return out
    for x1 in _lattice(-W1, W1, e1):
        if x1 == 0:
            continue
        w = abs(r * x1) // 2
        xi = (x1, e2)
        if sub:
            out.append((0.0, w, True, (xi, "m2_0", 0, w)))
        else:
            out.append((alpha - math.pi * abs(x1) / T, w, False, (xi, "m2_0", 0, w)))
        for k in range(1, k_max + 1):
            rad = 2 * math.pi * d * d * k * abs(x1) + (0.0 if sub else (math.pi * x1 / T) ** 2)
            out.append((alpha + math.sqrt(rad), w, False, (xi, "m2+", k, w)))
            out.append((alpha - math.sqrt(rad), w, False, (xi, "m2-", k, w)))
    return out


def _fivedim(params, spin, window, k_max):
    r1, r2 = params.get("r1", 2), params.get("r2", 2)
    alpha = float(params.get("alpha", 0))
    W = _box(window, 4)
    e1, e2, e3, e4 = spin.eps_prime
    X1 = _lattice(-W[0], W[0], e1)
    X2 = _lattice(-W[1], W[1], e2)
    X3 = _lattice(-W[2], W[2], e3)
    X4 = _lattice(-W[3], W[3], e4)
    out = []

    def generic(xi, w, lam0, a_eff, im2, tag):
        # lambda_0 is invariant under xi_1, xi_2 -> n xi_1, n xi_2 (n odd): flagged
        out.append((lam0, w, True, (xi, tag + "_0", 0, w)))
        for k in range(1, k_max + 1):
            rad = math.sqrt(2 * math.pi * k * a_eff + im2)
            out.append((alpha + rad, w, False, (xi, tag + "+", k, w)))
            out.append((alpha - rad, w, False, (xi, tag + "-", k, w)))

    # m1: fixed points
    if e1 == 0 and e2 == 0:
        for x3 in X3:
            for x4 in X4:
                for k in _fixed_k(k_max):
                    x5 = 2 * k + spin.eps_dot
                    v = math.pi * math.sqrt(x3 * x3 + x4 * x4 + x5 * x5)
                    out.append((alpha + v, 1, False, ((0, 0, x3, x4), "m1+", k, 1)))
                    out.append((alpha - v, 1, False, ((0, 0, x3, x4), "m1-", k, 1)))
    # m2: xi_2 = 0, xi_3 = eps_3
    if e2 == 0 and e3 <= W[2]:
        for x1 in X1:
            if x1 == 0:
                continue
            w = abs(r1 * x1) // 2
            for x4 in X4:
                generic((x1, 0, e3, x4), w, alpha - math.pi * _sgn(r1 * x1) * x4,
                        abs(r1 * x1), (math.pi * x4) ** 2, "m2")
    # m3: xi_1 = 0, xi_4 = eps_4
    if e1 == 0 and e4 <= W[3]:
        for x2 in X2:
            if x2 == 0:
                continue
            w = abs(r2 * x2) // 2
            for x3 in X3:
                generic((0, x2, x3, e4), w, alpha + math.pi * _sgn(r2 * x2) * x3,
                        abs(r2 * x2), (math.pi * x3) ** 2, "m3")
    # m4: both nonzero, 0 <= xi_3 <= 2q - 1
    for x1 in X1:
        for x2 in X2:
            if x1 == 0 or x2 == 0:
                continue
            g = math.gcd(abs(r1 * x1), abs(r2 * x2))
            q = abs(r1 * x1) // g
            norm = math.hypot(r1 * x1, r2 * x2)
            for x3 in _lattice(0, min(2 * q - 1, W[2]), e3):
                for x4 in X4:
                    num = r1 * x1 * x4 - r2 * x2 * x3
                    generic((x1, x2, x3, x4), g // 2, alpha - math.pi * num / norm,
                            norm, (math.pi * num / norm) ** 2, "m4")
    return out


def q_threestep(r1, r2, x1):
    return Fraction(abs(r2), abs(r1 * x1)).denominator


def minimal_xi2(x2, q):
    """No split x2 = m1 + m2 with m1, m2 >= 1 and q | m1 m2."""
    return all((m1 * (x2 - m1)) % q for m1 in range(1, x2))


def weight_threestep(r1, x1, x2, q):
    """#{k >= 0 : x2 + 2k < |r1 x1|, q | k (k + x2)}."""
    top = abs(r1 * x1)
    return sum(1 for k in range(0, (top - x2 + 1) // 2 + 1)
               if x2 + 2 * k < top and (k * (k + x2)) % q == 0)


def threestep_kappa(r1, r2, xi):
    """(pi xi1 r1 r2/2)^(-1/3) pi (xi3 - xi2^2 r2 / (2 xi1 r1)), real cube root."""
    a = math.pi * xi[0] * r1 * r2 / 2
    cr = math.copysign(abs(a) ** (1 / 3), a)
    return math.pi * (xi[2] - xi[1] ** 2 * r2 / (2 * xi[0] * r1)) / cr, abs(a) ** (2 / 3)


def _threestep(params, spin, window, k_max):
    r1, r2 = params.get("r1", 2), params.get("r2", 2)
    W1, W2, W3 = _box(window, 3)
    e1, e2, e3 = spin.eps_prime
    X3 = _lattice(-W3, W3, e3)
    out = []
    if e1 == 0 and e2 == 0:
        for x3 in X3:
            for k in _fixed_k(k_max):
                m = 2 * k + spin.eps_dot
                v = math.pi * math.sqrt(m * m + x3 * x3)
                out.append((v, 1, False, ((0, 0, x3), "R1+", k, 1)))
                out.append((-v, 1, False, ((0, 0, x3), "R1-", k, 1)))
    if e1 == 0 and e3 <= W3:
        for x2 in _lattice(-W2, W2, e2):
            if x2 == 0:
                continue
            w = abs(r2 * x2) // 2
            xi = (0, x2, e3)
            out.append((0.0, w, True, (xi, "R2_0", 0, w)))
            for k in range(1, k_max + 1):
                v = math.sqrt(2 * math.pi * k * abs(r2 * x2))
                out.append((v, w, False, (xi, "R2+", k, w)))
                out.append((-v, w, False, (xi, "R2-", k, w)))
    for x1 in _lattice(-W1, W1, e1):
        if x1 == 0:
            continue
        q = q_threestep(r1, r2, x1)
        for x2 in _lattice(0, min(abs(r1 * x1) - 1, W2), e2):
            if not minimal_xi2(x2, q):
                continue
            w = weight_threestep(r1, x1, x2, q)
            for x3 in X3:
                xi = (x1, x2, x3)
                kappa, scale = threestep_kappa(r1, r2, xi)
                spec = quartic_spectrum(kappa, "+", k_max)
                for k, (lam, err) in enumerate(zip(spec.eigenvalues, spec.errors)):
                    v = math.sqrt(scale * lam) if lam > max(err, ZERO_FLOOR) else 0.0
                    out.append((v, w, False, (xi, "R3+", k, w)))
                    out.append((-v, w, False, (xi, "R3-", k, w)))
    return out


def explicit_m_formulas(family, params, spin, window, k_max, merge_tol=MERGE_REL):
    """Truncated multiplicity table from the family's explicit sums."""
    if family == "heisenberg_riemannian":
        contribs = _heisenberg(params, spin, window, k_max, sub=False)
    elif family == "heisenberg_subriemannian":
        contribs = _heisenberg(params, spin, window, k_max, sub=True)
    elif family == "fivedim":
        contribs = _fivedim(params, spin, window, k_max)
    elif family == "threestep":
        contribs = _threestep(params, spin, window, k_max)
    else:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")
    return merge(contribs, {"W": window if isinstance(window, int) else list(window),
                            "k_max": k_max}, merge_tol)
