"""Closed-form eigenvalues: the affine symbol, generic 2-step reps, fixed points."""
import math
from dataclasses import dataclass

from .errors import FixedPointInput, NotFixedPoint, NotTwoStep, UnsupportedDimension
from .group_model import _as_spec, coadjoint_poly, is_fixed

LAMBDA0 = "lambda0"
LAMBDA_PLUS = "lambda+"
LAMBDA_MINUS = "lambda-"
MU_PLUS = "mu+"
MU_MINUS = "mu-"


@dataclass(frozen=True)
class AffineDiracSymbol:
    """alpha + beta [[i d/dt, conj w], [w, -i d/dt]] with w(t) = a omega1 t + omega0."""
    alpha: float
    beta: float
    a: float
    omega0: complex
    omega1: complex

    def __post_init__(self):
        if not self.a > 0:
            raise ValueError("a must be positive")
        if self.beta == 0:
            raise ValueError("beta must be nonzero")
        if abs(abs(self.omega1) - 1) > 1e-12:
            raise ValueError("|omega1| must be 1")

    @property
    def im(self):
        return (self.omega0 * self.omega1.conjugate()).imag


@dataclass(frozen=True)
class BranchEigenvalue:
    value: float
    branch: str
    k: int
    xi: tuple = None


def affine_spectrum(sym, k_max, xi=None):
    """lambda_0 = alpha + beta Im(w0 conj w1), lambda_k^+- = alpha +- beta (2ak + Im^2)^(1/2)."""
    im = sym.im
    out = [BranchEigenvalue(sym.alpha + sym.beta * im, LAMBDA0, 0, xi)]
    for k in range(1, k_max + 1):
        # |beta|: the + branch is the upper one whatever the sign of beta
        r = abs(sym.beta) * math.sqrt(2 * sym.a * k + im * im)
        out.append(BranchEigenvalue(sym.alpha + r, LAMBDA_PLUS, k, xi))
        out.append(BranchEigenvalue(sym.alpha - r, LAMBDA_MINUS, k, xi))
    return out


def _pair(u, v):
    return sum(a * b for a, b in zip(u, v))


def frame_pairings(model, xi):
    """g[j][k] = <(B^T)^k xi / k!, s_j> for the frame vectors s_1..s_{d-1}."""
    spec = _as_spec(model)
    coeffs = coadjoint_poly(spec, xi)
    return [[_pair(c, s) for c in coeffs] for s in spec.frame]


def symbol_for_generic_rep(model, table, xi):
    """AffineDiracSymbol of the reduced operator at a non-fixed point xi.

    Only the pairings of A(t)^T xi with the frame matter, so the 2-step
    requirement is checked in that form: they must be affine in t.
    """
    spec = _as_spec(model)
    if spec.d not in (2, 3):
        raise UnsupportedDimension(f"d={spec.d}; closed forms exist for d=2,3")
    if is_fixed(spec, xi):
        raise FixedPointInput(f"{tuple(xi)} is a fixed point")
    g = frame_pairings(spec, xi)
    if any(x != 0 for row in g for x in row[2:]):
        raise NotTwoStep("frame pairings of A(t)^T xi are not affine in t")
    g = [[float(row[0]), float(row[1]) if len(row) > 1 else 0.0] for row in g]
    bn = float(spec.b_norm)
    alpha = float(table.alpha) if table is not None else 0.0
    if spec.d == 2:
        g10, g11 = g[0]
        if g11 == 0:
            raise FixedPointInput("<B^T xi, s_1> = 0: the symbol is constant")
        return AffineDiracSymbol(alpha, 1 / bn, math.pi * bn * abs(g11),
                                 complex(0, math.pi * bn * g10), complex(0, math.copysign(1, g11)))
    (g10, g11), (g20, g21) = g
    w1 = complex(-g11, g21) * math.pi * bn
    a = abs(w1)
    if a == 0:
        raise FixedPointInput("<B^T xi, s_1> = <B^T xi, s_2> = 0: the symbol is constant")
    return AffineDiracSymbol(alpha, 1 / bn, a, complex(-g10, g20) * math.pi * bn, w1 / a)


def fixed_point_spectrum(model, table, spin, xi, k_range):
    """mu_k^+- = alpha +- pi (|b|^-2 (2k + eps_dot)^2 + sum_j <xi, s_j>^2)^(1/2)."""
    spec = _as_spec(model)
    if not is_fixed(spec, xi):
        raise NotFixedPoint(f"{tuple(xi)} is not a fixed point")
    if spec.d not in (2, 3):
        raise UnsupportedDimension(f"d={spec.d}; closed forms exist for d=2,3")
    alpha = float(table.alpha) if table is not None else 0.0
    bn = float(spec.b_norm)
    s2 = sum(float(_pair(xi, s)) ** 2 for s in spec.frame)
    out = []
    for k in k_range:
        m = 2 * k + spin.eps_dot
        r = math.pi * math.sqrt(m * m / bn ** 2 + s2)
        out.append(BranchEigenvalue(alpha + r, MU_PLUS, k, tuple(xi)))
        out.append(BranchEigenvalue(alpha - r, MU_MINUS, k, tuple(xi)))
    return out
