"""Koszul connection of a complement V and the symmetry criterion for D."""
from dataclasses import dataclass
from fractions import Fraction

from .errors import NoComplement
from .group_model import _as_spec, bracket, frame_vectors, solve


@dataclass(frozen=True)
class ChristoffelTable:
    gamma: tuple  # gamma[i][j][k] = g(nabla_{s_i} s_j, s_k), 0-based
    alpha: Fraction

    @property
    def d(self):
        return len(self.gamma)

    def __call__(self, i, j, k):
        """1-based access, Gamma_{ij}^k."""
        return self.gamma[i - 1][j - 1][k - 1]

    def to_json(self):
        return {"gamma": [[[str(x) for x in row] for row in plane] for plane in self.gamma],
                "alpha": str(self.alpha)}


def cyclic_alpha(gamma):
    d = len(gamma)
    if d != 3:
        return Fraction(0)
    return -(gamma[0][1][2] + gamma[1][2][0] + gamma[2][0][1]) / 2


def _basis(model):
    spec = _as_spec(model)
    H = frame_vectors(spec)
    if spec.complement is None:
        if spec.d != spec.n + 1:
            raise NoComplement("a complement V is needed when H != g")
        return H, []
    return H, [tuple(Fraction(a) for a in v) for v in spec.complement]


def h_coordinates(model, X):
    """Coordinates of pr_H X in the frame s_1..s_d (projection along V)."""
    H, V = _basis(model)
    basis = H + V
    n1 = len(basis)
    M = [[basis[c][r] for c in range(n1)] for r in range(n1)]
    coords = solve(M, X)
    return coords[:len(H)]


def christoffel(model):
    """Gamma_ij^k = 1/2 (<pr[s_i,s_j],s_k> - <pr[s_i,s_k],s_j> - <pr[s_j,s_k],s_i>)."""
    spec = _as_spec(model)
    if spec.gamma is not None:
        g = spec.gamma
        return ChristoffelTable(g, cyclic_alpha(g))
    H, _ = _basis(spec)
    d = len(H)
    pr = [[h_coordinates(spec, bracket(spec, H[i], H[j])) for j in range(d)] for i in range(d)]
    g = tuple(tuple(tuple((pr[i][j][k] - pr[i][k][j] - pr[j][k][i]) / 2 for k in range(d))
                    for j in range(d)) for i in range(d))
    return ChristoffelTable(g, cyclic_alpha(g))


def divergence_terms(table):
    """sum_i Gamma_ij^i for each j."""
    d = table.d
    return tuple(sum(table.gamma[i][j][i] for i in range(d)) for j in range(d))


def bracket_criterion(model):
    """Codimension one: [s_j, u] in H for every frame vector, u spanning V."""
    spec = _as_spec(model)
    H, V = _basis(spec)
    if len(V) != 1:
        return None
    basis = H + V
    n1 = len(basis)
    M = [[basis[c][r] for c in range(n1)] for r in range(n1)]
    for s in H:
        coords = solve(M, bracket(spec, s, V[0]))
        if coords[-1] != 0:
            return False
    return True


def is_symmetric_connection(model, table=None):
    """D is symmetric iff sum_i Gamma_ij^i = 0 for all j.

    For codimension one the bracket criterion is evaluated too; a disagreement
    would contradict the theory and is raised rather than ignored.
    """
    table = christoffel(model) if table is None else table
    ok = all(x == 0 for x in divergence_terms(table))
    spec = _as_spec(model)
    if spec.gamma is None and spec.complement is not None:
        other = bracket_criterion(spec)
        if other is not None and other != ok:
            raise AssertionError("divergence and bracket criteria disagree")
    return ok
