"""Spin structures eps: Gamma -> Z_2 and the parity lattice Sigma_{eps'}.

eps is stored additively, eps(k, l) = eps'(k) + eps_dot(l) mod 2.
"""
from dataclasses import dataclass
from itertools import product

from .errors import DimensionTooLarge, InvalidSpinStructure
from .group_model import exp_tB

MAX_ENUM_DIM = 24


@dataclass(frozen=True)
class SpinStructure:
    eps_prime: tuple
    eps_dot: int = 0

    def __post_init__(self):
        object.__setattr__(self, "eps_prime", tuple(int(b) for b in self.eps_prime))
        object.__setattr__(self, "eps_dot", int(self.eps_dot))
        if any(b not in (0, 1) for b in self.eps_prime) or self.eps_dot not in (0, 1):
            raise InvalidSpinStructure("spin bits must be 0 or 1")

    @classmethod
    def parse(cls, text, n=None):
        """Read the CLI form "b1b2...bn:d"."""
        try:
            prime, dot = text.strip().split(":")
            bits = tuple(int(c) for c in prime)
            out = cls(bits, int(dot))
        except (ValueError, InvalidSpinStructure):
            raise InvalidSpinStructure(f"cannot parse spin structure {text!r}") from None
        if n is not None and len(bits) != n:
            raise InvalidSpinStructure(f"expected {n} bits before ':' in {text!r}")
        return out

    @classmethod
    def zero(cls, n):
        return cls((0,) * n, 0)

    def __str__(self):
        return "".join(map(str, self.eps_prime)) + ":" + str(self.eps_dot)

    def to_json(self):
        return {"prime": list(self.eps_prime), "dot": self.eps_dot}

    @classmethod
    def from_json(cls, obj):
        return cls(tuple(obj["prime"]), obj.get("dot", 0))


def is_valid_eps(model, eps_prime):
    """sum_mu eps'_mu (A(1) - I)_{mu nu} = 0 mod 2 for every column nu."""
    A1 = exp_tB(model, 1)
    n = len(A1)
    eps = tuple(eps_prime.eps_prime if isinstance(eps_prime, SpinStructure) else eps_prime)
    if len(eps) != n:
        return False
    for nu in range(n):
        s = sum(eps[mu] * (A1[mu][nu] - (mu == nu)) for mu in range(n))
        if s.denominator != 1 or s.numerator % 2:
            return False
    return True


def require_valid(model, spin):
    if not is_valid_eps(model, spin):
        raise InvalidSpinStructure(f"eps'={spin.eps_prime} violates the mod 2 condition")
    return spin


def enumerate_spin_structures(model):
    n = model.n
    if n > MAX_ENUM_DIM:
        raise DimensionTooLarge(f"n={n} exceeds the enumeration bound {MAX_ENUM_DIM}")
    out = []
    for bits in product((0, 1), repeat=n):
        if is_valid_eps(model, bits):
            out.extend(SpinStructure(bits, dot) for dot in (0, 1))
    return out


def sigma_contains(spin, xi):
    """xi in Sigma_{eps'} iff xi_nu = eps'_nu mod 2 for all nu."""
    eps = spin.eps_prime if isinstance(spin, SpinStructure) else spin
    if len(eps) != len(xi):
        return False
    for x, e in zip(xi, eps):
        if getattr(x, "denominator", 1) != 1:
            return False
        if (int(x) - e) % 2:
            return False
    return True


def sigma_points(spin, window):
    """All points of Sigma_{eps'} in the box |xi_i| <= W_i (window int or per-coordinate)."""
    eps = spin.eps_prime
    box = _box(window, len(eps))
    ranges = [range(-w + ((w - e) % 2), w + 1, 2) for w, e in zip(box, eps)]
    return [tuple(p) for p in product(*ranges)]


def _box(window, n):
    if isinstance(window, int):
        return (window,) * n
    box = tuple(int(w) for w in window)
    if len(box) != n:
        raise ValueError("window box has the wrong length")
    return box
