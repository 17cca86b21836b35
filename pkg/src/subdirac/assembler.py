"""Weighted union of per-representative spectra: the truncated multiplicity function m(D)."""
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .closed_form import (LAMBDA0, affine_spectrum, fixed_point_spectrum,
                          symbol_for_generic_rep)
from .connection import christoffel
from .errors import NotTwoStep, UnsupportedModel
from .group_model import _as_spec, rank, transpose
from .orbits import FIXED, representatives
from .quartic import dirac3step_spectrum
from .spin import require_valid

MERGE_REL = 1e-9


def default_merge_tol(value):
    return MERGE_REL * max(1.0, abs(value))


@dataclass
class Entry:
    value: float
    multiplicity: int
    unbounded: bool = False
    sources: list = field(default_factory=list)  # (xi, branch, k, weight)


@dataclass
class SpectrumTable:
    entries: list
    window: dict
    merge_tol: float = MERGE_REL

    def values(self):
        return [e.value for e in self.entries]

    def find(self, value, tol=None):
        tol = default_merge_tol(value) if tol is None else tol
        for e in self.entries:
            if abs(e.value - value) <= tol:
                return e
        return None

    def multiplicity(self, value):
        e = self.find(value)
        return 0 if e is None else e.multiplicity

    def to_rows(self):
        return [(e.value, e.multiplicity, e.unbounded, len(e.sources)) for e in self.entries]

    def to_json(self):
        return {"window": self.window, "merge_rel_tol": self.merge_tol,
                "entries": [{"value": e.value, "multiplicity": e.multiplicity,
                             "unbounded": e.unbounded,
                             "sources": [{"xi": list(s[0]) if s[0] is not None else None,
                                          "branch": s[1], "k": s[2], "weight": s[3]}
                                         for s in e.sources]}
                            for e in self.entries]}


def merge(contribs, window, rel_tol=MERGE_REL):
    """contribs: (value, weight, unbounded, source). Chains values within the tolerance."""
    contribs = sorted(contribs, key=lambda c: (c[0], str(c[3])))
    entries = []
    cluster = []

    def flush():
        if not cluster:
            return
        v = float(np.mean([c[0] for c in cluster]))
        entries.append(Entry(v, sum(c[1] for c in cluster), any(c[2] for c in cluster),
                             [c[3] for c in cluster]))

    for c in contribs:
        if cluster and c[0] - cluster[-1][0] > rel_tol * max(1.0, abs(c[0])):
            flush()
            cluster = []
        cluster.append(c)
    flush()
    return SpectrumTable(entries, window, rel_tol)


def _read_coordinates(spec):
    """Coordinates of xi that B^T xi depends on (nonzero rows of B)."""
    return [mu for mu in range(spec.n) if any(spec.B[mu])]


def _ray_invariant_lambda0(spec, table, xi, value):
    """lambda_0 unchanged along xi -> n xi on the read coordinates (n = 3, 5).

    Odd n preserves parity, so every point of the ray is again in Sigma_eps'
    and lies on a different R-orbit: the eigenvalue has infinite multiplicity.
    """
    read = _read_coordinates(spec)
    for n in (3, 5):
        scaled = tuple(x * n if mu in read else x for mu, x in enumerate(xi))
        try:
            v = affine_spectrum(symbol_for_generic_rep(spec, table, scaled), 1)[0].value
        except NotTwoStep:
            return False
        if abs(v - value) > default_merge_tol(value):
            return False
    return True


def _invisible_kernel(spec):
    """ker B^T contains an integral direction orthogonal to the frame."""
    eqs = [list(r) for r in transpose(spec.B)] + [list(s) for s in spec.frame]
    return rank(eqs) < spec.n


def rep_contributions(spec, table, spin, rep, k_max):
    """All (value, weight, unbounded, source) of one representative."""
    out = []
    w = rep.z_orbit_count
    if rep.kind == FIXED:
        flag = _invisible_kernel(spec)
        for b in fixed_point_spectrum(spec, table, spin, rep.xi, range(-k_max, k_max + 1)):
            out.append((b.value, 1, flag, (rep.xi, b.branch, b.k, 1)))
        return out
    try:
        sym = symbol_for_generic_rep(spec, table, rep.xi)
    except NotTwoStep:
        if (spec.preset or {}).get("family") != "threestep":
            raise UnsupportedModel("no spectral route for a 3-step rep outside the preset")
        for b in dirac3step_spectrum(spec, table, rep.xi, k_max):
            out.append((b.value, w, False, (rep.xi, b.branch, b.k, w)))
        return out
    for b in affine_spectrum(sym, k_max, rep.xi):
        flag = b.branch == LAMBDA0 and _ray_invariant_lambda0(spec, table, rep.xi, b.value)
        out.append((b.value, w, flag, (rep.xi, b.branch, b.k, w)))
    return out


def _threads():
    try:
        return max(1, int(os.environ.get("SUBDIRAC_THREADS", "1")))
    except ValueError:
        return 1


def assemble(model, table, spin, window, k_max, merge_tol=MERGE_REL):
    """Spectrum of D over the representatives in the window, weighted by Z-orbit counts."""
    spec = _as_spec(model)
    if getattr(model, "step", None) is None:
        raise UnsupportedModel("assemble needs a validated model")
    if spec.d not in (2, 3):
        raise UnsupportedModel(f"d={spec.d} is not supported")
    require_valid(spec, spin)
    table = christoffel(spec) if table is None else table
    reps = representatives(model, spin, window)
    threads = _threads()
    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            parts = list(ex.map(lambda r: rep_contributions(spec, table, spin, r, k_max), reps))
    else:
        parts = [rep_contributions(spec, table, spin, r, k_max) for r in reps]
    contribs = [c for p in parts for c in p]
    return merge(contribs, {"W": window if isinstance(window, int) else list(window),
                            "k_max": k_max}, merge_tol)


# --- growth and accumulation --------------------------------------------------

def _at_least_linear(windows, counts):
    """Strictly increasing and counts[i]/W[i] non-decreasing (up to rounding)."""
    if len(windows) < 3:
        return False
    if any(b <= a for a, b in zip(counts, counts[1:])):
        return False
    ratios = [c / w for c, w in zip(counts, windows)]
    return all(r2 >= r1 * (1 - 1e-12) for r1, r2 in zip(ratios, ratios[1:]))


def fivedim_sequence(r1, r2, eps, n):
    """xi_n = (2+e1, 2n+e2, e3, sgn(r1 r2)(2+e4))."""
    s = 1 if r1 * r2 > 0 else -1
    return (2 + eps[0], 2 * n + eps[1], eps[2], s * (2 + eps[3]))


def accumulation_report(model, table, spin, n_max=20):
    spec = _as_spec(model)
    preset = spec.preset or {}
    r1, r2 = preset["r"]
    table = christoffel(spec) if table is None else table
    eps = spin.eps_prime
    alpha_star = float(table.alpha) + math.pi * (1 if r2 > 0 else -1) * eps[2]
    rows = []
    for n in range(1, n_max + 1):
        xi = fivedim_sequence(r1, r2, eps, n)
        lam0 = affine_spectrum(symbol_for_generic_rep(spec, table, xi), 1)[0].value
        rows.append({"n": n, "xi": list(xi), "lambda0": lam0, "distance": abs(lam0 - alpha_star)})
    d = [r["distance"] for r in rows]
    return {"alpha_star": alpha_star, "sequence": rows,
            "strictly_decreasing": all(b < a for a, b in zip(d, d[1:])),
            "never_equal": all(x > 0 for x in d)}


def growth_diagnostics(model, table, spin, windows, k_max=1, values=None):
    """Multiplicity against window size for persistent eigenvalues, gap statistics and,
    for the five-dimensional family, the accumulation sequence."""
    spec = _as_spec(model)
    table = christoffel(spec) if table is None else table
    tables = [assemble(model, table, spin, W, k_max) for W in windows]
    if values is None:
        values = [e.value for e in tables[0].entries]
    persistent = []
    for v in values:
        found = [t.find(v) for t in tables]
        if any(f is None for f in found):
            continue
        counts = [f.multiplicity for f in found]
        analytic = all(f.unbounded for f in found)
        persistent.append({"value": v, "counts": counts, "analytic_flag": analytic,
                           "unbounded": analytic and _at_least_linear(windows, counts)})
    gaps = []
    for W, t in zip(windows, tables):
        vals = np.array(t.values())
        g = np.diff(vals) if len(vals) > 1 else np.array([np.inf])
        gaps.append({"W": W, "entries": len(vals), "min_gap": float(g.min())})
    out = {"windows": list(windows), "persistent": persistent, "gaps": gaps}
    if (spec.preset or {}).get("family") == "block2step" and spec.preset["p"] == 2:
        out["accumulation"] = accumulation_report(model, table, spin)
    return out
