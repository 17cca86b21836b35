"""Closed-form branch values against the finite-difference oracle, per representative."""
import numpy as np

from . import oracle
from .closed_form import affine_spectrum, symbol_for_generic_rep
from .connection import christoffel
from .errors import BadFrame
from .group_model import fivedim, heisenberg, threestep
from .quartic import _domain, dirac3step_spectrum, kappa_for, threestep_abc

CASES = ("heisenberg", "heisenberg_sub", "fivedim", "threestep")
DEFAULT_XI = {"heisenberg": (2, 0), "heisenberg_sub": (2, 0), "fivedim": (2, 2, 1, 0),
              "threestep": (2, 0, 0)}


def case_model(case, params):
    p = dict(params or {})
    if case in ("heisenberg", "heisenberg_sub"):
        return heisenberg(p.get("r", 1), p.get("d", 1), p.get("T", 1), case == "heisenberg_sub")
    if case == "fivedim":
        return fivedim(p.get("r1", 2), p.get("r2", 2))
    if case == "threestep":
        return threestep(p.get("r1", 2), p.get("r2", 2))
    raise BadFrame(f"unknown case {case!r}; expected one of {CASES}")


def _nearest(targets, pool):
    pool = np.asarray(pool)
    return [float(pool[np.argmin(np.abs(pool - t))]) for t in targets]


def closed_and_window(model, table, xi, k_max):
    """Closed-form values plus the (center, L) an FD grid needs to hold their modes."""
    if (model.preset or {}).get("family") == "threestep" and xi[0] != 0:
        pr = model.preset
        vals = [b.value for b in dirac3step_spectrum(model, table, xi, k_max + 3)]
        a, b, c = threestep_abc(pr["r1"], pr["r2"], xi)
        kap = kappa_for(a, b, c)
        top = max(v * v for v in vals) / abs(a) ** (2 / 3)
        vals = sorted(vals, key=abs)[:2 * k_max]
        L = _domain(kap, top) / abs(a) ** (1 / 3)
        return vals, -b / (2 * a), L
    sym = symbol_for_generic_rep(model, table, xi)
    vals = [b.value for b in affine_spectrum(sym, k_max)]
    center, L = oracle.affine_window(sym, k_max + 3)
    return vals, center, L


def verify_rep(model, xi, levels=(2000,), k_max=3, table=None):
    """Residual report of closed-form branch values against Richardson FD values."""
    table = christoffel(model) if table is None else table
    xi = tuple(int(x) for x in xi)
    closed, center, L = closed_and_window(model, table, xi, k_max)
    cl, ac, om, alpha = oracle.model_dirac_data(model, table, xi)
    closed = sorted(closed)
    n_side = k_max + 2
    runs = []
    for N in levels:
        vals, err = oracle.dirac_oracle(cl, ac, om, L, int(N), n_side, n_side, alpha, center)
        runs.append({"N": int(N), "values": vals, "err": err})
    final = runs[-1]["values"]
    rows = []
    for c, o in zip(closed, _nearest(closed, final)):
        rows.append({"closed_form": c, "oracle": o, "abs_err": abs(c - o),
                     "rel_err": abs(c - o) / max(1.0, abs(c))})
    return {"xi": list(xi), "alpha": float(table.alpha), "rows": rows,
            "max_rel_err": max(r["rel_err"] for r in rows),
            "discretization": {"kind": "staggered", "center": center, "L": L,
                               "levels": [{"N": r["N"], "richardson": [r["N"], 2 * r["N"]]}
                                          for r in runs]}}


def verify_case(case, params=None, xi=None, levels=(2000,), k_max=3):
    model = case_model(case, params)
    xi = DEFAULT_XI[case] if xi is None else xi
    report = verify_rep(model, xi, levels, k_max)
    report["case"] = case
    report["params"] = {k: (v if isinstance(v, (int, float)) else str(v))
                        for k, v in (params or {}).items()}
    return report

