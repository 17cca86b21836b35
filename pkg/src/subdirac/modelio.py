"""JSON model files.

Two forms are accepted:

    {"preset": "heisenberg", "params": {"r": 1, "d": "1", "T": "1", "subriemannian": false}}
    {"n": 2, "B": [[0, 1], [0, 0]], "d": 3, "frame": [[1, 0], [0, -1]], "b_norm": "1",
     "complement": [], "gamma": null}

Rationals are ints or "p/q" strings; floats are rejected so that models stay exact.
"""
import json
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .errors import BadFrame
from .group_model import (ModelSpec, frac_str, fivedim, heisenberg, threestep,
                          validate_model)

PRESETS = ("heisenberg", "heisenberg_sub", "fivedim", "threestep")


def _build_preset(name, params):
    p = dict(params or {})
    if name == "heisenberg":
        return heisenberg(p.get("r", 1), p.get("d", 1), p.get("T", 1),
                          bool(p.get("subriemannian", False)))
    if name == "fivedim":
        return fivedim(p.get("r1", 2), p.get("r2", 2), p.get("gamma"))
    if name == "threestep":
        return threestep(p.get("r1", 2), p.get("r2", 2))
    raise BadFrame(f"unknown preset {name!r}")


def model_from_json(obj, overrides=None):
    """ValidatedModel from a parsed model file; overrides patch preset params."""
    if "preset" in obj and "B" not in obj:
        params = dict(obj.get("params") or {})
        params.update({k: v for k, v in (overrides or {}).items() if v is not None})
        return _build_preset(obj["preset"], params)
    try:
        spec = ModelSpec.build(obj["n"], obj["B"], obj["d"], obj["frame"], obj.get("b_norm", 1),
                               obj.get("complement"), obj.get("preset_data"), obj.get("gamma"))
    except KeyError as exc:
        raise BadFrame(f"model file lacks field {exc.args[0]!r}") from None
    except TypeError as exc:
        raise BadFrame(f"model file: {exc}") from None
    return validate_model(spec)


def load_preset_json(name):
    with resources.files("subdirac").joinpath(f"presets/{name}.json").open() as fh:
        return json.load(fh)


def load_model(path_or_name, overrides=None):
    """Read a model file, or a bundled preset by name."""
    p = Path(path_or_name)
    if p.exists():
        obj = json.loads(p.read_text())
    elif path_or_name in PRESETS:
        obj = load_preset_json(path_or_name)
    else:
        raise BadFrame(f"no model file or preset named {path_or_name!r}")
    return model_from_json(obj, overrides)


def _rat(x):
    return frac_str(x)


def model_to_json(model):
    """Explicit form of any model (presets are expanded)."""
    s = model.spec if hasattr(model, "spec") else model
    out = {"n": s.n, "B": [[_rat(a) for a in r] for r in s.B], "d": s.d,
           "frame": [[_rat(a) for a in v] for v in s.frame], "b_norm": _rat(s.b_norm),
           "complement": None if s.complement is None else [[_rat(a) for a in v] for v in s.complement],
           "gamma": None if s.gamma is None else [[[_rat(a) for a in r] for r in p] for p in s.gamma]}
    if s.preset:
        out["preset_data"] = {k: _rat(v) if hasattr(v, "denominator") and not isinstance(v, int) else v
                              for k, v in s.preset.items()}
    return out


def formula_family(model, table=None):
    """Name used by formulas.explicit_m_formulas, with its params, or (None, None)."""
    s = model.spec if hasattr(model, "spec") else model
    pr = s.preset or {}
    fam = pr.get("family")
    if fam == "heisenberg":
        name = "heisenberg_" + pr["distribution"]
        return name, {"r": int(pr["r"]), "d": float(Fraction(pr["d"])), "T": float(Fraction(pr["T"]))}
    if fam == "block2step" and int(pr["p"]) == 2:
        alpha = 0.0 if table is None else float(table.alpha)
        return "fivedim", {"r1": int(pr["r"][0]), "r2": int(pr["r"][1]), "alpha": alpha}
    if fam == "threestep":
        return "threestep", {"r1": pr["r1"], "r2": pr["r2"]}
    return None, None
