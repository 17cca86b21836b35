"""Command line entry point: orbits, spectrum, verify, quartic."""
import csv
import io
import json
import sys

import click

from .assembler import MERGE_REL, assemble, growth_diagnostics
from .connection import christoffel
from .errors import SubDiracError, ValidationError
from .formulas import explicit_m_formulas
from .modelio import formula_family, load_model
from .orbits import FIXED, representatives, zorbit_count_bruteforce
from .quartic import TOL, QuarticProblem, _solve, quartic_spectrum
from .spin import SpinStructure, require_valid
from .verification import CASES, verify_case

DIGITS = 15


def fmt(x):
    return f"{x:.{DIGITS}g}"


def _round(obj):
    """Floats to 15 significant digits, recursively."""
    if isinstance(obj, float):
        return float(fmt(obj))
    if isinstance(obj, dict):
        return {k: _round(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v) for v in obj]
    if hasattr(obj, "tolist"):
        return _round(obj.tolist())
    return obj


def dump_json(obj):
    return json.dumps(_round(obj), indent=2, sort_keys=True, default=str) + "\n"


def dump_csv(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(x) if isinstance(x, float) else
                    ("true" if x is True else "false" if x is False else x) for x in row])
    return buf.getvalue()


def emit(text, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _ints(text):
    return tuple(int(x) for x in text.split(",") if x.strip())


def _params(text):
    out = {}
    for item in (text or "").split(","):
        if not item.strip():
            continue
        k, _, v = item.partition("=")
        out[k.strip()] = v.strip()
    return out


def model_options(f):
    opts = [
        click.option("--model", "model_path", default="heisenberg", show_default=True,
                     help="Model JSON file or bundled preset name."),
        click.option("--r", type=int, default=None, help="Heisenberg r."),
        click.option("--d", "d_", default=None, help="Heisenberg d (rational)."),
        click.option("--T", "T_", default=None, help="Heisenberg T (rational)."),
        click.option("--r1", type=int, default=None),
        click.option("--r2", type=int, default=None),
        click.option("--eps", default=None, help='Spin structure "bits:dot", default all zero.'),
    ]
    for o in reversed(opts):
        f = o(f)
    return f


def _setup(model_path, r, d_, T_, r1, r2, eps):
    model = load_model(model_path, {"r": r, "d": d_, "T": T_, "r1": r1, "r2": r2})
    spin = SpinStructure.parse(eps, model.n) if eps else SpinStructure.zero(model.n)
    require_valid(model, spin)
    return model, spin


@click.group()
def main():
    """Spectra of sub-Dirac operators on nilmanifolds."""


@main.command()
@model_options
@click.option("--window", type=int, default=4, show_default=True)
@click.option("--oracle", is_flag=True, help="Add the brute-force Z-orbit count column.")
@click.option("--format", "fmt_", type=click.Choice(["csv", "json"]), default="csv")
@click.option("--out", default=None, type=click.Path(dir_okay=False))
def orbits(model_path, r, d_, T_, r1, r2, eps, window, oracle, fmt_, out):
    """Orbit representatives in the window with their Z-orbit counts."""
    if window < 0:
        raise ValidationError("window must be >= 0")
    model, spin = _setup(model_path, r, d_, T_, r1, r2, eps)
    reps = representatives(model, spin, window)
    rows = []
    for rep in reps:
        row = {"xi": list(rep.xi), "kind": rep.kind, "count": rep.z_orbit_count}
        if oracle:
            row["oracle"] = 1 if rep.kind == FIXED else zorbit_count_bruteforce(model, spin, rep.xi)
        rows.append(row)
    if fmt_ == "json":
        emit(dump_json({"spin": str(spin), "window": window, "reps": rows}), out)
    else:
        header = ["xi", "kind", "count"] + (["oracle"] if oracle else [])
        emit(dump_csv(header, [[" ".join(map(str, x["xi"])), x["kind"], x["count"]]
                               + ([x["oracle"]] if oracle else []) for x in rows]), out)


@main.command()
@model_options
@click.option("--window", type=int, default=4, show_default=True)
@click.option("--kmax", type=int, default=2, show_default=True)
@click.option("--merge-tol", type=float, default=MERGE_REL, show_default=True,
              help="Relative merge tolerance.")
@click.option("--formulas", is_flag=True, help="Evaluate the explicit family sums instead.")
@click.option("--growth", default=None, help="Comma-separated windows for growth diagnostics.")
@click.option("--plot-data", is_flag=True, help="Emit value,multiplicity pairs only.")
@click.option("--format", "fmt_", type=click.Choice(["csv", "json"]), default="csv")
@click.option("--out", default=None, type=click.Path(dir_okay=False))
def spectrum(model_path, r, d_, T_, r1, r2, eps, window, kmax, merge_tol, formulas, growth,
             plot_data, fmt_, out):
    """Truncated multiplicity table of the sub-Dirac operator."""
    if window < 0 or kmax < 1 or merge_tol <= 0:
        raise ValidationError("need window >= 0, kmax >= 1 and a positive merge tolerance")
    model, spin = _setup(model_path, r, d_, T_, r1, r2, eps)
    table = christoffel(model)
    if growth:
        windows = _ints(growth)
        if len(windows) < 2 or list(windows) != sorted(set(windows)):
            raise ValidationError("--growth needs an increasing list of windows")
        emit(dump_json(growth_diagnostics(model, table, spin, windows, kmax)), out)
        return
    if formulas:
        fam, params = formula_family(model, table)
        if fam is None:
            raise ValidationError("--formulas needs one of the preset families")
        tab = explicit_m_formulas(fam, params, spin, window, kmax, merge_tol)
    else:
        tab = assemble(model, table, spin, window, kmax, merge_tol)
    if plot_data:
        emit(dump_csv(["value", "multiplicity"], [(e.value, e.multiplicity) for e in tab.entries]),
             out)
    elif fmt_ == "json":
        obj = tab.to_json()
        obj["spin"] = str(spin)
        emit(dump_json(obj), out)
    else:
        emit(dump_csv(["value", "multiplicity", "unbounded", "sources_count"], tab.to_rows()), out)


@main.command()
@click.option("--case", type=click.Choice(CASES), required=True)
@click.option("--params", default="", help='e.g. "r=1,d=1,T=1" or "r1=2,r2=2".')
@click.option("--xi", default=None, help="Representative, comma separated.")
@click.option("--levels", default="2000", show_default=True, help="FD sizes N (comma separated).")
@click.option("--kmax", type=int, default=3, show_default=True)
@click.option("--out", default=None, type=click.Path(dir_okay=False))
def verify(case, params, xi, levels, kmax, out):
    """Closed-form eigenvalues against the finite-difference oracle."""
    p = _params(params)
    for k in ("r", "r1", "r2"):
        if k in p:
            p[k] = int(p[k])
    lv = _ints(levels)
    if not lv or min(lv) < 100 or kmax < 1:
        raise ValidationError("levels must be >= 100 and kmax >= 1")
    emit(dump_json(verify_case(case, p, _ints(xi) if xi else None, lv, kmax)), out)


@main.command()
@click.option("--c", "c_", type=float, default=0.0, show_default=True)
@click.option("--sign", type=click.Choice(["+", "-"]), default="+", show_default=True)
@click.option("--count", type=int, default=3, show_default=True)
@click.option("--abc", default=None, help="a,b,c of the general operator P_{a,b,c} (a > 0).")
@click.option("--tol", type=float, default=TOL, show_default=True)
@click.option("--out", default=None, type=click.Path(dir_okay=False))
def quartic(c_, sign, count, abc, tol, out):
    """Eigenvalues of -d^2 + (t^2 + c)^2 +- 2t, or of P_{a,b,c}."""
    if count < 1 or tol <= 0:
        raise ValidationError("count must be >= 1 and tol positive")
    if abc:
        try:
            a, b, c = (float(x) for x in abc.split(","))
        except ValueError:
            raise ValidationError("--abc needs three numbers") from None
        if a <= 0:
            raise ValidationError("--abc needs a > 0")
        spec = _solve(QuarticProblem(a, b, c, sign), count, tol)
        head = {"a": a, "b": b, "c": c}
    else:
        spec = quartic_spectrum(c_, sign, count, tol)
        head = {"c": c_}
    obj = dict(head, sign=sign, **spec.to_json())
    emit(dump_json(obj), out)


def run(argv=None):
    """Run the CLI and return the exit code (0 ok, 2 validation, 3 numerical)."""
    try:
        main.main(args=list(argv) if argv is not None else None, prog_name="subdirac",
                  standalone_mode=False)
        return 0
    except SubDiracError as exc:
        sys.stderr.write(json.dumps(exc.to_json()) + "\n")
        return exc.exit_code
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        sys.stderr.write(json.dumps({"error": type(exc).__name__, "message": exc.format_message(),
                                     "exit_code": 2}) + "\n")
        return 2
    except click.exceptions.Abort:
        return 1


def entry():
    sys.exit(run())
