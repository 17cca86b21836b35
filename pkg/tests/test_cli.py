import csv
import io
import json
import subprocess
import sys

import pytest

from subdirac.cli import run


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def heis_file(tmp_path):
    path = tmp_path / "heis.json"
    path.write_text(json.dumps({"preset": "heisenberg",
                                "params": {"r": 1, "d": "1", "T": "1", "subriemannian": True}}))
    return str(path)


def test_spectrum_csv(capsys, heis_file):
    code, out, _ = call(capsys, "spectrum", "--model", heis_file, "--eps", "00:0", "--window", "4",
                        "--kmax", "2")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["value", "multiplicity", "unbounded", "sources_count"]
    hit = [r for r in rows[1:] if r[0].startswith("3.544907")]
    assert hit and hit[0][1:3] == ["2", "false"]
    zero = [r for r in rows[1:] if float(r[0]) == 0.0]
    assert zero[0][2] == "true"


def test_fifteen_digits(capsys):
    _, out, _ = call(capsys, "spectrum", "--model", "heisenberg", "--window", "2", "--kmax", "1")
    for row in list(csv.reader(io.StringIO(out)))[1:]:
        mant = row[0].lstrip("-").split("e")[0].replace(".", "").lstrip("0")
        assert len(mant) <= 15


def test_spectrum_formulas_and_json(capsys):
    code, a, _ = call(capsys, "spectrum", "--model", "fivedim", "--window", "2", "--kmax", "1",
                      "--format", "json")
    assert code == 0
    obj = json.loads(a)
    assert obj["spin"] == "0000:0" and obj["entries"]
    code, b, _ = call(capsys, "spectrum", "--model", "fivedim", "--window", "2", "--kmax", "1",
                      "--formulas", "--plot-data")
    assert code == 0
    pairs = list(csv.reader(io.StringIO(b)))[1:]
    assert len(pairs) == len(obj["entries"])


def test_growth(capsys):
    code, out, _ = call(capsys, "spectrum", "--model", "heisenberg_sub", "--growth", "2,4,6",
                        "--kmax", "1")
    assert code == 0
    rep = json.loads(out)
    assert rep["windows"] == [2, 4, 6] and rep["persistent"]


def test_orbits_oracle_column(capsys, heis_file):
    code, out, _ = call(capsys, "orbits", "--model", heis_file, "--eps", "00:0", "--window", "2",
                        "--oracle")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows and all(r["count"] == r["oracle"] for r in rows)


def test_quartic_json(capsys):
    code, out, _ = call(capsys, "quartic", "--c", "0", "--sign", "+", "--count", "3")
    assert code == 0
    obj = json.loads(out)
    ev = obj["eigenvalues"]
    assert len(ev) == 3 and ev == sorted(ev)
    assert max(obj["errors"]) <= 1e-6
    code, out, _ = call(capsys, "quartic", "--abc", "2,1,0.5", "--count", "2")
    assert code == 0 and json.loads(out)["a"] == 2


def test_verify(capsys, tmp_path):
    path = tmp_path / "v.json"
    code, _, _ = call(capsys, "verify", "--case", "heisenberg", "--params", "r=1,d=1,T=1",
                      "--levels", "1000", "--kmax", "2", "--out", str(path))
    assert code == 0
    rep = json.loads(path.read_text())
    assert rep["max_rel_err"] < 1e-4 and rep["case"] == "heisenberg"


@pytest.mark.parametrize("argv", [
    ["quartic", "--count", "0"],
    ["spectrum", "--window", "-1"],
    ["spectrum", "--kmax", "0"],
    ["spectrum", "--model", "heisenberg", "--eps", "10:0"],
    ["spectrum", "--model", "nothing_here"],
    ["orbits", "--format", "xml"],
    ["quartic", "--abc", "-1,0,0"],
])
def test_validation_exit_code(capsys, argv):
    code, _, err = call(capsys, *argv)
    assert code == 2
    assert "error" in json.loads(err.strip().splitlines()[-1])


def test_threads_byte_identical(capsys, monkeypatch):
    argv = ["spectrum", "--model", "threestep", "--window", "3", "--kmax", "2", "--format", "json"]
    monkeypatch.setenv("SUBDIRAC_THREADS", "1")
    _, a, _ = call(capsys, *argv)
    monkeypatch.setenv("SUBDIRAC_THREADS", "4")
    _, b, _ = call(capsys, *argv)
    assert a == b and a


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-c", "from subdirac.cli import entry; entry()",
                        "quartic", "--count", "0"], capture_output=True, text=True)
    assert p.returncode == 2
