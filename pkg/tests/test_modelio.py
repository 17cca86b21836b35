import json

import pytest

from subdirac.connection import christoffel
from subdirac.errors import BadFrame, NotNilpotent
from subdirac.modelio import (PRESETS, formula_family, load_model, load_preset_json,
                              model_from_json, model_to_json)


@pytest.mark.parametrize("name", PRESETS)
def test_presets_load(name):
    m = load_model(name)
    assert load_preset_json(name)["name"] == name
    assert formula_family(m, christoffel(m))[0] is not None


def test_overrides_patch_preset_params():
    m = load_model("heisenberg", {"r": 3, "d": "1/2", "T": None})
    assert m.preset["r"] == 3 and str(m.preset["d"]) == "1/2" and m.preset["T"] == 1
    m = load_model("threestep", {"r1": 4, "r2": 1})
    assert (m.preset["r1"], m.preset["r2"]) == (4, 1)


@pytest.mark.parametrize("name", PRESETS)
def test_explicit_roundtrip(name, tmp_path):
    m = load_model(name)
    obj = model_to_json(m)
    path = tmp_path / "m.json"
    path.write_text(json.dumps(obj))
    back = load_model(str(path))
    assert model_to_json(back) == obj
    assert christoffel(back).gamma == christoffel(m).gamma


def test_explicit_form_exact():
    obj = {"n": 2, "B": [[0, "2"], [0, 0]], "d": 3, "frame": [["1/3", 0], [0, -1]],
           "b_norm": "2", "complement": []}
    m = model_from_json(obj)
    assert christoffel(m).alpha.denominator > 1


def test_file_errors(tmp_path):
    with pytest.raises(BadFrame):
        load_model("no_such_model")
    with pytest.raises(BadFrame):
        model_from_json({"n": 2, "B": [[0, 1], [0, 0]]})
    with pytest.raises(BadFrame):
        model_from_json({"n": 2, "B": [[0, 1.5], [0, 0]], "d": 3, "frame": [[1, 0], [0, 1]]})
    with pytest.raises(NotNilpotent):
        model_from_json({"n": 2, "B": [[0, 1], [1, 0]], "d": 3, "frame": [[1, 0], [0, 1]],
                         "complement": []})
