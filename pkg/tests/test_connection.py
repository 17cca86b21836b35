from fractions import Fraction
from itertools import product

import pytest

from subdirac.connection import (bracket_criterion, christoffel, divergence_terms, h_coordinates,
                                 is_symmetric_connection)
from subdirac.errors import NoComplement
from subdirac.group_model import ModelSpec, bracket, fivedim, frame_vectors, heisenberg, threestep


def sub_heisenberg_with(complement, r=1, d=1):
    base = heisenberg(r, d, 1, subriemannian=True).spec
    return ModelSpec.build(base.n, base.B, base.d, base.frame, base.b_norm, complement=complement)


def test_heisenberg_riemannian_table():
    t = christoffel(heisenberg(1, 1, 1))
    assert t(1, 2, 3) == Fraction(-1, 2)
    assert t(2, 3, 1) == Fraction(1, 2) and t(3, 1, 2) == Fraction(1, 2)
    nonzero = {(i, j, k) for i, j, k in product((1, 2, 3), repeat=3) if t(i, j, k)}
    assert nonzero == {(1, 2, 3), (1, 3, 2), (2, 3, 1), (2, 1, 3), (3, 1, 2), (3, 2, 1)}
    assert t.alpha == Fraction(-1, 4)


@pytest.mark.parametrize("r,d,T", [(1, 1, 1), (2, 3, 1), (3, Fraction(1, 2), 5)])
def test_heisenberg_alpha(r, d, T):
    t = christoffel(heisenberg(r, d, T))
    assert t(2, 3, 1) == Fraction(d) ** 2 * T / 2
    assert t.alpha == -Fraction(d) ** 2 * T / 4


@pytest.mark.parametrize("model", [fivedim(2, 2), fivedim(3, -1), threestep(2, 2)])
def test_vanishing_tables(model):
    t = christoffel(model)
    assert all(x == 0 for plane in t.gamma for row in plane for x in row)
    assert t.alpha == 0
    assert is_symmetric_connection(model, t)


@pytest.mark.parametrize("model", [heisenberg(1), heisenberg(2, 3, 1), heisenberg(1, subriemannian=True),
                                   fivedim(2, 2), threestep(2, 2)])
def test_metric_and_torsion(model):
    t = christoffel(model)
    H = frame_vectors(model.spec)
    d = t.d
    for i, j, k in product(range(d), repeat=3):
        assert t.gamma[i][j][k] == -t.gamma[i][k][j]
    for i, j in product(range(d), repeat=2):
        pr = h_coordinates(model, bracket(model.spec, H[i], H[j]))
        for k in range(d):
            assert t.gamma[i][j][k] - t.gamma[j][i][k] == pr[k]


def test_symmetry_criterion_depends_on_the_complement():
    good = sub_heisenberg_with([(1, 0, 0)])
    bad = sub_heisenberg_with([(1, 1, 0)])
    assert is_symmetric_connection(good) is True
    assert is_symmetric_connection(bad) is False
    assert bracket_criterion(good) is True and bracket_criterion(bad) is False
    assert any(x != 0 for x in divergence_terms(christoffel(bad)))


def test_d2_has_no_scalar_term():
    assert christoffel(sub_heisenberg_with([(1, 1, 0)])).alpha == 0


def test_complement_required():
    base = heisenberg(1, subriemannian=True).spec
    spec = ModelSpec.build(base.n, base.B, base.d, base.frame, base.b_norm)
    with pytest.raises(NoComplement):
        christoffel(spec)


def test_supplied_table_is_used():
    g = [[[0] * 3 for _ in range(3)] for _ in range(3)]
    g[0][1][2], g[0][2][1] = Fraction(1), Fraction(-1)
    t = christoffel(fivedim(2, 2, gamma=g))
    assert t.alpha == Fraction(-1, 2)


def test_json_is_exact():
    assert christoffel(heisenberg(1, 1, 1)).to_json()["alpha"] == "-1/4"
