from fractions import Fraction as F
from itertools import product

import pytest

from subdirac.errors import NotBracketGenerating, NotIntegralSL, NotNilpotent, SingularMatrix
from subdirac.group_model import (ModelSpec, coadjoint, det, exp_tB, fivedim, heisenberg,
                                  identity, matadd, matmul, smith_normal_form, threestep,
                                  validate_model)


def spec(B, frame, n=None, b=1):
    n = len(B) if n is None else n
    return ModelSpec.build(n, B, len(frame) + 1, frame, b)


def test_heisenberg_block_is_valid_step_two():
    m = validate_model(spec([[0, 1], [0, 0]], [[0, 1]]))
    assert m.step == 2
    assert "bracket generating" in m.checks


def test_abelian_model_is_not_bracket_generating():
    # one-dimensional B = 0 with frame e1 would fill g; use n = 2 so H misses e2
    with pytest.raises(NotBracketGenerating):
        validate_model(spec([[0, 0], [0, 0]], [[1, 0]]))


def test_threestep_matrix_is_valid_step_three():
    m = validate_model(spec([[0, 2, 0], [0, 0, 2], [0, 0, 0]], [[0, 0, 1]]))
    assert m.step == 3


def test_non_nilpotent_rejected():
    with pytest.raises(NotNilpotent):
        validate_model(spec([[1, 0], [0, -1]], [[0, 1]]))


def test_non_integral_exp_rejected():
    with pytest.raises(NotIntegralSL):
        threestep(3, 3)


def test_rational_B_allowed_when_exp_is_integral():
    # B = [[0, 1, 1/2]...] style: exp(B) integral although B is not
    B = [[0, 1, F(-1, 2)], [0, 0, 1], [0, 0, 0]]
    m = validate_model(spec(B, [[0, 0, 1]]))
    assert all(a.denominator == 1 for row in exp_tB(m, 1) for a in row)


def test_exp_examples(heis, three):
    assert exp_tB(heis, 1) == matadd(identity(2), heis.B)
    assert exp_tB(heis, 0) == identity(2)
    t = F(3, 7)
    assert exp_tB(three, t) == ((1, 2 * t, 2 * t * t), (0, 1, 2 * t), (0, 0, 1))


@pytest.mark.parametrize("model", [heisenberg(2), fivedim(2, 2), threestep(2, 2), threestep(4, 1)])
def test_one_parameter_group_law(model):
    ts = [F(0), F(1), F(-2), F(1, 2), F(-5, 3)]
    for t1, t2 in product(ts, ts):
        assert exp_tB(model, t1 + t2) == matmul(exp_tB(model, t1), exp_tB(model, t2))
    for l in range(-5, 6):
        A = exp_tB(model, l)
        assert all(a.denominator == 1 for row in A for a in row)
        assert det(A) == 1


def test_coadjoint_examples(five, three):
    assert coadjoint(five, 1, (1, 1, 0, 0)) == (1, 1, 2, 2)
    assert coadjoint(three, 1, (2, 0, 0)) == (2, 4, 4)
    assert coadjoint(five, F(7, 3), (0, 0, 3, -1)) == (0, 0, 3, -1)


def test_coadjoint_composes(three):
    xi = (2, -1, 3)
    for t1, t2 in product([F(1), F(-1, 2), F(5, 4)], repeat=2):
        assert coadjoint(three, t1, coadjoint(three, t2, xi)) == coadjoint(three, t1 + t2, xi)


def _check_snf(M):
    Q1, R, Q2 = smith_normal_form(M)
    assert abs(det(Q1)) == 1 and abs(det(Q2)) == 1
    # R Q2 = Q1 M
    assert matmul(R, Q2) == matmul(Q1, M)
    diag = [R[i][i] for i in range(len(R))]
    assert all(R[i][j] == 0 for i in range(len(R)) for j in range(len(R)) if i != j)
    assert all(r > 0 for r in diag)
    assert all(diag[i] % diag[i + 1] == 0 for i in range(len(diag) - 1))
    return diag


def _determinantal_divisors(M):
    """d_k = gcd of all k x k minors (independent of any reduction)."""
    from itertools import combinations
    from math import gcd
    n = len(M)
    out = []
    for k in range(1, n + 1):
        g = 0
        for rows in combinations(range(n), k):
            for cols in combinations(range(n), k):
                g = gcd(g, int(det([[M[i][j] for j in cols] for i in rows])))
        out.append(g)
    return out


@pytest.mark.parametrize("M", [[[6, 4, 0], [2, 8, 2], [0, 0, 5]], [[2, 4, 4], [-6, 6, 12], [10, 4, 16]],
                               [[3, 0], [0, 2]], [[4, 6], [6, 4]]])
def test_smith_against_determinantal_divisors(M):
    diag = sorted(_check_snf(M))
    dk = _determinantal_divisors(M)
    expect = [dk[0]] + [dk[k] // dk[k - 1] for k in range(1, len(dk))]
    assert diag == sorted(expect)


def test_smith_examples():
    assert _check_snf([[2, 0], [0, 2]]) == [2, 2]
    assert _check_snf([[2, 1], [0, 1]]) == [2, 1]
    assert _check_snf([[0, 1], [1, 0]]) == [1, 1]
    with pytest.raises(SingularMatrix):
        smith_normal_form([[1, 2], [2, 4]])
