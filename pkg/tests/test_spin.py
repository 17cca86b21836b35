import pytest

from subdirac.errors import DimensionTooLarge, InvalidSpinStructure
from subdirac.group_model import ModelSpec, coadjoint, fivedim, heisenberg, threestep
from subdirac.spin import (SpinStructure, enumerate_spin_structures, is_valid_eps,
                           sigma_contains, sigma_points)


def test_validity_examples():
    assert is_valid_eps(heisenberg(2), (1, 0))
    assert not is_valid_eps(heisenberg(1), (1, 0))
    for m in (heisenberg(1), fivedim(3, 1), threestep(2, 1)):
        assert is_valid_eps(m, (0,) * m.n)


def test_enumeration_counts():
    assert len(enumerate_spin_structures(heisenberg(1))) == 4
    assert len(enumerate_spin_structures(heisenberg(2))) == 8
    # r1 = 2, r2 = 1: eps1 = eps2 forced, eps3 and eps_dot free
    s = enumerate_spin_structures(threestep(2, 1))
    assert len(s) == 8
    assert all(x.eps_prime[0] == x.eps_prime[1] for x in s)


@pytest.mark.parametrize("r1,r2,allowed", [
    (2, 2, {(a, b) for a in (0, 1) for b in (0, 1)}),
    (1, 2, {(0, 0), (0, 1)}),
    (2, 1, {(0, 0), (1, 1)}),
    (4, 1, {(0, 0), (1, 0)}),
    (6, 1, {(0, 0), (1, 1)}),
])
def test_threestep_rules(r1, r2, allowed):
    got = {x.eps_prime[:2] for x in enumerate_spin_structures(threestep(r1, r2))}
    assert got == allowed


def test_enumeration_size_is_power_of_two():
    for m in (heisenberg(3), fivedim(2, 2), fivedim(4, 1), threestep(2, 2), threestep(4, 1)):
        k = len(enumerate_spin_structures(m))
        assert k & (k - 1) == 0


def test_dimension_bound():
    n = 25
    B = [[0] * n for _ in range(n)]
    m = ModelSpec.build(n, B, 2, [[1] + [0] * (n - 1)], 1)
    with pytest.raises(DimensionTooLarge):
        enumerate_spin_structures(m)


def test_sigma_examples():
    assert sigma_contains(SpinStructure((0, 0)), (2, -4))
    assert sigma_contains(SpinStructure((1, 0)), (3, 2))
    assert not sigma_contains(SpinStructure((1, 0)), (2, 2))


@pytest.mark.parametrize("model", [heisenberg(2), fivedim(2, 2), threestep(2, 2), threestep(2, 1)])
def test_sigma_is_invariant_under_the_lattice(model):
    for spin in enumerate_spin_structures(model):
        for xi in sigma_points(spin, 2):
            for l in range(-4, 5):
                assert sigma_contains(spin, coadjoint(model, l, xi))


def test_parse_and_json():
    s = SpinStructure.parse("101:1", 3)
    assert s.eps_prime == (1, 0, 1) and s.eps_dot == 1
    assert str(s) == "101:1"
    assert SpinStructure.from_json(s.to_json()) == s
    with pytest.raises(InvalidSpinStructure):
        SpinStructure.parse("12:0")
    with pytest.raises(InvalidSpinStructure):
        SpinStructure.parse("10:0", 3)
