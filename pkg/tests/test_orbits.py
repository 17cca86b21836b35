from fractions import Fraction

import pytest

from subdirac.errors import ScanInconclusive
from subdirac.group_model import ModelSpec, fivedim, heisenberg, is_fixed, threestep, validate_model
from subdirac.orbits import (FIXED, GENERIC, M_set, bruteforce_hits, is_fixed_point, m_count,
                             orbit_contains, orbit_hits, progression_structure, q_of,
                             representatives, representatives_2step_block,
                             representatives_3step, representatives_bruteforce,
                             representatives_heisenberg, zorbit_count_bruteforce)
from subdirac.spin import SpinStructure, enumerate_spin_structures, sigma_points

Z2 = SpinStructure((0, 0))
Z3 = SpinStructure((0, 0, 0))
Z4 = SpinStructure((0, 0, 0, 0))


def test_fixed_point_examples():
    m = heisenberg(1)
    assert is_fixed_point(m, (0, 5))
    assert not is_fixed_point(m, (2, 0))
    assert is_fixed_point(m, (0, 0))


def test_bruteforce_examples():
    assert zorbit_count_bruteforce(heisenberg(2), Z2, (2, 0)) == 2
    assert zorbit_count_bruteforce(fivedim(2, 2), Z4, (2, 2, 0, 0)) == 2
    assert zorbit_count_bruteforce(threestep(2, 2), Z3, (2, 0, 0)) == 1


def test_bruteforce_hit_set_is_a_progression():
    hits = bruteforce_hits(heisenberg(2), Z2, (2, 0))
    assert progression_structure(hits) == (0, Fraction(1, 2))


def test_bruteforce_refuses_short_scans():
    with pytest.raises(ScanInconclusive):
        zorbit_count_bruteforce(heisenberg(2), Z2, (2, 0), L=8, T=1)


def test_bruteforce_detects_a_coarse_grid():
    # with L = 1 the scan cannot see the hit at t = 1/2; the count is still the
    # number of integer-grid hits, which is the documented behaviour
    assert zorbit_count_bruteforce(heisenberg(2), Z2, (2, 0), L=1, T=3) == 1


def test_heisenberg_examples():
    reps = representatives_heisenberg(1, Z2, 2)
    fixed = {r.xi for r in reps if r.kind == FIXED}
    gen = {r.xi: r.z_orbit_count for r in reps if r.kind == GENERIC}
    assert fixed == {(0, 0), (0, 2), (0, -2)}
    assert gen == {(2, 0): 1, (-2, 0): 1}
    reps = representatives_heisenberg(2, SpinStructure((1, 0)), 3)
    assert all(r.kind == GENERIC for r in reps)
    assert {r.xi: r.z_orbit_count for r in reps} == {(1, 0): 1, (-1, 0): 1, (3, 0): 3, (-3, 0): 3}
    assert [r.xi for r in representatives_heisenberg(5, Z2, 0)] == [(0, 0)]


def test_block_examples():
    reps = representatives_2step_block(2, [2, 2], Z4, 4)
    eta22 = [r for r in reps if r.xi[:2] == (2, 2)]
    assert {r.xi[2] for r in eta22} == {0}
    assert all(r.z_orbit_count == 2 and r.family_data["q"] == 1 and r.family_data["d"] == 4
               for r in eta22)
    eta20 = [r for r in reps if r.xi[:2] == (2, 0)]
    assert {r.xi[2] for r in eta20} == {0}
    assert {r.xi[3] for r in eta20} == {-4, -2, 0, 2, 4}
    assert all(r.z_orbit_count == 2 for r in eta20)
    fixed = [r for r in reps if r.kind == FIXED]
    assert len(fixed) == 25 and all(r.xi[:2] == (0, 0) for r in fixed)


def test_threestep_examples():
    assert q_of(2, 2, 2) == 2
    assert M_set(0, 2) == [] and M_set(2, 2) == []
    assert m_count(2, 2, 0, 2) == 1 and m_count(2, 2, 2, 2) == 1
    reps = {r.xi: r for r in representatives_3step(2, 2, Z3, 4)}
    assert reps[(2, 0, 0)].z_orbit_count == 1
    assert reps[(2, 2, 0)].z_orbit_count == 1
    assert reps[(0, 0, 4)].kind == FIXED


def test_fixed_reps_are_exactly_the_fixed_points():
    for m in (heisenberg(2), fivedim(2, 2), threestep(2, 2)):
        for spin in enumerate_spin_structures(m)[::2]:
            for r in representatives(m, spin, 3):
                assert (r.kind == FIXED) == is_fixed(m, r.xi)
                if r.kind == FIXED:
                    assert r.z_orbit_count == 1


def test_orbit_contains():
    m = threestep(2, 2)
    assert orbit_contains(m, (2, 0, 0), (2, 4, 4))
    assert orbit_contains(m, (2, 0, 0), (2, 1, Fraction(1, 4)))
    assert not orbit_contains(m, (2, 0, 0), (2, 4, 6))
    assert orbit_contains(m, (0, 0, 2), (0, 0, 2))


def _partition_failures(model, spin, W):
    """Points of the window whose orbit meets the representative list != once."""
    T = W + 2   # every pinned coordinate reaches its representative range within |t| <= W + 2
    pts = sigma_points(spin, W)
    hits = {}
    box = [W] * model.n
    for xi in pts:
        if is_fixed(model, xi):
            hits[xi] = [xi]
            continue
        hits[xi] = [p for _, p in orbit_hits(model, spin, xi, -T, T)]
        for p in hits[xi]:
            box = [max(b, abs(a)) for b, a in zip(box, p)]
    reps = {r.xi for r in representatives(model, spin, tuple(box))}
    return [xi for xi in pts if sum(p in reps for p in hits[xi]) != 1]


@pytest.mark.parametrize("model,W", [(heisenberg(1), 8), (heisenberg(2), 8), (threestep(2, 2), 8),
                                     (threestep(2, 1), 8), (threestep(4, 1), 8),
                                     (fivedim(2, 2), 4), (fivedim(4, 2), 4), (fivedim(3, 1), 4)])
def test_partition_property(model, W):
    for spin in enumerate_spin_structures(model):
        if spin.eps_dot:
            continue   # eps_dot does not enter the orbit data
        assert _partition_failures(model, spin, W) == []


def test_partition_property_block_larger_window():
    assert _partition_failures(fivedim(2, 2), Z4, 6) == []


def test_bruteforce_enumerator_on_an_unlabelled_model():
    # Heisenberg written out explicitly (no preset): reps differ, counts must still agree
    spec = ModelSpec.build(2, [[0, 2], [0, 0]], 3, [[1, 0], [0, -1]], 2, complement=[])
    m = validate_model(spec)
    reps = representatives_bruteforce(m, Z2, 4)
    counts = {r.xi[0]: r.z_orbit_count for r in reps if r.kind == GENERIC}
    assert counts == {x: abs(2 * x) // 2 for x in (-4, -2, 2, 4)}
