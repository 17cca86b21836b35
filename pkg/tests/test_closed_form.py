import math
from fractions import Fraction

import pytest

from subdirac import oracle
from subdirac.closed_form import (LAMBDA0, LAMBDA_MINUS, LAMBDA_PLUS, MU_MINUS, MU_PLUS,
                                  AffineDiracSymbol, affine_spectrum, fixed_point_spectrum,
                                  symbol_for_generic_rep)
from subdirac.connection import christoffel
from subdirac.errors import FixedPointInput, NotFixedPoint, NotTwoStep
from subdirac.group_model import coadjoint, fivedim, heisenberg, threestep
from subdirac.spin import SpinStructure

PI = math.pi


def values(branches):
    return {(b.branch, b.k): b.value for b in branches}


def test_affine_example():
    v = values(affine_spectrum(AffineDiracSymbol(1, 2, 3, 2 + 1j, 1j), 2))
    assert v[LAMBDA0, 0] == pytest.approx(-3, abs=1e-14)
    assert v[LAMBDA_PLUS, 1] == pytest.approx(1 + 2 * math.sqrt(10), abs=1e-14)
    assert v[LAMBDA_MINUS, 1] == pytest.approx(1 - 2 * math.sqrt(10), abs=1e-14)
    assert v[LAMBDA_PLUS, 2] == pytest.approx(1 + 2 * math.sqrt(16), abs=1e-14)


def test_affine_zero_offset():
    v = values(affine_spectrum(AffineDiracSymbol(0.5, -1, 2, 0j, 1), 3))
    assert v[LAMBDA0, 0] == 0.5
    for k in (1, 2, 3):
        assert v[LAMBDA_PLUS, k] == pytest.approx(0.5 + math.sqrt(4 * k))
        assert v[LAMBDA_MINUS, k] == pytest.approx(0.5 - math.sqrt(4 * k))


def test_affine_example_against_fd():
    sym = AffineDiracSymbol(0, 1, 3, 2 + 1j, 1j)
    cl, ac, om, alpha = oracle.symbol_dirac_data(sym)
    center, L = oracle.affine_window(sym, 6)
    vals, _ = oracle.dirac_oracle(cl, ac, om, L, 2000, 3, 3, alpha, center)
    assert min(abs(vals - math.sqrt(10))) < 1e-4


@pytest.mark.parametrize("bad", [dict(a=0), dict(beta=0), dict(omega1=1.1)])
def test_symbol_preconditions(bad):
    args = dict(alpha=0, beta=1, a=1, omega0=0j, omega1=1j)
    args.update(bad)
    with pytest.raises(ValueError):
        AffineDiracSymbol(**args)


def test_sub_heisenberg_symbol(heis_sub):
    v = values(affine_spectrum(symbol_for_generic_rep(heis_sub, christoffel(heis_sub), (2, 0)), 3))
    assert v[LAMBDA0, 0] == 0
    for k in (1, 2, 3):
        assert v[LAMBDA_PLUS, k] == pytest.approx(math.sqrt(4 * PI * k), rel=1e-14)
        assert v[LAMBDA_MINUS, k] == pytest.approx(-math.sqrt(4 * PI * k), rel=1e-14)
    assert v[LAMBDA_PLUS, 1] == pytest.approx(3.5449077018110318, rel=1e-14)


def test_fivedim_symbol(five):
    v = values(affine_spectrum(symbol_for_generic_rep(five, christoffel(five), (2, 0, 0, 2)), 1))
    assert v[LAMBDA0, 0] == pytest.approx(-2 * PI, rel=1e-14)
    assert v[LAMBDA_PLUS, 1] == pytest.approx(math.sqrt(8 * PI + 4 * PI ** 2), rel=1e-14)
    assert v[LAMBDA_MINUS, 1] == pytest.approx(-math.sqrt(8 * PI + 4 * PI ** 2), rel=1e-14)


def test_riemannian_heisenberg_symbol(heis):
    v = values(affine_spectrum(symbol_for_generic_rep(heis, christoffel(heis), (2, 0)), 1))
    assert v[LAMBDA0, 0] == pytest.approx(-0.25 - 2 * PI, rel=1e-14)
    r = math.sqrt(4 * PI + 4 * PI ** 2)
    assert v[LAMBDA_PLUS, 1] == pytest.approx(-0.25 + r, rel=1e-14)
    assert v[LAMBDA_MINUS, 1] == pytest.approx(-0.25 - r, rel=1e-14)


@pytest.mark.parametrize("r,d,T,xi", [(1, 1, 1, (3, 5)), (2, 3, 2, (-2, 1)), (3, Fraction(1, 2), 1, (1, 0))])
def test_heisenberg_general_formula(r, d, T, xi):
    m = heisenberg(r, d, T)
    d, T = float(d), float(T)
    x1 = xi[0]
    v = values(affine_spectrum(symbol_for_generic_rep(m, christoffel(m), xi), 2))
    alpha = -d * d * T / 4
    assert v[LAMBDA0, 0] == pytest.approx(alpha - PI * abs(x1) / T, rel=1e-13)
    for k in (1, 2):
        rad = 2 * PI * d * d * k * abs(x1) + (PI * x1 / T) ** 2
        assert v[LAMBDA_PLUS, k] == pytest.approx(alpha + math.sqrt(rad), rel=1e-13)


@pytest.mark.parametrize("model,xi", [(heisenberg(1), (2, 4)), (heisenberg(2, 1, 3), (-3, 1)),
                                      (heisenberg(1, subriemannian=True), (4, 2)),
                                      (fivedim(2, 2), (2, 2, 1, 0)), (fivedim(3, -1), (1, 4, 2, -3)),
                                      (fivedim(2, 2), (0, 2, 3, 0))])
def test_orbit_invariance(model, xi):
    table = christoffel(model)
    ref = sorted(b.value for b in affine_spectrum(symbol_for_generic_rep(model, table, xi), 4))
    for t in (1, -1, Fraction(1, 2), Fraction(-1, 2)):
        moved = coadjoint(model, t, xi)
        got = sorted(b.value for b in affine_spectrum(symbol_for_generic_rep(model, table, moved), 4))
        assert got == pytest.approx(ref, rel=1e-12, abs=1e-12)


@pytest.mark.parametrize("xi", [(2, 0), (-2, 4), (6, -2)])
def test_d2_spectrum_is_symmetric(heis_sub, xi):
    vals = sorted(b.value for b in affine_spectrum(symbol_for_generic_rep(heis_sub, None, xi), 5))
    assert vals == pytest.approx(sorted(-x for x in vals), abs=1e-13)


def test_generic_rep_errors(heis_sub, three):
    with pytest.raises(FixedPointInput):
        symbol_for_generic_rep(heis_sub, None, (0, 2))
    with pytest.raises(NotTwoStep):
        symbol_for_generic_rep(three, christoffel(three), (2, 0, 0))


def test_fixed_point_examples(heis_sub, five):
    z = SpinStructure((0, 0))
    v = values(fixed_point_spectrum(heis_sub, None, z, (0, 0), [0]))
    assert v[MU_PLUS, 0] == 0 and v[MU_MINUS, 0] == 0
    v = values(fixed_point_spectrum(heis_sub, None, z, (0, 2), [1]))
    assert v[MU_PLUS, 1] == pytest.approx(2 * math.sqrt(2) * PI, rel=1e-14)
    assert v[MU_MINUS, 1] == pytest.approx(-2 * math.sqrt(2) * PI, rel=1e-14)
    v = values(fixed_point_spectrum(five, christoffel(five), SpinStructure((0,) * 4, 1),
                                    (0, 0, 0, 0), [0]))
    assert v[MU_PLUS, 0] == pytest.approx(PI) and v[MU_MINUS, 0] == pytest.approx(-PI)
    with pytest.raises(NotFixedPoint):
        fixed_point_spectrum(heis_sub, None, z, (2, 0), [0])


def test_fixed_point_alpha_shift(heis):
    table = christoffel(heis)
    bs = fixed_point_spectrum(heis, table, SpinStructure((0, 0), 1), (0, 4), range(-2, 3))
    plus = {b.k: b.value for b in bs if b.branch == MU_PLUS}
    minus = {b.k: b.value for b in bs if b.branch == MU_MINUS}
    for k in plus:
        assert plus[k] + minus[k] == 2 * float(table.alpha)
        # (pi d / r)((2k+1)^2 + r^2 xi_2^2)^(1/2) with r = d = 1
        assert plus[k] - float(table.alpha) == pytest.approx(PI * math.sqrt((2 * k + 1) ** 2 + 16))
