from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sct import cumulants, nsym, symfun
from sct.poly import m
from sct.symfun import PowerSeries


def unit_slope(draw_coeffs):
    head, tail = draw_coeffs
    return PowerSeries([0, head] + tail)


series = st.tuples(
    st.sampled_from([Fraction(1), Fraction(-1), Fraction(2), Fraction(-1, 3)]),
    st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=5), min_size=2, max_size=7),
).map(unit_slope)


def test_revert_identity():
    assert str(symfun.revert(PowerSeries.t(5))) == "t"


def test_revert_catalan():
    g = symfun.revert(PowerSeries.from_scalars([0, 1, 1]), 6)
    assert str(g) == "t - t^2 + 2t^3 - 5t^4 + 14t^5 - 42t^6"


@given(series)
def test_revert_round_trip(F):
    G = symfun.revert(F)
    assert F.compose(G) == PowerSeries.t(F.N)
    assert G.compose(F) == PowerSeries.t(F.N)
    assert symfun.revert(G) == F
    assert symfun.revert_lagrange(F) == G


@pytest.mark.parametrize("coeffs", [[1, 1], [0, 0, 1], [0, m(1)]])
def test_revert_rejects(coeffs):
    with pytest.raises(ValueError):
        symfun.revert(PowerSeries(coeffs, 3))


def test_inverse_needs_scalar_constant():
    with pytest.raises(ValueError):
        PowerSeries([m(1), 1]).inverse()
    one = PowerSeries([1], 4)
    h = symfun.H(4)
    assert h * h.inverse() == one


def test_e_and_h_generating_series():
    assert str(symfun.e(2)) == "m1^2 - m2"
    minus = PowerSeries([symfun.E(5)[k] * (-1) ** k for k in range(6)])
    assert minus * symfun.H(5) == PowerSeries([1], 5)


@pytest.mark.parametrize("n", range(0, 7))
def test_h_star_lagrange(n):
    assert symfun.h_star(n) == symfun.h_star_lagrange(n)


@pytest.mark.parametrize("n", range(0, 6))
def test_star_is_an_involution(n):
    assert symfun.star(symfun.h_star(n)) == m(n)
    assert symfun.star(symfun.star(symfun.e(n))) == symfun.e(n)


def test_h_star_small():
    assert str(symfun.h_star(1)) == "-m1"
    assert str(symfun.h_star(2)) == "2m1^2 - m2"


def test_classical_cumulants():
    ks = symfun.classical_cumulants(4)
    assert ks[0] == m(1)
    assert str(ks[2]) == "2m1^3 - 3m2m1 + m3"
    assert str(ks[2].unsigned()) == "2m1^3 + 3m2m1 + m3"
    with pytest.raises(ValueError):
        symfun.classical_cumulants(0)


@pytest.mark.parametrize("n", range(1, 7))
def test_cumulants_are_signed_e_star(n):
    assert symfun.classical_cumulants(n)[-1] == symfun.e_star(n) * (-1) ** n


@pytest.mark.parametrize("n", range(1, 7))
def test_univariate_consistency(n):
    k = symfun.classical_cumulants(n)[-1]
    assert k == cumulants.univariate_kappa(n)
    assert k == cumulants.univariate(cumulants.speicher_kappa(n))
    assert k == nsym.specialize(nsym.cumulant_K(n).homogeneous(n), m)


def test_estar_formula_small():
    assert str(symfun.estar_formula(2)) == "e[2]"
    assert str(symfun.estar_formula(3)) == "e[3] + e[2,1]"
    assert str(symfun.estar_formula(4)) == "e[4] + 2e[3,1] + e[2,2] + e[2,1,1]"
    assert symfun.e_star(2) == -symfun.e(2)
    with pytest.raises(ValueError):
        symfun.estar_formula(1)


@pytest.mark.parametrize("n", range(2, 7))
def test_estar_formula_matches_reversion(n):
    assert symfun.estar_formula(n).to_h_poly() == -symfun.e_star(n)


def test_partitions():
    assert symfun.partitions(4) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert [len(symfun.partitions(n)) for n in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]


def test_series_printing():
    assert str(symfun.H(2)) == "1 + m1t + m2t^2"
    assert str(symfun.E(2)) == "1 + m1t + (m1^2 - m2)t^2"
    assert str(PowerSeries([Fraction(1, 2), 0, -3])) == "1/2 - 3t^2"
    assert str(PowerSeries([0, 0])) == "0"


def test_random_round_trip_order_8():
    rng = random.Random(7)
    for _ in range(5):
        coeffs = [0, rng.choice([1, -2, 3])] + [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(7)]
        F = PowerSeries(coeffs)
        assert symfun.revert(symfun.revert(F)) == F
