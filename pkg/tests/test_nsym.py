from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sct import nsym
from sct.nsym import L, NSymElement, R, S


def compositions_up_to(n: int):
    return st.integers(0, n).flatmap(lambda d: st.sampled_from(nsym.compositions(d)))


elements = st.dictionaries(compositions_up_to(4), st.integers(-3, 3), max_size=4).map(NSymElement)


def test_compositions():
    assert nsym.compositions(3) == ((3,), (2, 1), (1, 2), (1, 1, 1))
    assert [len(nsym.compositions(n)) for n in range(7)] == [1, 1, 2, 4, 8, 16, 32]


def test_descents():
    assert nsym.descents((2, 1, 3)) == {2, 3}
    assert nsym.from_descents(6, {2, 3}) == (2, 1, 3)


@given(compositions_up_to(7))
def test_mirror_conjugate_is_involution(i):
    assert nsym.mirror_conjugate(nsym.mirror_conjugate(i)) == i
    assert sum(nsym.mirror_conjugate(i)) == sum(i)


@given(elements, st.sampled_from(nsym.BASES), st.sampled_from(nsym.BASES))
def test_basis_changes_round_trip(x, a, b):
    assert x.to(a).to(b).to("S") == x
    assert x.to(a) == x


def test_small_transitions():
    assert S(2) == R(2)
    assert S(1, 1) == R(2) + R(1, 1)
    assert L(2) == R(1, 1)
    assert str(nsym.convert(S(1, 1), "R")) == "R[2] + R[1,1]"


@given(elements, elements, elements)
def test_algebra_axioms(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x - x == NSymElement({})


@given(elements)
def test_minus_A_is_an_involution(x):
    assert nsym.minus_A(nsym.minus_A(x)) == x


def test_lagrange_series():
    assert str(nsym.lagrange_g(2).homogeneous(2)) == "S[2] + S[1,1]"
    assert str(nsym.convert(nsym.lagrange_g(3).homogeneous(3), "R")) == "5R[3] + 3R[2,1] + 2R[1,2] + R[1,1,1]"


@pytest.mark.parametrize("n", range(7))
def test_lagrange_equation_and_ndpf(n):
    g = nsym.lagrange_g(n)
    rhs = NSymElement({})
    for k in range(n + 1):
        rhs = rhs + nsym.mul(S(k) if k else nsym.ONE, nsym.power(g, k, n), n)
    assert rhs.truncate(n) == g
    assert g.homogeneous(n) == nsym.lagrange_g_ndpf(n)


@pytest.mark.parametrize("n", range(1, 8))
def test_cumulant_routes(n):
    ref = nsym.cumulant_K(n)
    assert nsym.cumulant_K(n, "antipode_formula") == ref
    assert nsym.cumulant_K(n, "ribbon_rule") == ref


def test_cumulant_defining_equation():
    n = 6
    k = nsym.cumulant_K(n)
    s = nsym.sigma1(n)
    total = NSymElement({})
    for d in range(n + 1):
        total = total + nsym.mul(k.homogeneous(d) if d else nsym.ONE, nsym.power(s, d, n), n)
    assert total.truncate(n) == s


def test_unknown_cumulant_method():
    with pytest.raises(ValueError):
        nsym.cumulant_K(3, "guess")


def test_g_times_one_minus_omega_g():
    n = 6
    g = nsym.lagrange_g(n)
    assert nsym.mul(g, nsym.ONE - nsym.omega(g), n) == nsym.ONE


def test_antipode_of_sigma_and_inverse_of_h():
    n = 6
    s = nsym.sigma1(n)
    g = nsym.lagrange_g(n)
    assert nsym.antipode(s) == nsym.minus_A(g)
    assert nsym.inverse(nsym.minus_A(g), n) == nsym.cumulant_K(n)


@pytest.mark.parametrize("index", [c for d in range(1, 5) for c in nsym.compositions(d)])
def test_antipode_axioms(index):
    x = S(*index)
    tensor = nsym.delta1(x)
    left = NSymElement({})
    right = NSymElement({})
    for (i, j), c in tensor.items():
        left = left + nsym.antipode(S(*i)) * S(*j) * c
        right = right + S(*i) * nsym.antipode(S(*j)) * c
    assert left == NSymElement({}) and right == NSymElement({})


def test_delta1_of_s2():
    # S_2 -> 1 (x) S_2 + S_1 (x) S_1(2A) + S_2 (x) 1, with S_1(2A) = 2 S_1
    assert nsym.delta1(S(2)) == {((), (2,)): 1, ((1,), (1,)): 2, ((2,), ()): 1}


def test_s_of_multiple():
    assert nsym.s_of_multiple(2, 2) == {(2,): 2, (1, 1): 1}


@pytest.mark.parametrize("n", range(1, 6))
def test_s_in_K_back_substitution(n):
    assert nsym.substitute_K(nsym.s_in_K(n), n).homogeneous(n) == S(n)


def test_format_K():
    assert nsym.format_K(nsym.s_in_K(3)) == "K[3] + 2K[2,1] + K[1,2] + K[1,1,1]"


def test_specialize_to_scalars():
    assert nsym.specialize(S(2, 1) * 3 - S(3), lambda k: Fraction(k)) == 3


def test_json_shape():
    js = nsym.convert(nsym.cumulant_K(2).homogeneous(2), "R").to_json()
    assert js == {"basis": "R", "terms": [{"index": [1, 1], "num": -1, "den": 1}]}
