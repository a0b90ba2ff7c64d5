from __future__ import annotations

import pytest
from hypothesis import given

from sct import cumulants, ncpart, trees
from sct.cumulants import PhiExpr, parse_phi
from sct.poly import MomentPolynomial, m

from strategies import prime_trees, tree_words


def test_kappa2_readings():
    assert str(cumulants.kappa_eval(2, "operator")) == "φ(a1a2) - φ(φ(a1)a2)"
    assert str(cumulants.kappa_eval(2, "bimodule")) == "φ(a1a2) - φ(a1)φ(a2)"
    assert str(cumulants.kappa_eval(2, "scalar")) == "-m[a1]m[a2] + m[a1a2]"


def test_kappa3_operator_and_bimodule():
    assert str(cumulants.kappa_eval(3, "operator")) == (
        "φ(a1a2a3) - φ(φ(a1)a2a3) - φ(a1φ(a2)a3) - φ(φ(a1a2)a3) + φ(φ(φ(a1)a2)a3) + φ(φ(a1φ(a2))a3)"
    )
    # pulling out the boundary factors turns both binary trees into φ(a1)φ(a2)φ(a3)
    assert str(cumulants.kappa_eval(3, "bimodule")) == (
        "φ(a1a2a3) - φ(a1)φ(a2a3) - φ(a1φ(a2)a3) - φ(a1a2)φ(a3) + 2φ(a1)φ(a2)φ(a3)"
    )


def test_parse_phi_round_trip():
    text = "φ(φ(a1φ(a2))a3φ(a4a5)a6)"
    mono = parse_phi(text)
    assert str(PhiExpr.single(mono)) == text
    assert parse_phi(text.replace("φ(", "phi(")) == mono


@pytest.mark.parametrize("bad", ["φ(a1", "a1)", "φ()x", "ψ(a1)"])
def test_parse_phi_rejects(bad):
    with pytest.raises(ValueError):
        parse_phi(bad)


@given(tree_words(max_weight=6))
def test_tree_of_reading_inverts_operator_reading(t):
    if t == (0,):
        return
    w = cumulants.standard_letters(trees.weight(t))
    (mono,) = cumulants.eval_tree(t, w, "operator").terms
    assert cumulants.tree_of_reading(mono) == (t, w)


def test_right_directed_example():
    e = "φ(a1φ(φ(a2)a3φ(a4)a5φ(a6))a7)"
    assert str(cumulants.right_directed_form(e)) == "φ(a1φ(a2φ(a3φ(a4)a5φ(a6)))a7)"
    t, _ = cumulants.right_directed_tree(e)
    assert ncpart.format_partition(ncpart.view_partition(t)) == "1,7|2|3,5|4|6"


@given(tree_words(max_weight=6))
def test_right_directed_form_has_same_bimodule_reading(t):
    if t == (0,):
        return
    w = cumulants.standard_letters(trees.weight(t))
    (mono,) = cumulants.eval_tree(t, w, "operator").terms
    rd = cumulants.right_directed_form(mono)
    (rd_mono,) = rd.terms
    assert cumulants.pull_out(rd_mono) == cumulants.pull_out(mono)
    assert trees.is_right_directed(cumulants.right_directed_tree(mono)[0])


@given(prime_trees(max_weight=6))
def test_central_shadow_is_the_scalar_reading(t):
    w = cumulants.standard_letters(trees.weight(t))
    assert cumulants.centralize(cumulants.eval_tree(t, w, "bimodule")) == cumulants.eval_tree(t, w, "scalar")
    assert cumulants.centralize(cumulants.eval_tree(t, w, "operator")) == cumulants.eval_tree(t, w, "scalar")


@pytest.mark.parametrize("n", range(1, 7))
def test_tree_sum_equals_moebius(n):
    assert cumulants.kappa_eval(n, "scalar") == cumulants.speicher_kappa(n)


@pytest.mark.parametrize("n", range(1, 6))
def test_moment_cumulant_formula(n):
    assert cumulants.moments_from_kappa(n) == cumulants.moment(cumulants.standard_letters(n))


def test_repeated_letters_specialise():
    k = cumulants.kappa_eval(3, "scalar", ("a", "a", "a"))
    assert k == m(3) - m(2) * m(1) * 3 + m(1) ** 3 * 2


def test_univariate_and_unsigned():
    assert str(cumulants.univariate_kappa(3)) == "2m1^3 - 3m2m1 + m3"
    assert str(cumulants.unsigned_polynomial(3)) == "2m1^3 + 3m2m1 + m3"
    assert str(cumulants.unsigned_polynomial(4)) == "5m1^4 + 10m2m1^2 + 2m2^2 + 4m3m1 + m4"


@pytest.mark.parametrize("n", range(1, 8))
def test_unsigned_coefficients_count_prime_trees(n):
    assert cumulants.unsigned_polynomial(n).coefficient_sum() == len(trees.enumerate_words("prime", n))


@pytest.mark.parametrize("j,k", [(j, s - j) for s in range(2, 6) for j in range(1, s)])
def test_cluster_involution(j, k):
    for t in trees.enumerate_words("prime", j + k):
        u = cumulants.cluster_involution(t, j, k)
        assert u != t and cumulants.cluster_involution(u, j, k) == t
        assert abs(trees.internal_count(u) - trees.internal_count(t)) == 1
    assert cumulants.mixed_kappa_factored(j, k) == MomentPolynomial()


def test_cluster_involution_arguments():
    with pytest.raises(ValueError):
        cumulants.cluster_involution((1, 0, 0), 1, 1)
    with pytest.raises(ValueError):
        cumulants.cluster_involution((1, 0, 1, 0, 0), 1, 1)


def test_unknown_mode():
    with pytest.raises(ValueError):
        cumulants.eval_tree((1, 0, 0), ("a1",), "classical")
