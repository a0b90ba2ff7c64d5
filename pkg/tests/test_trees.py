from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sct import trees
from sct.trees import LEAF, TreeError

from strategies import tree_words


@pytest.mark.parametrize("word", [(0,), (1, 0, 0), (2, 0, 1, 0, 0, 0), (1, 1, 0, 0, 0)])
def test_valid_words(word):
    assert trees.is_valid_word(word)
    assert trees.check_word(list(word)) == word


@pytest.mark.parametrize("word", [(), (1, 0), (0, 0), (1, 0, 0, 0), (-1, 0), (1, 0, 0, 1, 0, 0)])
def test_invalid_words(word):
    assert not trees.is_valid_word(word)
    with pytest.raises(TreeError):
        trees.check_word(word)


def test_parse_both_notations():
    assert trees.parse_tree("2,0,1,0,0,0") == trees.parse_tree("(* (* *) *)") == (2, 0, 1, 0, 0, 0)
    assert trees.parse_tree("*") == LEAF


@pytest.mark.parametrize("text", ["", "1,0", "(*)", "(* *", "* *", "1,x,0", "(* (* *)) )"])
def test_parse_rejects(text):
    with pytest.raises(TreeError):
        trees.parse_tree(text)


@given(tree_words())
def test_format_round_trips(t):
    assert trees.parse_tree(trees.format_tree(t)) == t
    assert trees.parse_tree(trees.format_nested(t)) == t


@given(tree_words())
def test_weight_degree_internal(t):
    assert trees.degree(t) == trees.weight(t) + 1 == t.count(0)
    assert trees.internal_count(t) == sum(1 for s in t if s)
    assert trees.node(*trees.children(t)) == t if t != LEAF else trees.children(t) == ()


def test_children_and_node():
    t = (2, 0, 1, 0, 0, 0)
    assert trees.children(t) == ((0,), (1, 0, 0), (0,))
    with pytest.raises(TreeError):
        trees.node(LEAF)


@pytest.mark.parametrize("kind,counts", [
    ("all", [1, 1, 3, 11, 45, 197, 903]),
    ("prime", [1, 1, 2, 6, 22, 90, 394]),
    ("binary", [1, 1, 2, 5, 14, 42, 132]),
    ("right_directed", [1, 1, 2, 5, 14, 42, 132]),
    ("left_directed", [1, 1, 2, 5, 14, 42, 132]),
])
def test_counts(kind, counts):
    assert [len(trees.enumerate_words(kind, n)) for n in range(len(counts))] == counts


def test_enumeration_is_sorted_and_classified():
    for kind, test in [("prime", trees.is_prime), ("binary", trees.is_binary),
                       ("left_directed", trees.is_left_directed), ("right_directed", trees.is_right_directed)]:
        for n in range(6):
            words = trees.enumerate_words(kind, n)
            assert list(words) == sorted(words)
            assert all(test(t) for t in words)
            assert set(words) == {t for t in trees.enumerate_words("all", n) if test(t)}


def test_prime_weight_zero_is_the_leaf():
    assert trees.enumerate_words("prime", 0) == (LEAF,)


def test_unknown_kind():
    with pytest.raises(ValueError):
        trees.enumerate_words("ternary", 2)


def test_classify_corolla():
    c = trees.classify(trees.corolla(3))
    assert c.is_corolla and c.is_prime and c.is_left_directed and c.is_right_directed and not c.is_binary


@given(tree_words(max_weight=4), st.data())
def test_graft_weights_add(t0, data):
    args = [data.draw(tree_words(max_weight=2)) for _ in range(trees.degree(t0))]
    g = trees.graft(t0, args)
    assert trees.is_valid_word(g)
    assert trees.weight(g) == trees.weight(t0) + sum(map(trees.weight, args))


def test_graft_arity_checked():
    with pytest.raises(TreeError):
        trees.graft((1, 0, 0), [LEAF])


@given(tree_words())
def test_sectors_partition_the_gaps(t):
    views = trees.sector_views(t)
    seen = sorted(s for v in views.values() for s in v)
    assert seen == list(range(1, trees.weight(t) + 1))
    assert all(len(v) == t[pos] for pos, v in views.items())
