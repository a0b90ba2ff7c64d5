from __future__ import annotations

import pytest
from hypothesis import given

from sct import ncpart, trees
from sct.ncpart import NoncrossingPartition, parse_partition

from strategies import nc_partitions, prime_trees, tree_words

FIGURE_TREE = (2, 1, 2, 0, 1, 0, 0, 1, 0, 0, 0, 1, 0, 2, 0, 0, 0, 0)


def _kreweras_by_permutation(pi: NoncrossingPartition) -> NoncrossingPartition:
    """Independent oracle: cycles of pi^{-1} o gamma, gamma the long cycle (1 2 ... n)."""
    n = pi.n
    succ = {}
    for b in pi.blocks:
        for i, x in enumerate(b):
            succ[b[(i + 1) % len(b)]] = x  # pi^{-1}
    perm = {i: succ[i % n + 1] for i in range(1, n + 1)}
    seen, blocks = set(), []
    for i in range(1, n + 1):
        if i in seen:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(j)
            j = perm[j]
        blocks.append(tuple(sorted(cyc)))
    return NoncrossingPartition(n, tuple(blocks))


def test_catalan():
    assert [ncpart.catalan(n) for n in range(8)] == [1, 1, 2, 5, 14, 42, 132, 429]


@pytest.mark.parametrize("n", range(0, 8))
def test_nc_counts(n):
    assert len(ncpart.enumerate_nc(n)) == ncpart.catalan(n)


def test_crossing_rejected():
    assert not ncpart.is_noncrossing([(1, 3), (2, 4)])
    with pytest.raises(ValueError):
        NoncrossingPartition(4, ((1, 3), (2, 4)))
    with pytest.raises(ValueError):
        NoncrossingPartition(3, ((1, 2),))


def test_parse_and_format():
    pi = parse_partition("1,4,5,6|2,3|7,8,10|9")
    assert pi.n == 10
    assert ncpart.format_partition(pi) == "1,4,5,6|2,3|7,8,10|9"
    assert parse_partition("1|2", 2).n == 2
    with pytest.raises(ValueError):
        parse_partition("1|2", 4)


@pytest.mark.parametrize("pi,expected", [
    ("1,3,4|2|5,7|6|8", "1,2|3|4,7,8|5,6"),
    ("1,2|3|4,6|5", "1|2,3,6|4,5"),
])
def test_kreweras_examples(pi, expected):
    assert ncpart.format_partition(ncpart.kreweras(parse_partition(pi))) == expected


@given(nc_partitions(max_n=8))
def test_kreweras_matches_permutation_oracle(pi):
    assert ncpart.kreweras(pi) == _kreweras_by_permutation(pi)


@given(nc_partitions(max_n=8))
def test_kreweras_block_count(pi):
    assert len(pi) + len(ncpart.kreweras(pi)) == pi.n + 1


def test_kreweras_extremes():
    assert ncpart.kreweras(ncpart.bottom(5)) == ncpart.top(5)
    assert ncpart.kreweras(ncpart.top(5)) == ncpart.bottom(5)


@pytest.mark.parametrize("n", range(1, 7))
def test_moebius_identities(n):
    zero, one = ncpart.bottom(n), ncpart.top(n)
    for pi in ncpart.enumerate_nc(n):
        assert ncpart.moebius(zero, pi) == ncpart.moebius_closed(pi) == ncpart.moebius(ncpart.kreweras(pi), one)


def test_moebius_top():
    assert [ncpart.moebius(ncpart.bottom(n), ncpart.top(n)) for n in range(1, 7)] == [1, -1, 2, -5, 14, -42]
    with pytest.raises(ValueError):
        ncpart.moebius(ncpart.top(3), ncpart.bottom(3))


def test_figure_tree_partition():
    arr = ncpart.tree_to_arrangement(FIGURE_TREE)
    assert ncpart.format_partition(ncpart.arrangement_to_partition(arr)) == "1,4,5,6|2,3|7,8,10|9"
    assert ncpart.arrangement_to_tree(arr) == FIGURE_TREE


@given(prime_trees(max_weight=7))
def test_arrangement_round_trip(t):
    arr = ncpart.tree_to_arrangement(t)
    assert ncpart.arrangement_to_tree(arr) == t
    assert arr.internal_count() == arr.n - len(arr.trees)


@pytest.mark.parametrize("n", range(1, 7))
def test_arrangements_biject_with_prime_trees(n):
    arrs = ncpart.enumerate_arrangements(n)
    assert len(arrs) == len(trees.enumerate_words("prime", n))
    assert {ncpart.arrangement_to_tree(a) for a in arrs} == set(trees.enumerate_words("prime", n))


@given(prime_trees(max_weight=7))
def test_sector_partition_is_kreweras_of_arrangement(t):
    arr = ncpart.tree_to_arrangement(t)
    assert ncpart.sector_partition(t) == ncpart.kreweras(ncpart.arrangement_to_partition(arr))


def test_sector_partition_rejects_non_prime():
    with pytest.raises(ValueError):
        ncpart.sector_partition((1, 0, 1, 0, 0))


def test_right_directed_example():
    pi = parse_partition("1,7|2|3,5|4|6")
    t = ncpart.nc_to_rdt(pi)
    assert t == (2, 0, 1, 0, 2, 0, 1, 0, 0, 1, 0, 0, 0)
    assert trees.is_right_directed(t)


@given(nc_partitions(min_n=0, max_n=8))
def test_nc_to_rdt_round_trip(pi):
    t = ncpart.nc_to_rdt(pi)
    assert trees.is_right_directed(t)
    assert ncpart.view_partition(t) == pi


@given(tree_words("right_directed", 7))
def test_rdt_to_nc_round_trip(t):
    assert ncpart.nc_to_rdt(ncpart.view_partition(t)) == t


def test_ndpf():
    assert [len(ncpart.ndpf_enumerate(n)) for n in range(1, 7)] == [ncpart.catalan(n) for n in range(1, 7)]
    assert ncpart.ndpf_ev((1, 1, 3)) == (2, 1)
