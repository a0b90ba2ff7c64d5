"""Noncrossing partitions, the Kreweras complement, and the maps linking
prime Schroeder trees, noncrossing arrangements of binary trees, and
noncrossing partitions.
"""
from __future__ import annotations

import math
from itertools import combinations, product
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from . import trees
from .trees import LEAF, SchroederTree


def catalan(n: int) -> int:
    """
    >>> [catalan(n) for n in range(8)]
    [1, 1, 2, 5, 14, 42, 132, 429]
    """
    return math.comb(2 * n, n) // (n + 1)


@dataclass(frozen=True, order=True)
class NoncrossingPartition:
    n: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(sorted(tuple(sorted(b)) for b in self.blocks))
        object.__setattr__(self, "blocks", blocks)
        seen = [x for b in blocks for x in b]
        if any(not b for b in blocks) or sorted(seen) != list(range(1, self.n + 1)):
            raise ValueError(f"blocks {blocks} do not partition 1..{self.n}")
        if not is_noncrossing(blocks):
            raise ValueError(f"blocks {blocks} cross")

    @cached_property
    def labels(self) -> tuple[int, ...]:
        """``labels[i]`` is the block index of element ``i`` (index 0 unused)."""
        lab = [0] * (self.n + 1)
        for k, b in enumerate(self.blocks):
            for x in b:
                lab[x] = k
        return tuple(lab)

    def __len__(self):
        return len(self.blocks)

    def __str__(self):
        return format_partition(self)


def is_noncrossing(blocks: Iterable[Sequence[int]]) -> bool:
    blocks = [tuple(sorted(b)) for b in blocks]
    for i, b in enumerate(blocks):
        for c in blocks[i + 1:]:
            for a1, a2 in zip(b, b[1:]):
                inside = [x for x in c if a1 < x < a2]
                if inside and len(inside) != len(c):
                    return False
            for c1, c2 in zip(c, c[1:]):
                inside = [x for x in b if c1 < x < c2]
                if inside and len(inside) != len(b):
                    return False
    return True


def format_partition(p: NoncrossingPartition) -> str:
    return "|".join(",".join(map(str, b)) for b in p.blocks)


def parse_partition(text: str, n: int | None = None) -> NoncrossingPartition:
    text = text.strip()
    if not text:
        return NoncrossingPartition(n or 0, ())
    try:
        blocks = [tuple(int(x) for x in part.split(",")) for part in text.split("|")]
    except ValueError:
        raise ValueError(f"not a partition literal: {text!r}") from None
    size = max(max(b) for b in blocks) if n is None else n
    return NoncrossingPartition(size, tuple(blocks))


def bottom(n: int) -> NoncrossingPartition:
    return NoncrossingPartition(n, tuple((i,) for i in range(1, n + 1)))


def top(n: int) -> NoncrossingPartition:
    return NoncrossingPartition(n, (tuple(range(1, n + 1)),) if n else ())


# --- lattice ---------------------------------------------------------------

def _nc_blocks(elems: tuple[int, ...]):
    """Noncrossing partitions of an increasing tuple, as lists of blocks."""
    if not elems:
        yield []
        return
    first, rest = elems[0], elems[1:]
    # choose the other members of first's block; the gaps between them are
    # filled independently
    for r in range(len(rest) + 1):
        for idx in combinations(range(len(rest)), r):
            block = (first,) + tuple(rest[i] for i in idx)
            cuts = [-1] + list(idx) + [len(rest)]
            gaps = [rest[a + 1:b] for a, b in zip(cuts, cuts[1:])]
            yield from _combine(block, gaps)


def _combine(block, gaps):
    def rec(i):
        if i == len(gaps):
            yield []
            return
        for head in _nc_blocks(gaps[i]):
            for tail in rec(i + 1):
                yield head + tail
    for parts in rec(0):
        yield [block] + parts


@lru_cache(maxsize=None)
def enumerate_nc(n: int) -> tuple[NoncrossingPartition, ...]:
    """All noncrossing partitions of [n], sorted."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return tuple(sorted(NoncrossingPartition(n, tuple(bl)) for bl in _nc_blocks(tuple(range(1, n + 1)))))


def leq(sigma: NoncrossingPartition, pi: NoncrossingPartition) -> bool:
    """Refinement order: every block of sigma lies inside a block of pi."""
    if sigma.n != pi.n:
        raise ValueError("partitions of different sizes")
    lab = pi.labels
    return all(lab[x] == lab[b[0]] for b in sigma.blocks for x in b)


@lru_cache(maxsize=None)
def _mobius_from(sigma: NoncrossingPartition) -> dict[NoncrossingPartition, int]:
    up = [p for p in enumerate_nc(sigma.n) if leq(sigma, p)]
    up.sort(key=lambda p: -len(p))  # finer partitions first
    mu: dict[NoncrossingPartition, int] = {}
    for tau in up:
        if tau == sigma:
            mu[tau] = 1
            continue
        mu[tau] = -sum(v for rho, v in mu.items() if len(rho) > len(tau) and leq(rho, tau))
    return mu


def moebius(sigma: NoncrossingPartition, pi: NoncrossingPartition) -> int:
    """Moebius function of NC_n by the recursion mu(s,p) = -sum_{s<=t<p} mu(s,t)."""
    if not leq(sigma, pi):
        raise ValueError(f"{sigma} is not below {pi}")
    return _mobius_from(sigma)[pi]


def moebius_closed(pi: NoncrossingPartition) -> int:
    """Closed form of mu(0, pi): signed product of Catalan numbers over the blocks."""
    sign = (-1) ** (pi.n - len(pi))
    return sign * math.prod(catalan(len(b) - 1) for b in pi.blocks)


def kreweras(pi: NoncrossingPartition) -> NoncrossingPartition:
    """Kreweras complement.

    On the interleaved points 1,1',...,n,n' the primed points i' and j' (i<j)
    can be joined without crossing pi exactly when {i+1,...,j} is a union of
    blocks of pi.  For each unassigned i, sweep j to the right while counting
    how many blocks are only partly covered.
    """
    n = pi.n
    lab = pi.labels
    size = [len(b) for b in pi.blocks]
    blocks: list[list[int]] = []
    assigned = [False] * (n + 1)
    for i in range(1, n + 1):
        if assigned[i]:
            continue
        block = [i]
        seen = [0] * len(size)
        partial = 0
        for j in range(i + 1, n + 1):
            k = lab[j]
            seen[k] += 1
            partial += (seen[k] == 1) - (seen[k] == size[k])
            if partial == 0 and not assigned[j]:
                block.append(j)
                assigned[j] = True
        blocks.append(block)
    return NoncrossingPartition(n, tuple(tuple(b) for b in blocks))


# --- arrangements ------------------------------------------------------------

@dataclass(frozen=True, order=True)
class BinaryArrangement:
    """Noncrossing set of leaf-labelled binary trees; labels partition [n].

    Each member is ``(word, labels)`` with ``word`` a binary pseudocomposition
    and ``labels`` its leaf labels left to right.  Members sorted by first label.
    """

    n: int
    trees: tuple[tuple[SchroederTree, tuple[int, ...]], ...]

    def __post_init__(self):
        object.__setattr__(self, "trees", tuple(sorted(self.trees, key=lambda x: x[1][0])))
        for word, labels in self.trees:
            if not trees.is_binary(word) or trees.degree(word) != len(labels):
                raise ValueError(f"bad arrangement member {word}, {labels}")

    def __len__(self):
        return len(self.trees)

    def internal_count(self) -> int:
        return sum(trees.internal_count(w) for w, _ in self.trees)

    def to_json(self) -> list[dict]:
        return [{"tree": trees.format_tree(w), "labels": list(lab)} for w, lab in self.trees]


def tree_to_arrangement(t: SchroederTree) -> BinaryArrangement:
    """Delete the middle edges of a prime tree, then its root."""
    if not trees.is_prime(t) or t == LEAF:
        raise ValueError(f"{trees.format_tree(t)} is not a prime tree of positive weight")
    n = trees.weight(t)
    comps: list[tuple[SchroederTree, tuple[int, ...]]] = []
    leaf_no = 0

    def binary(sub: SchroederTree) -> tuple[SchroederTree, tuple[int, ...]]:
        nonlocal leaf_no
        if sub == LEAF:
            leaf_no += 1
            return LEAF, (leaf_no,)
        kids = trees.children(sub)
        left = binary(kids[0])
        for mid in kids[1:-1]:
            comps.append(binary(mid))
        right = binary(kids[-1])
        return (1,) + left[0] + right[0], left[1] + right[1]

    for kid in trees.children(t)[:-1]:
        comps.append(binary(kid))
    assert leaf_no == n
    return BinaryArrangement(n, tuple(comps))


def arrangement_to_tree(a: BinaryArrangement) -> SchroederTree:
    """Inverse of :func:`tree_to_arrangement`: re-attach the middle edges.

    Components nested in the gap between two consecutive leaves of a binary
    tree hang below the node separating those leaves; components that are
    maximal over [1, n] hang below a new root, whose last child is a leaf.
    """
    spans = [(min(lab), max(lab), word, lab) for word, lab in a.trees]

    def maximal_in(lo: int, hi: int):
        inside = sorted(s for s in spans if lo <= s[0] and s[1] <= hi)
        out, reach = [], lo - 1
        for s in inside:
            if s[0] > reach:
                out.append(s)
                reach = s[1]
        return out

    def rebuild(word: SchroederTree, labels: tuple[int, ...]) -> SchroederTree:
        if word == LEAF:
            return LEAF
        left, right = trees.children(word)
        nl = trees.degree(left)
        llab, rlab = labels[:nl], labels[nl:]
        middles = [rebuild(s[2], s[3]) for s in maximal_in(llab[-1] + 1, rlab[0] - 1)]
        return trees.node(rebuild(left, llab), *middles, rebuild(right, rlab))

    roots = [rebuild(s[2], s[3]) for s in maximal_in(1, a.n)]
    return trees.node(*roots, LEAF)


def arrangement_to_partition(a: BinaryArrangement) -> NoncrossingPartition:
    return NoncrossingPartition(a.n, tuple(lab for _, lab in a.trees))


def enumerate_arrangements(n: int) -> list[BinaryArrangement]:
    """Every arrangement, built block by block from a noncrossing partition."""
    out = []
    for pi in enumerate_nc(n):
        choices = [trees.enumerate_words("binary", len(b) - 1) for b in pi.blocks]
        for pick in product(*choices):
            out.append(BinaryArrangement(n, tuple(zip(pick, pi.blocks))))
    return out


def view_partition(t: SchroederTree) -> NoncrossingPartition:
    """Blocks = sets of sectors seen by a common internal vertex (any tree)."""
    return NoncrossingPartition(trees.weight(t), tuple(trees.sector_views(t).values()))


def sector_partition(t: SchroederTree) -> NoncrossingPartition:
    """:func:`view_partition` restricted to prime trees."""
    if not trees.is_prime(t):
        raise ValueError(f"{trees.format_tree(t)} is not prime")
    return view_partition(t)


def nc_to_rdt(pi: NoncrossingPartition) -> SchroederTree:
    """The right-directed tree whose sector blocks are the blocks of ``pi``."""
    lab = pi.labels

    def build(lo: int, hi: int) -> SchroederTree:
        if lo > hi:
            return LEAF
        block = pi.blocks[lab[lo]]
        if block[-1] > hi:
            raise ValueError(f"{pi} crosses at {lo}..{hi}")
        kids = [LEAF]
        for a, b in zip(block, block[1:]):
            kids.append(build(a + 1, b - 1))
        kids.append(build(block[-1] + 1, hi))
        return trees.node(*kids)

    if pi.n == 0:
        return LEAF
    return build(1, pi.n)


# --- nondecreasing parking functions ----------------------------------------

def ndpf_enumerate(n: int) -> list[tuple[int, ...]]:
    """Nondecreasing words with ``w[i] <= i`` (1-based), in lexicographic order."""
    out: list[tuple[int, ...]] = []

    def rec(prefix: list[int]):
        i = len(prefix) + 1
        if i > n:
            out.append(tuple(prefix))
            return
        lo = prefix[-1] if prefix else 1
        for v in range(lo, i + 1):
            prefix.append(v)
            rec(prefix)
            prefix.pop()

    rec([])
    return out


def ndpf_ev(word: Sequence[int]) -> tuple[int, ...]:
    """Packed evaluation: multiplicities of the letters that occur, in increasing order.

    >>> ndpf_ev((1, 1, 3))
    (2, 1)
    """
    counts: dict[int, int] = {}
    for x in word:
        counts[x] = counts.get(x, 0) + 1
    return tuple(counts[k] for k in sorted(counts))
