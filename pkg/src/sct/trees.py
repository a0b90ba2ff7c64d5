"""Reduced plane (Schroeder) trees.

A tree is stored as its Polish pseudocomposition word: a preorder listing
that emits ``arity - 1`` for every internal node and ``0`` for every leaf.
Words are plain tuples of ints, so they hash, compare lexicographically and
concatenate for free; grafting a list of trees into the leaves of another is
a single pass over the word.

>>> parse_tree("(* (* *) *)")
(2, 0, 1, 0, 0, 0)
>>> weight((2, 0, 1, 0, 0, 0)), degree((2, 0, 1, 0, 0, 0))
(3, 4)
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

SchroederTree = tuple[int, ...]

LEAF: SchroederTree = (0,)

KINDS = ("all", "prime", "left_directed", "right_directed", "binary")


class TreeError(ValueError):
    """Malformed tree literal or tree argument."""


# --- words ------------------------------------------------------------------

def is_valid_word(word: Sequence[int]) -> bool:
    """Lukasiewicz condition: starting from one open slot, a node of arity k+1
    trades one slot for k+1 and a leaf fills one; the count reaches 0 exactly
    at the final symbol."""
    if not word:
        return False
    pending = 1
    for i, s in enumerate(word):
        if s < 0 or pending == 0:
            return False
        pending += s if s else -1
        if i == len(word) - 1:
            return pending == 0
    return False


def check_word(word: Iterable[int]) -> SchroederTree:
    word = tuple(int(s) for s in word)
    if not word:
        raise TreeError("empty tree word")
    pending = 1
    for i, s in enumerate(word):
        if s < 0:
            raise TreeError(f"negative symbol {s} at position {i}")
        if pending == 0:
            raise TreeError(f"word exhausted before position {i}: {word}")
        pending += s if s else -1
    if pending != 0:
        raise TreeError(f"word ends with {pending} unfilled slot(s): {word}")
    return word


def subtree_end(word: Sequence[int], start: int) -> int:
    """Index one past the subtree that starts at ``start``."""
    pending = 1
    i = start
    while pending:
        pending += word[i] if word[i] else -1
        i += 1
    return i


@lru_cache(maxsize=None)
def children(t: SchroederTree) -> tuple[SchroederTree, ...]:
    """Subtrees of the root, left to right (empty for the leaf)."""
    if t[0] == 0:
        return ()
    out = []
    i = 1
    while i < len(t):
        j = subtree_end(t, i)
        out.append(t[i:j])
        i = j
    return tuple(out)


def node(*subtrees: SchroederTree) -> SchroederTree:
    if len(subtrees) < 2:
        raise TreeError("internal nodes need at least two children")
    word = [len(subtrees) - 1]
    for s in subtrees:
        word.extend(s)
    return tuple(word)


def weight(t: SchroederTree) -> int:
    return sum(t)


def degree(t: SchroederTree) -> int:
    return weight(t) + 1


def internal_count(t: SchroederTree) -> int:
    return sum(1 for s in t if s)


# --- parsing / formatting ---------------------------------------------------

_TOKEN = re.compile(r"\*|\(|\)")


def parse_tree(text: str) -> SchroederTree:
    """Parse a pseudocomposition ``"2,0,0,0"`` or a nested form ``"(* * *)"``."""
    text = text.strip()
    if not text:
        raise TreeError("empty tree literal")
    if text[0] in "*(":
        return _parse_nested(text)
    try:
        word = [int(part) for part in text.split(",")]
    except ValueError:
        raise TreeError(f"not a tree literal: {text!r}") from None
    return check_word(word)


def _parse_nested(text: str) -> SchroederTree:
    rest = _TOKEN.sub("", text)
    if rest.strip():
        raise TreeError(f"unexpected characters in nested tree: {rest.strip()!r}")
    tokens = _TOKEN.findall(text)
    pos = 0

    def form() -> SchroederTree:
        nonlocal pos
        if pos >= len(tokens):
            raise TreeError("unexpected end of nested tree")
        tok = tokens[pos]
        pos += 1
        if tok == "*":
            return LEAF
        if tok == ")":
            raise TreeError("unbalanced ')'")
        kids = []
        while pos < len(tokens) and tokens[pos] != ")":
            kids.append(form())
        if pos >= len(tokens):
            raise TreeError("missing ')'")
        pos += 1
        if len(kids) < 2:
            raise TreeError("arity-1 node in nested tree")
        return node(*kids)

    t = form()
    if pos != len(tokens):
        raise TreeError("trailing tokens after nested tree")
    return t


def format_tree(t: SchroederTree) -> str:
    return ",".join(map(str, t))


def format_nested(t: SchroederTree) -> str:
    if t[0] == 0:
        return "*"
    return "(" + " ".join(format_nested(c) for c in children(t)) + ")"


# --- classification ---------------------------------------------------------

@dataclass(frozen=True)
class TreeClass:
    is_prime: bool
    is_left_directed: bool
    is_right_directed: bool
    is_binary: bool
    is_corolla: bool


def is_prime(t: SchroederTree) -> bool:
    return t[0] == 0 or children(t)[-1] == LEAF


def _all_nodes(t: SchroederTree, test) -> bool:
    if t[0] == 0:
        return True
    kids = children(t)
    return test(kids) and all(_all_nodes(c, test) for c in kids)


def is_left_directed(t: SchroederTree) -> bool:
    return _all_nodes(t, lambda kids: kids[-1] == LEAF)


def is_right_directed(t: SchroederTree) -> bool:
    return _all_nodes(t, lambda kids: kids[0] == LEAF)


def is_binary(t: SchroederTree) -> bool:
    return all(s in (0, 1) for s in t)


def is_corolla(t: SchroederTree) -> bool:
    return internal_count(t) == 1


def classify(t: SchroederTree) -> TreeClass:
    return TreeClass(
        is_prime=is_prime(t),
        is_left_directed=is_left_directed(t),
        is_right_directed=is_right_directed(t),
        is_binary=is_binary(t),
        is_corolla=is_corolla(t),
    )


# --- enumeration ------------------------------------------------------------

def _weak_compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _weak_compositions(total - first, parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _forests(kind: str, parts: int, total: int) -> tuple[SchroederTree, ...]:
    """Concatenated words of ``parts`` consecutive subtrees of total weight ``total``."""
    if parts == 1:
        return _trees(kind, total)
    out = []
    for w in range(total + 1):
        heads = _trees(kind, w)
        if not heads:
            continue
        tails = _forests(kind, parts - 1, total - w)
        out.extend(h + r for h in heads for r in tails)
    return tuple(out)


@lru_cache(maxsize=None)
def _trees(kind: str, n: int) -> tuple[SchroederTree, ...]:
    if n == 0:
        return (LEAF,)
    out: list[SchroederTree] = []
    if kind == "binary":
        for w in range(n):
            out.extend((1,) + a + b for a in _trees("binary", w) for b in _trees("binary", n - 1 - w))
        return tuple(out)
    sub = "all" if kind == "prime" else kind
    for k in range(1, n + 1):  # root arity k + 1
        rest = n - k
        if kind in ("all",):
            out.extend((k,) + f for f in _forests(sub, k + 1, rest))
        elif kind in ("prime", "left_directed"):
            out.extend((k,) + f + LEAF for f in _forests(sub, k, rest))
        elif kind == "right_directed":
            out.extend((k, 0) + f for f in _forests(sub, k, rest))
        else:
            raise ValueError(f"unknown tree kind {kind!r}")
    return tuple(out)


@lru_cache(maxsize=None)
def enumerate_words(kind: str, n: int) -> tuple[SchroederTree, ...]:
    """All trees of weight ``n`` in the class, sorted lexicographically."""
    if kind not in KINDS:
        raise ValueError(f"unknown tree kind {kind!r}; expected one of {KINDS}")
    if n < 0:
        raise ValueError("weight must be nonnegative")
    return tuple(sorted(_trees(kind, n)))


def enumerate_trees(kind: str, n: int) -> list[SchroederTree]:
    return list(enumerate_words(kind, n))


def trees_up_to(kind: str, n: int) -> list[SchroederTree]:
    return [t for w in range(n + 1) for t in enumerate_words(kind, w)]


# --- construction -----------------------------------------------------------

def corolla(n: int) -> SchroederTree:
    if n < 0:
        raise ValueError("corolla weight must be nonnegative")
    if n == 0:
        return LEAF
    return (n,) + (0,) * (n + 1)


def graft(t0: SchroederTree, args: Sequence[SchroederTree]) -> SchroederTree:
    """Operad composition ``t0 o (t1, ..., tn)``: replace the leaves of t0 in order."""
    if len(args) != degree(t0):
        raise TreeError(f"graft needs {degree(t0)} arguments, got {len(args)}")
    it = iter(args)
    out: list[int] = []
    for s in t0:
        if s:
            out.append(s)
        else:
            out.extend(next(it))
    return tuple(out)


# --- sectors ----------------------------------------------------------------

def sector_views(t: SchroederTree) -> dict[int, tuple[int, ...]]:
    """Sectors (gaps between consecutive leaves, numbered from 1) seen by each node.

    Internal nodes are keyed by their position in the word. A node sees the
    sector between two leaves when it is their lowest common ancestor.
    """
    views: dict[int, list[int]] = {}
    leaves = 0

    def walk(pos: int) -> int:
        nonlocal leaves
        arity = t[pos] + 1
        if arity == 1:
            leaves += 1
            return pos + 1
        seen = views.setdefault(pos, [])
        nxt = pos + 1
        for j in range(arity):
            nxt = walk(nxt)
            if j < arity - 1:
                seen.append(leaves)
        return nxt

    walk(0)
    return {pos: tuple(s) for pos, s in views.items()}


def sector_blocks(t: SchroederTree) -> list[tuple[int, ...]]:
    return sorted(sector_views(t).values())
