"""The group of the Schroeder operad.

A series is a finite map from trees (pseudocomposition words) to exact
rationals, truncated at an explicit weight.  Three substitution products
share one engine, which replaces leaves by a series:

* ``p o q``: every leaf of every internal term of p receives q;
* ``p -| q``: every leaf except the rightmost receives q;
* ``p |- q``: only the rightmost leaf receives q.

Because the rightmost leaf of a tree is the last letter of its word,
``a |- b`` on single trees is just ``a[:-1] + b``.

>>> print(kappa_series(2))
S[0] + S[1,0,0] + S[2,0,0,0] - S[1,1,0,0,0]
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Union

from . import nsym, trees
from .fmt import format_linear, index_key, scalar_json
from .trees import LEAF, SchroederTree

Scalar = Union[int, Fraction]
Terms = dict[SchroederTree, Scalar]


@dataclass(frozen=True)
class TreeSeries:
    """Weight-truncated linear combination of Schroeder trees."""

    N: int
    terms: Mapping[SchroederTree, Scalar] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(
            self, "terms", {tuple(t): c for t, c in self.terms.items() if c and sum(t) <= self.N}
        )

    def coefficient(self, t: SchroederTree) -> Scalar:
        return self.terms.get(tuple(t), 0)

    def is_group_element(self) -> bool:
        return self.terms.get(LEAF, 0) == 1

    def homogeneous(self, n: int) -> "TreeSeries":
        return TreeSeries(self.N, {t: c for t, c in self.terms.items() if sum(t) == n})

    def truncate(self, n: int) -> "TreeSeries":
        return TreeSeries(min(n, self.N), self.terms)

    def __add__(self, other: "TreeSeries") -> "TreeSeries":
        out = dict(self.terms)
        _accumulate(out, other.terms)
        return TreeSeries(min(self.N, other.N), out)

    def __sub__(self, other: "TreeSeries") -> "TreeSeries":
        out = dict(self.terms)
        _accumulate(out, other.terms, -1)
        return TreeSeries(min(self.N, other.N), out)

    def __mul__(self, c: Scalar) -> "TreeSeries":
        return TreeSeries(self.N, {t: v * c for t, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        """Coefficientwise equality up to the smaller truncation weight."""
        if not isinstance(other, TreeSeries):
            return NotImplemented
        n = min(self.N, other.N)
        return self.truncate(n).terms == other.truncate(n).terms

    def __hash__(self):
        return hash((self.N, frozenset(self.terms.items())))

    def __str__(self) -> str:
        return format_linear(
            (f"S[{trees.format_tree(t)}]", self.terms[t]) for t in sorted(self.terms, key=index_key)
        )

    def __repr__(self) -> str:
        return f"TreeSeries(N={self.N}, {self})"

    def to_json(self) -> dict:
        return {
            "weight": self.N,
            "terms": [
                {"tree": list(t), **scalar_json(self.terms[t])} for t in sorted(self.terms, key=index_key)
            ],
        }


def _accumulate(acc: Terms, terms: Mapping[SchroederTree, Scalar], scale: Scalar = 1) -> None:
    for t, c in terms.items():
        v = acc.get(t, 0) + c * scale
        if v:
            acc[t] = v
        else:
            acc.pop(t, None)


def _require_group(*series: TreeSeries) -> None:
    for s in series:
        if not s.is_group_element():
            raise ValueError(f"series is not a group element (leaf coefficient {s.coefficient(LEAF)})")


# --- named series -----------------------------------------------------------------

def leaf_series(N: int) -> TreeSeries:
    return TreeSeries(N, {LEAF: 1})


def corolla_series(N: int) -> TreeSeries:
    """``f_c``: every corolla with coefficient 1."""
    return TreeSeries(N, {trees.corolla(n): 1 for n in range(N + 1)})


def g_c(N: int) -> TreeSeries:
    """Compositional inverse of ``f_c``: every tree, signed by its internal-node count."""
    return TreeSeries(N, {t: (-1) ** trees.internal_count(t) for t in trees.trees_up_to("all", N)})


def kappa_series(N: int) -> TreeSeries:
    """Signed sum of prime trees, ``(-1)^(i(t)-1) t``, plus the leaf."""
    out: Terms = {LEAF: 1}
    for n in range(1, N + 1):
        for t in trees.enumerate_words("prime", n):
            out[t] = (-1) ** (trees.internal_count(t) - 1)
    return TreeSeries(N, out)


def ldst_series(N: int) -> TreeSeries:
    """Characteristic series of left-directed trees."""
    return TreeSeries(N, {t: 1 for t in trees.trees_up_to("left_directed", N)})


NAMED = {"fc": corolla_series, "gc": g_c, "kappa": kappa_series, "ldst": ldst_series}


def random_group_element(N: int, rng: random.Random, coefs=range(-2, 3), density: float = 1.0) -> TreeSeries:
    """Leaf plus random coefficients on (a random subset of) trees of weight 1..N."""
    out: Terms = {LEAF: 1}
    for t in trees.trees_up_to("all", N):
        if t != LEAF and rng.random() < density:
            out[t] = rng.choice(coefs)
    return TreeSeries(N, out)


# --- substitution engine ----------------------------------------------------------

_MODES = ("compose", "dashv", "vdash")

Graded = list[list[tuple[SchroederTree, Scalar]]]  # index = weight


def _graded(terms: Mapping[SchroederTree, Scalar], N: int) -> Graded:
    out: Graded = [[] for _ in range(N + 1)]
    for t, c in terms.items():
        if sum(t) <= N:
            out[sum(t)].append((t, c))
    return out


def _substitute(p: TreeSeries, q: TreeSeries, mode: str, N: int) -> TreeSeries:
    """Sum over internal terms of p with leaves replaced per ``mode``; leaf term excluded."""
    if mode not in _MODES:
        raise ValueError(f"unknown mode {mode!r}")
    qg = _graded(q.terms, N)
    fixed_leaf: Graded = [[(LEAF, 1)]]
    memo: dict[tuple[SchroederTree, bool, int], Graded] = {}

    def expand(t: SchroederTree, rightmost: bool, budget: int) -> Graded:
        key = (t, rightmost, budget)
        hit = memo.get(key)
        if hit is not None:
            return hit
        if t == LEAF:
            substituted = (mode == "compose") or (mode == "dashv") != rightmost
            res = qg[: budget + 1] if substituted else fixed_leaf
        else:
            res = [[((t[0],), 1)]]
            kids = trees.children(t)
            for i, kid in enumerate(kids):
                sub = expand(kid, rightmost and i == len(kids) - 1, budget)
                res = _convolve(res, sub, budget)
        memo[key] = res
        return res

    out: Terms = {}
    for t, c in p.terms.items():
        w = sum(t)
        if w == 0 or w > N:
            continue
        for layer in expand(t, True, N - w):
            for word, v in layer:
                out[word] = out.get(word, 0) + c * v
    return TreeSeries(N, out)


def _convolve(a: Graded, b: Graded, budget: int) -> Graded:
    out: Graded = [[] for _ in range(min(budget, len(a) + len(b) - 2) + 1)]
    for wa, la in enumerate(a):
        if not la:
            continue
        for wb, lb in enumerate(b):
            if wa + wb > budget:
                break
            if lb:
                out[wa + wb].extend((x + y, cx * cy) for x, cx in la for y, cy in lb)
    while len(out) > 1 and not out[-1]:
        out.pop()
    return out


def _n(N, *series: TreeSeries) -> int:
    return min(s.N for s in series) if N is None else N


def compose(p: TreeSeries, q: TreeSeries, N: int | None = None) -> TreeSeries:
    """Operad-group composition ``p o q``."""
    _require_group(p, q)
    N = _n(N, p, q)
    return q.truncate(N) + _substitute(p, q, "compose", N)


def dashv(f: TreeSeries, g: TreeSeries, N: int | None = None) -> TreeSeries:
    """``f -| g = leaf + sum f_t(g, ..., g, leaf)``."""
    _require_group(f, g)
    N = _n(N, f, g)
    return leaf_series(N) + _substitute(f, g, "dashv", N)


def vdash(f: TreeSeries, g: TreeSeries, N: int | None = None) -> TreeSeries:
    """``f |- g``: graft g on the rightmost leaf only (``a |- b = a[:-1] + b``)."""
    _require_group(f, g)
    N = _n(N, f, g)
    return TreeSeries(N, _vdash_terms(f.terms, g.terms, N))


def _vdash_terms(a: Mapping[SchroederTree, Scalar], b: Mapping[SchroederTree, Scalar], N: int) -> Terms:
    out: Terms = {}
    bg = _graded(b, N)
    for x, cx in a.items():
        wx = sum(x)
        head = x[:-1]
        for layer in bg[: N - wx + 1]:
            for y, cy in layer:
                key = head + y
                out[key] = out.get(key, 0) + cx * cy
    return {t: c for t, c in out.items() if c}


# --- inverses and fixpoints -----------------------------------------------------------

def comp_inverse(p: TreeSeries, N: int | None = None) -> TreeSeries:
    """``p^{o -1}`` by graded recursion: ``x_n = -[sum_{t internal} p_t(x, ..., x)]_n``."""
    _require_group(p)
    N = _n(N, p)
    x: Terms = {LEAF: 1}
    for n in range(1, N + 1):
        layer = _substitute(p, TreeSeries(n - 1, x), "compose", n).homogeneous(n)
        _accumulate(x, layer.terms, -1)
    return TreeSeries(N, x)


def vdash_inverse(x: TreeSeries, N: int | None = None) -> TreeSeries:
    """The ``u`` with ``u |- x = leaf``: ``u_n = -sum_{m>=1} u_{n-m} |- x_m``."""
    _require_group(x)
    N = _n(N, x)
    xg = _graded(x.terms, N)
    u: list[Terms] = [{LEAF: 1}]
    for n in range(1, N + 1):
        acc: Terms = {}
        for m in range(1, n + 1):
            _accumulate(acc, _vdash_terms(u[n - m], dict(xg[m]), N), -1)
        u.append(acc)
    out: Terms = {}
    for layer in u:
        out.update(layer)
    return TreeSeries(N, out)


def dashv_fixpoint(p: TreeSeries, N: int | None = None) -> TreeSeries:
    """Solve ``h = p -| h`` one weight at a time."""
    _require_group(p)
    N = _n(N, p)
    h: Terms = {LEAF: 1}
    for n in range(1, N + 1):
        layer = _substitute(p, TreeSeries(n - 1, h), "dashv", n).homogeneous(n)
        _accumulate(h, layer.terms)
    return TreeSeries(N, h)


def r_transform(f: TreeSeries, N: int | None = None) -> TreeSeries:
    """Operadic R-transform ``f -| f^{o -1}``, the unique k with ``f = k -| f``."""
    N = _n(N, f)
    return dashv(f, comp_inverse(f, N), N)


# --- projection ----------------------------------------------------------------------

def project_to_nsym(p: TreeSeries) -> nsym.NSymElement:
    """``S_0 -> 1``: each tree maps to S^I with I its word without zeros."""
    out: dict[tuple[int, ...], Scalar] = {}
    for t, c in p.terms.items():
        idx = tuple(s for s in t if s)
        out[idx] = out.get(idx, 0) + c
    return nsym.NSymElement(out)


def series_by_name(name: str, N: int) -> TreeSeries:
    try:
        builder: Callable[[int], TreeSeries] = NAMED[name]
    except KeyError:
        raise ValueError(f"unknown series {name!r}; expected one of {sorted(NAMED)}") from None
    return builder(N)
