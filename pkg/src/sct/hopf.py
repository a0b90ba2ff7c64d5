"""Hopf algebra of Schroeder trees (plain and sector-decorated) and the
word Hopf algebra on segmented words, with the morphism between them.

A forest is a tuple of :class:`Decorated` trees of positive weight; the empty
tuple is the unit.  Tensors are dicts ``{(left, right): coefficient}``.

An admissible cut is an antichain of internal vertices.  Cutting at the root
sends the whole tree to the right factor and leaves the unit as trunk.  The
trunk keeps the letters of the sectors still seen by its vertices; every
pruned subtree carries the letters of its own sectors.
"""
from __future__ import annotations

import re
from functools import lru_cache
from itertools import product
from typing import Any, Callable, Mapping, NamedTuple, Sequence

from . import trees
from .poly import moment
from .trees import LEAF, SchroederTree


class Decorated(NamedTuple):
    tree: SchroederTree
    letters: tuple[str, ...] | None = None

    def weight(self) -> int:
        return sum(self.tree)

    def __str__(self) -> str:
        base = trees.format_tree(self.tree)
        return base if self.letters is None else f"{base}@[{','.join(self.letters)}]"


Forest = tuple[Decorated, ...]
Tensor = dict[tuple[Forest, Forest], int]

UNIT: Forest = ()


def decorate(t: SchroederTree, letters: Sequence[str] | None = None) -> Decorated:
    t = tuple(t)
    if letters is not None:
        letters = tuple(letters)
        if len(letters) != sum(t):
            raise ValueError(f"tree of weight {sum(t)} needs {sum(t)} letters, got {len(letters)}")
    return Decorated(t, letters)


def standard_letters(n: int) -> tuple[str, ...]:
    return tuple(f"a{i}" for i in range(1, n + 1))


_DECORATED = re.compile(r"^\s*(?P<tree>[^@]+?)\s*(@\s*\[(?P<letters>[^\]]*)\])?\s*$")


def parse_decorated(text: str) -> Decorated:
    """``"1,0,0@[a1]"``; a tree without ``@[...]`` is undecorated."""
    m = _DECORATED.match(text)
    if not m:
        raise ValueError(f"not a decorated tree literal: {text!r}")
    t = trees.parse_tree(m["tree"])
    if m["letters"] is None:
        return Decorated(t, None)
    letters = [x.strip() for x in m["letters"].split(",") if x.strip()]
    return decorate(t, letters)


def as_forest(x: Decorated | SchroederTree | Forest) -> Forest:
    if isinstance(x, Decorated):
        return () if x.weight() == 0 else (x,)
    if x and isinstance(x[0], int):
        return as_forest(Decorated(tuple(x), None))
    return tuple(d for d in x if d.weight() > 0)


def forest_weight(f: Forest) -> int:
    return sum(d.weight() for d in f)


def format_forest(f: Forest) -> str:
    return " ".join(str(d) for d in f) if f else "1"


# --- cuts ---------------------------------------------------------------------------

Cut = tuple[SchroederTree, tuple[str, ...] | None, Forest, bool]


def _split_letters(t: SchroederTree, letters):
    """Letters of each child subtree and the root's own sector letters."""
    kids = trees.children(t)
    if letters is None:
        return kids, [None] * len(kids), [None] * (len(kids) - 1)
    parts, own, pos = [], [], 0
    for i, kid in enumerate(kids):
        w = sum(kid)
        parts.append(letters[pos:pos + w])
        pos += w
        if i < len(kids) - 1:
            own.append(letters[pos])
            pos += 1
    return kids, parts, own


@lru_cache(maxsize=None)
def cuts(t: SchroederTree, letters: tuple[str, ...] | None = None) -> tuple[Cut, ...]:
    """All admissible cuts as ``(trunk, trunk_letters, pieces, rightmost_leaf_in_trunk)``."""
    if t == LEAF:
        return ((LEAF, () if letters is not None else None, (), True),)
    kids, parts, own = _split_letters(t, letters)
    options = [cuts(k, p) for k, p in zip(kids, parts)]
    out: list[Cut] = []
    for pick in product(*options):
        word = [t[0]]
        lets: list[str] | None = [] if letters is not None else None
        pieces: list[Decorated] = []
        for i, (kw, kl, kp, _) in enumerate(pick):
            word.extend(kw)
            if lets is not None:
                lets.extend(kl)
                if i < len(own):
                    lets.append(own[i])
            pieces.extend(kp)
        out.append((tuple(word), tuple(lets) if lets is not None else None, tuple(pieces), pick[-1][3]))
    out.append((LEAF, () if letters is not None else None, (Decorated(t, letters),), False))
    return tuple(out)


def _tree_tensor(d: Decorated, side: str = "full") -> Tensor:
    out: Tensor = {}
    for word, lets, pieces, intact in cuts(d.tree, d.letters):
        if side == "prec" and not intact or side == "succ" and intact:
            continue
        key = (as_forest(Decorated(word, lets)), pieces)
        out[key] = out.get(key, 0) + 1
    return out


def tensor_mul(a: Mapping, b: Mapping) -> dict:
    """Componentwise concatenation product of tensors of any arity."""
    out: dict = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            key = tuple(x + y for x, y in zip(ka, kb))
            v = out.get(key, 0) + ca * cb
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return out


def coproduct(f: Decorated | Forest) -> Tensor:
    """``Delta(F) = sum_c R^c(F) (x) P^c(F)``, multiplicative on forests."""
    f = as_forest(f)
    out: Tensor = {(UNIT, UNIT): 1}
    for d in f:
        out = tensor_mul(out, _tree_tensor(d))
    return out


def delta_half(f: Decorated | Forest, side: str, reduced: bool = False, anchor: str = "last") -> Tensor:
    """Half coproducts on the augmentation ideal.

    On a tree, ``prec`` keeps the cuts whose trunk still holds the rightmost
    leaf (the empty cut included) and ``succ`` keeps the others.  On a forest
    one tree decides the split and the others get the full coproduct; by
    default that tree is the last one, which is the choice making the
    codendriform relations hold (``anchor="first"`` is kept for comparison).
    With ``reduced=True`` the terms ``F (x) 1`` and ``1 (x) F`` are removed
    respectively.
    """
    if side not in ("prec", "succ"):
        raise ValueError(f"unknown side {side!r}")
    if anchor not in ("first", "last"):
        raise ValueError(f"unknown anchor {anchor!r}")
    f = as_forest(f)
    if not f:
        raise ValueError("half coproducts are defined on the augmentation ideal only")
    if anchor == "first":
        out = tensor_mul(_tree_tensor(f[0], side), coproduct(f[1:]))
    else:
        out = tensor_mul(coproduct(f[:-1]), _tree_tensor(f[-1], side))
    if reduced:
        out.pop((f, UNIT) if side == "prec" else (UNIT, f), None)
    return out


def reduced_coproduct(f: Decorated | Forest) -> Tensor:
    f = as_forest(f)
    out = coproduct(f)
    out.pop((f, UNIT), None)
    out.pop((UNIT, f), None)
    return out


def apply_left(op: Callable[[Forest], Mapping], t: Mapping) -> dict:
    """``(op (x) I)`` on a tensor whose keys are tuples of forests."""
    out: dict = {}
    for key, c in t.items():
        for left, v in op(key[0]).items():
            k = tuple(left) + tuple(key[1:])
            out[k] = out.get(k, 0) + c * v
    return {k: v for k, v in out.items() if v}


def apply_right(op: Callable[[Forest], Mapping], t: Mapping) -> dict:
    """``(I (x) op)`` on the last factor."""
    out: dict = {}
    for key, c in t.items():
        for right, v in op(key[-1]).items():
            k = tuple(key[:-1]) + tuple(right)
            out[k] = out.get(k, 0) + c * v
    return {k: v for k, v in out.items() if v}


def _safe(op):
    """Extend an augmentation-ideal operator by zero on the unit."""
    return lambda f: op(f) if f else {}


def codendriform_axioms(f: Forest, anchor: str = "last") -> tuple[bool, bool, bool]:
    prec = _safe(lambda x: delta_half(x, "prec", reduced=True, anchor=anchor))
    succ = _safe(lambda x: delta_half(x, "succ", reduced=True, anchor=anchor))
    bar = _safe(reduced_coproduct)
    return _axioms(prec, succ, bar, f)


def _axioms(prec, succ, bar, f) -> tuple[bool, bool, bool]:
    p, s = prec(f), succ(f)
    return (
        apply_left(prec, p) == apply_right(bar, p),
        apply_left(succ, p) == apply_right(prec, s),
        apply_left(bar, s) == apply_right(succ, s),
    )


def is_coassociative_at(f: Forest) -> bool:
    d = coproduct(f)
    return apply_left(coproduct, d) == apply_right(coproduct, d)


def forests_up_to(n: int, letters: bool = False) -> list[Forest]:
    """All undecorated forests of total weight 1..n (decorated with a1.. if asked)."""
    by_weight: list[list[Forest]] = [[UNIT]]
    for w in range(1, n + 1):
        layer: list[Forest] = []
        for first in range(1, w + 1):
            for t in trees.enumerate_words("all", first):
                for rest in by_weight[w - first]:
                    layer.append((Decorated(t, None),) + rest)
        by_weight.append(layer)
    out = [f for layer in by_weight[1:] for f in layer]
    if letters:
        out = [_relabel(f) for f in out]
    return out


def _relabel(f: Forest) -> Forest:
    out, pos = [], 0
    for d in f:
        w = d.weight()
        out.append(Decorated(d.tree, tuple(f"a{i}" for i in range(pos + 1, pos + w + 1))))
        pos += w
    return tuple(out)


# --- linear forms ---------------------------------------------------------------------

class LinearForm:
    """Lazily evaluated, memoized linear form on forests.

    Values live in any commutative ring that accepts ``int`` in ``+`` and
    ``*`` (plain ints, ``Fraction``, :class:`MomentPolynomial`).
    """

    def __init__(self, fn: Callable[[Forest], Any], name: str = ""):
        self._fn = fn
        self._cache: dict[Forest, Any] = {}
        self.name = name

    def __call__(self, f: Decorated | Forest):
        f = as_forest(f)
        hit = self._cache.get(f)
        if hit is None:
            hit = self._cache[f] = self._fn(f)
        return hit

    def __repr__(self):
        return f"LinearForm({self.name or '?'})"


def character(tree_value: Callable[[Decorated], Any], name: str = "") -> LinearForm:
    """Multiplicative extension of a map on trees (unit -> 1)."""
    def fn(f: Forest):
        out: Any = 1
        for d in f:
            out = out * tree_value(d)
        return out
    return LinearForm(fn, name)


def infinitesimal(tree_value: Callable[[Decorated], Any], name: str = "") -> LinearForm:
    """Linear form vanishing on the unit and on products of two or more trees."""
    return LinearForm(lambda f: tree_value(f[0]) if len(f) == 1 else 0, name)


def counit() -> LinearForm:
    return LinearForm(lambda f: 1 if not f else 0, "epsilon")


def series_character(coefficients: Mapping[SchroederTree, Any]) -> LinearForm:
    """Character whose value on an undecorated tree is its coefficient in a tree series."""
    return character(lambda d: coefficients.get(d.tree, 0), "series")


def convolve(f: LinearForm, g: LinearForm, mode: str = "full") -> LinearForm:
    """``f * g``, ``f < g`` or ``f > g`` (halves use the unreduced split on the augmentation ideal)."""
    if mode not in ("full", "prec", "succ"):
        raise ValueError(f"unknown mode {mode!r}")

    def fn(F: Forest):
        if mode == "full":
            terms = coproduct(F)
        elif not F:
            raise ValueError("half convolutions are defined on the augmentation ideal only")
        else:
            terms = delta_half(F, mode)
        out: Any = 0
        for (left, right), c in terms.items():
            a = f(left)
            if a == 0:
                continue
            b = g(right)
            if b == 0:
                continue
            out = out + c * a * b
        return out

    return LinearForm(fn, f"({f.name} {mode} {g.name})")


# --- character equation ------------------------------------------------------------------

def _nonempty_prec_cuts(d: Decorated):
    for word, lets, pieces, intact in cuts(d.tree, d.letters):
        if intact and pieces:
            yield Decorated(word, lets), pieces


def solve_character(kappa: LinearForm, N: int | None = None) -> LinearForm:
    """The character Phi with ``Phi = eps + kappa < Phi``.

    On a tree the equation reads ``Phi(T) = kappa(T) + sum kappa(trunk) Phi(pieces)``
    over nonempty cuts keeping the rightmost leaf; every term on the right has
    smaller weight, so the recursion is a graded fixpoint.
    """
    def tree_value(d: Decorated):
        if N is not None and d.weight() > N:
            raise ValueError(f"weight {d.weight()} exceeds bound {N}")
        out = kappa((d,))
        for trunk, pieces in _nonempty_prec_cuts(d):
            k = kappa((trunk,))
            if k == 0:
                continue
            out = out + k * phi(pieces)
        return out

    phi = character(tree_value, "Phi")
    return phi


def extract_cumulant(phi: LinearForm, N: int | None = None) -> LinearForm:
    """Inverse of :func:`solve_character`, by triangular solve on trees."""
    def tree_value(d: Decorated):
        if N is not None and d.weight() > N:
            raise ValueError(f"weight {d.weight()} exceeds bound {N}")
        out = phi((d,))
        for trunk, pieces in _nonempty_prec_cuts(d):
            k = kappa((trunk,))
            if k == 0:
                continue
            out = out - k * phi(pieces)
        return out

    kappa = infinitesimal(tree_value, "kappa")
    return kappa


def moment_character(moment_of: Callable[[tuple[str, ...]], Any] = moment) -> LinearForm:
    """``Phi_phi``: decorated corollas go to ``phi(w)``, other trees to 0; multiplicative."""
    def tree_value(d: Decorated):
        if d.letters is None:
            raise ValueError("moment character needs decorated trees")
        return moment_of(d.letters) if trees.is_corolla(d.tree) else 0
    return character(tree_value, "Phi_phi")


def prime_tree_cumulant(d: Decorated, moment_of: Callable[[tuple[str, ...]], Any] = moment):
    """Signed product of moments of viewed letters for a prime tree; 0 otherwise."""
    if not trees.is_prime(d.tree):
        return 0
    letters = d.letters
    out: Any = (-1) ** (trees.internal_count(d.tree) - 1)
    for sectors in trees.sector_views(d.tree).values():
        out = out * moment_of(tuple(letters[s - 1] for s in sectors))
    return out


# --- word Hopf algebra ---------------------------------------------------------------------

Word = tuple[str, ...]
Segmented = tuple[Word, ...]


def parse_segmented(text: str) -> Segmented:
    """``"a1.a2|a3"``: dots concatenate letters, bars separate segments."""
    text = text.strip()
    if not text:
        return ()
    out = []
    for seg in text.split("|"):
        letters = tuple(x.strip() for x in seg.split("."))
        if not all(letters):
            raise ValueError(f"empty letter in segmented word {text!r}")
        out.append(letters)
    return tuple(out)


def format_segmented(s: Segmented) -> str:
    return "|".join(".".join(w) for w in s) if s else "1"


def _as_segmented(w) -> Segmented:
    if not w:
        return ()
    if isinstance(w[0], str):
        return (tuple(w),)
    return tuple(tuple(x) for x in w if x)


def _word_coproduct(w: Word, prec_only: bool) -> dict[tuple[Segmented, Segmented], int]:
    n = len(w)
    out: dict[tuple[Segmented, Segmented], int] = {}
    for mask in range(1 << n):
        if prec_only and not (mask >> (n - 1)) & 1:
            continue
        kept = tuple(w[i] for i in range(n) if (mask >> i) & 1)
        comps: list[Word] = []
        run: list[str] = []
        for i in range(n):
            if (mask >> i) & 1:
                if run:
                    comps.append(tuple(run))
                    run = []
            else:
                run.append(w[i])
        if run:
            comps.append(tuple(run))
        key = ((kept,) if kept else (), tuple(comps))
        out[key] = out.get(key, 0) + 1
    return out


def efp_coproduct(w, mode: str = "full", anchor: str = "last") -> dict[tuple[Segmented, Segmented], int]:
    """Coproduct on segmented words: subsets S of positions, ``a_S (x) (components of the rest)``.

    ``prec`` keeps the subsets containing the last position of the anchor
    word (the last segment by default, as for forests); ``succ`` the others.
    """
    s = _as_segmented(w)
    if mode not in ("full", "prec", "succ"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode != "full" and not s:
        raise ValueError("half coproducts are defined on nonempty words only")
    split_at = 0 if anchor == "first" else len(s) - 1
    out: dict = {((), ()): 1}
    for i, word in enumerate(s):
        part = _word_coproduct(word, False)
        if mode != "full" and i == split_at:
            prec = _word_coproduct(word, True)
            part = prec if mode == "prec" else {k: v for k, v in part.items() if k not in prec}
        out = tensor_mul(out, part)
    return out


def efp_codendriform_axioms(s: Segmented, anchor: str = "last") -> tuple[bool, bool, bool]:
    def half(side):
        def op(x):
            if not x:
                return {}
            out = efp_coproduct(x, side, anchor)
            out.pop((x, ()) if side == "prec" else ((), x), None)
            return out
        return op

    def bar(x):
        if not x:
            return {}
        out = efp_coproduct(x)
        out.pop((x, ()), None)
        out.pop(((), x), None)
        return out

    return _axioms(half("prec"), half("succ"), bar, _as_segmented(s))


def efp_cumulant(moment_of: Callable[[Word], Any] = moment) -> Callable[[Word], Any]:
    """``k(w) = m_w - sum_{n in S, S proper} k(a_S) prod m(components)``."""
    @lru_cache(maxsize=None)
    def k(w: Word):
        w = tuple(w)
        out = moment_of(w)
        for (left, comps), c in _word_coproduct(w, True).items():
            if not comps:
                continue
            term: Any = c * k(left[0])
            for comp in comps:
                term = term * moment_of(comp)
            out = out - term
        return out
    return k


def iota(w) -> dict[Forest, int]:
    """Each word goes to the sum of all trees with that many sectors, decorated by it."""
    s = _as_segmented(w)
    out: dict[Forest, int] = {UNIT: 1}
    for word in s:
        layer = {(Decorated(t, word),): 1 for t in trees.enumerate_words("all", len(word))}
        nxt: dict[Forest, int] = {}
        for f, c in out.items():
            for g, v in layer.items():
                nxt[f + g] = nxt.get(f + g, 0) + c * v
        out = nxt
    return out


def iota_tensor(t: Mapping[tuple[Segmented, Segmented], int]) -> Tensor:
    out: Tensor = {}
    for (a, b), c in t.items():
        for fa, ca in iota(a).items():
            for fb, cb in iota(b).items():
                out[(fa, fb)] = out.get((fa, fb), 0) + c * ca * cb
    return {k: v for k, v in out.items() if v}


def coproduct_of_sum(x: Mapping[Forest, int], side: str = "full") -> Tensor:
    out: Tensor = {}
    for f, c in x.items():
        part = coproduct(f) if side == "full" else delta_half(f, side)
        for k, v in part.items():
            out[k] = out.get(k, 0) + c * v
    return {k: v for k, v in out.items() if v}


def tensor_to_json(t: Mapping[tuple[Forest, Forest], int]) -> list[dict]:
    return [
        {"left": format_forest(a), "right": format_forest(b), "coef": c}
        for (a, b), c in sorted(t.items(), key=lambda kv: (forest_weight(kv[0][0]), str(kv[0])))
    ]
