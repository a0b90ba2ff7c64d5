"""Free cumulants from prime Schroeder trees, in three readings.

* ``operator``: the nested expression, each internal vertex contributing
  ``phi(child_1 s_1 child_2 ... s_{k-1} child_k)`` with ``s_i`` the letters
  of the sectors it sees;
* ``bimodule``: the same, with phi-factors at either end of a phi argument
  pulled out (phi is a B-bimodule map and its values lie in B);
* ``scalar``: the commutative product over vertices of ``m_{viewed letters}``.

>>> print(kappa_eval(2, "operator"))
φ(a1a2) - φ(φ(a1)a2)
>>> print(kappa_eval(3, "scalar"))
2m[a1]m[a2]m[a3] - m[a1a2]m[a3] - m[a1a3]m[a2] - m[a2a3]m[a1] + m[a1a2a3]
"""
from __future__ import annotations

import re
from functools import lru_cache
from fractions import Fraction
from typing import Callable, Mapping, NamedTuple, Sequence, Union

from . import ncpart, trees
from .fmt import format_linear, scalar_json
from .poly import MomentPolynomial, moment, univariate
from .trees import LEAF, SchroederTree

Scalar = Union[int, Fraction]
MODES = ("operator", "bimodule", "scalar")


class Phi(NamedTuple):
    """``phi(arg)`` where ``arg`` is a product of letters and Phi items."""

    arg: tuple

    def __str__(self) -> str:
        return "φ(" + format_monomial(self.arg) + ")"


Item = Union[str, Phi]
Monomial = tuple  # tuple[Item, ...]


def format_monomial(mono: Monomial) -> str:
    return "".join(str(x) for x in mono) if mono else "1"


class PhiExpr:
    """Linear combination of products of letters and phi-terms (insertion-ordered)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None):
        self.terms: dict[Monomial, Scalar] = {k: c for k, c in (terms or {}).items() if c}

    @classmethod
    def single(cls, mono: Monomial, coef: Scalar = 1) -> "PhiExpr":
        return cls({tuple(mono): coef})

    def __add__(self, other: "PhiExpr") -> "PhiExpr":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return PhiExpr(out)

    def __neg__(self) -> "PhiExpr":
        return PhiExpr({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "PhiExpr") -> "PhiExpr":
        return self + (-other)

    def __mul__(self, c: Scalar) -> "PhiExpr":
        return PhiExpr({k: v * c for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, PhiExpr):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self) -> str:
        return format_linear((format_monomial(k), c) for k, c in self.terms.items()) if self.terms else "0"

    def __repr__(self) -> str:
        return f"PhiExpr({self})"

    def to_json(self) -> list[dict]:
        return [{"term": format_monomial(k), **scalar_json(c)} for k, c in self.terms.items()]


# --- parsing --------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(φ\(|phi\(|\(|\)|[A-Za-z]+\d*)")


def parse_phi(text: str) -> Monomial:
    """Parse a product such as ``"φ(a1φ(a2))a3"`` (``phi(`` is accepted too)."""
    tokens, pos = [], 0
    text = text.strip()
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if not mt:
            raise ValueError(f"unexpected character {text[pos]!r} in {text!r}")
        tokens.append(mt.group(1))
        pos = mt.end()
    i = 0

    def product_until_close() -> list:
        nonlocal i
        items: list = []
        while i < len(tokens) and tokens[i] != ")":
            tok = tokens[i]
            i += 1
            if tok in ("φ(", "phi("):
                inner = product_until_close()
                if i >= len(tokens):
                    raise ValueError(f"missing ')' in {text!r}")
                i += 1
                if not inner:
                    raise ValueError("empty phi argument")
                items.append(Phi(tuple(inner)))
            elif tok == "(":
                raise ValueError("bare parentheses are not part of the grammar")
            else:
                items.append(tok)
        return items

    out = product_until_close()
    if i != len(tokens):
        raise ValueError(f"unbalanced ')' in {text!r}")
    return tuple(out)


def letters_of(mono: Monomial) -> list[str]:
    """Letters in reading order, at every nesting depth."""
    out: list[str] = []
    for x in mono:
        if isinstance(x, Phi):
            out.extend(letters_of(x.arg))
        else:
            out.append(x)
    return out


# --- reading a tree ---------------------------------------------------------------------

def _check(t: SchroederTree, w: Sequence[str]) -> tuple[str, ...]:
    w = tuple(w)
    if trees.weight(t) != len(w):
        raise ValueError(f"tree of weight {trees.weight(t)} needs {trees.weight(t)} letters, got {len(w)}")
    if not w:
        raise ValueError("the leaf has no sectors to read")
    return w


def _operator(t: SchroederTree, w: tuple[str, ...]) -> Monomial:
    if t == LEAF:
        return ()
    kids = trees.children(t)
    arg: list = []
    pos = 0
    for i, kid in enumerate(kids):
        k = sum(kid)
        arg.extend(_operator(kid, w[pos:pos + k]))
        pos += k
        if i < len(kids) - 1:
            arg.append(w[pos])
            pos += 1
    return (Phi(tuple(arg)),)


def pull_out(mono: Monomial) -> Monomial:
    """Bottom-up bimodule normal form of a product."""
    out: list = []
    for x in mono:
        if isinstance(x, Phi):
            out.extend(_normal_phi(pull_out(x.arg)))
        else:
            out.append(x)
    return tuple(out)


def _normal_phi(arg: Monomial) -> list:
    lo, hi = 0, len(arg)
    while lo < hi and isinstance(arg[lo], Phi):
        lo += 1
    while hi > lo and isinstance(arg[hi - 1], Phi):
        hi -= 1
    if lo == hi:
        raise ValueError("phi argument without letters")
    return list(arg[:lo]) + [Phi(tuple(arg[lo:hi]))] + list(arg[hi:])


def central(mono: Monomial, moment_of: Callable[[tuple[str, ...]], MomentPolynomial] = moment) -> MomentPolynomial:
    """Scalar shadow: phi central and commutative, ``phi(x phi(y) z) -> phi(y) phi(xz)``."""
    out = MomentPolynomial.const(1)
    for x in mono:
        if isinstance(x, Phi):
            own = tuple(y for y in x.arg if not isinstance(y, Phi))
            out = out * moment_of(own) * central(tuple(y for y in x.arg if isinstance(y, Phi)), moment_of)
        else:
            raise ValueError(f"letter {x!r} outside phi has no scalar value")
    return out


def centralize(e: PhiExpr, moment_of=moment) -> MomentPolynomial:
    out = MomentPolynomial()
    for mono, c in e.terms.items():
        out = out + central(mono, moment_of) * c
    return out


def eval_tree(t: SchroederTree, w: Sequence[str], mode: str = "operator",
              moment_of: Callable[[tuple[str, ...]], MomentPolynomial] = moment):
    """Read a decorated tree in one of :data:`MODES`."""
    w = _check(t, w)
    if mode == "operator":
        return PhiExpr.single(_operator(t, w))
    if mode == "bimodule":
        return PhiExpr.single(pull_out(_operator(t, w)))
    if mode == "scalar":
        out = MomentPolynomial.const(1)
        for sectors in trees.sector_views(t).values():
            out = out * moment_of(tuple(w[s - 1] for s in sectors))
        return out
    raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")


def standard_letters(n: int) -> tuple[str, ...]:
    return tuple(f"a{i}" for i in range(1, n + 1))


def _prime_trees_print_order(n: int) -> list[SchroederTree]:
    from .fmt import index_key
    return sorted(trees.enumerate_words("prime", n), key=index_key)


def kappa_eval(n: int, mode: str = "scalar", letters: Sequence[str] | None = None,
               moment_of: Callable[[tuple[str, ...]], MomentPolynomial] = moment):
    """``sum_{t prime, wt n} (-1)^(i(t)-1) eval_tree(t, letters, mode)``."""
    if n < 1:
        raise ValueError("n must be positive")
    w = tuple(letters) if letters is not None else standard_letters(n)
    if len(w) != n:
        raise ValueError(f"need {n} letters")
    if mode == "scalar" and letters is None and moment_of is moment:
        return _kappa_scalar_std(n)
    out = MomentPolynomial() if mode == "scalar" else PhiExpr()
    for t in _prime_trees_print_order(n):
        sign = (-1) ** (trees.internal_count(t) - 1)
        out = out + eval_tree(t, w, mode, moment_of) * sign
    return out


@lru_cache(maxsize=None)
def _kappa_scalar_std(n: int) -> MomentPolynomial:
    w = standard_letters(n)
    acc: dict = {}
    for t in trees.enumerate_words("prime", n):
        sign = (-1) ** (trees.internal_count(t) - 1)
        mono = tuple(sorted(((tuple(w[s - 1] for s in sec), 1) for sec in trees.sector_views(t).values())))
        acc[mono] = acc.get(mono, 0) + sign
    return MomentPolynomial(acc)


def speicher_kappa(n: int, letters: Sequence[str] | None = None) -> MomentPolynomial:
    """Moebius inversion over noncrossing partitions: ``sum_pi mu(pi, 1) phi_pi``."""
    w = tuple(letters) if letters is not None else standard_letters(n)
    one = ncpart.top(n)
    acc: dict = {}
    for pi in ncpart.enumerate_nc(n):
        mu = ncpart.moebius(pi, one)
        mono = tuple(sorted((tuple(w[i - 1] for i in b), 1) for b in pi.blocks))
        acc[mono] = acc.get(mono, 0) + mu
    return MomentPolynomial(acc)


def relabel(p: MomentPolynomial, mapping: Mapping[str, str]) -> MomentPolynomial:
    return p.map_atoms(lambda a: moment(tuple(mapping[x] for x in a)))


def moments_from_kappa(n: int) -> MomentPolynomial:
    """``sum_{pi in NC_n} prod_B kappa[B]``, which must equal ``m_{a1...an}``."""
    w = standard_letters(n)
    out = MomentPolynomial()
    for pi in ncpart.enumerate_nc(n):
        term = MomentPolynomial.const(1)
        for b in pi.blocks:
            mapping = {f"a{i + 1}": w[x - 1] for i, x in enumerate(b)}
            term = term * relabel(_kappa_scalar_std(len(b)), mapping)
        out = out + term
    return out


def unsigned_polynomial(n: int) -> MomentPolynomial:
    """``sum_{t prime} prod_B m_{|B|}`` over the sector blocks, univariate."""
    acc: dict = {}
    for t in trees.enumerate_words("prime", n):
        mono: dict = {}
        for sec in trees.sector_views(t).values():
            atom = ("a",) * len(sec)
            mono[atom] = mono.get(atom, 0) + 1
        key = tuple(sorted(mono.items()))
        acc[key] = acc.get(key, 0) + 1
    return MomentPolynomial(acc)


def univariate_kappa(n: int) -> MomentPolynomial:
    return univariate(_kappa_scalar_std(n))


# --- right-directed normal form --------------------------------------------------------

def _blocks_of(mono: Monomial, index: dict[str, int], out: list) -> None:
    for x in mono:
        if isinstance(x, Phi):
            own = [index[y] for y in x.arg if not isinstance(y, Phi)]
            out.append(tuple(own))
            _blocks_of(tuple(y for y in x.arg if isinstance(y, Phi)), index, out)


def right_directed_tree(e: PhiExpr | Monomial) -> tuple[SchroederTree, tuple[str, ...]]:
    """Right-directed tree (and its letters) with the same bimodule reading as ``e``."""
    mono = _single(e)
    w = tuple(letters_of(mono))
    if len(set(w)) != len(w):
        raise ValueError("letters must be pairwise distinct")
    index = {x: i + 1 for i, x in enumerate(w)}
    normal = pull_out(mono)
    blocks: list = []
    _blocks_of(normal, index, blocks)
    try:
        pi = ncpart.NoncrossingPartition(len(w), tuple(blocks))
    except ValueError as exc:
        raise ValueError(f"not the reading of a tree: {exc}") from None
    t = ncpart.nc_to_rdt(pi)
    if pull_out(_operator(t, w)) != normal:
        raise ValueError("expression is not the bimodule reading of a Schroeder tree")
    return t, w


def right_directed_form(e: PhiExpr | Monomial) -> PhiExpr:
    """Operator reading of the right-directed tree equivalent to ``e`` under bimodule rules."""
    t, w = right_directed_tree(e)
    return PhiExpr.single(_operator(t, w))


def _single(e) -> Monomial:
    if isinstance(e, PhiExpr):
        if len(e.terms) != 1:
            raise ValueError("expected a single term")
        (mono, c), = e.terms.items()
        if c != 1:
            raise ValueError("expected coefficient 1")
        return mono
    if isinstance(e, str):
        return parse_phi(e)
    return tuple(e)


def tree_of_reading(mono: Monomial) -> tuple[SchroederTree, tuple[str, ...]]:
    """Invert the operator reading: recover the tree and its letters."""
    w: list[str] = []

    def build(item) -> SchroederTree:
        if not isinstance(item, Phi):
            raise ValueError("expected a phi-term")
        kids: list[SchroederTree] = []
        pending: SchroederTree | None = None
        for x in item.arg:
            if isinstance(x, Phi):
                if pending is not None:
                    raise ValueError("two adjacent phi-terms inside one argument")
                pending = build(x)
            else:
                kids.append(pending if pending is not None else LEAF)
                pending = None
                w.append(x)
        kids.append(pending if pending is not None else LEAF)
        return trees.node(*kids)

    if len(mono) != 1:
        raise ValueError("a tree reading is a single phi-term")
    t = build(mono[0])
    return t, tuple(w)


# --- cluster property -----------------------------------------------------------------

def _to_nested(t: SchroederTree):
    if t == LEAF:
        return None
    return [_to_nested(c) for c in trees.children(t)]


def _from_nested(x) -> SchroederTree:
    if x is None:
        return LEAF
    return trees.node(*(_from_nested(c) for c in x))


def cluster_involution(t: SchroederTree, j: int, k: int) -> SchroederTree:
    """Sign-reversing local move along the path from leaf j+1 to the root.

    Scanning upward, stop at the first middle edge (split its vertex into two,
    the lower one keeping the children up to that edge) or at the first right
    edge directly followed by a left edge (merge the lower vertex into the
    upper one).  The two moves are inverse to each other.
    """
    if j < 1 or k < 1 or trees.weight(t) != j + k:
        raise ValueError(f"need a tree of weight j+k={j + k} with j, k >= 1")
    if not trees.is_prime(t):
        raise ValueError("cluster involution is defined on prime trees")
    root = _to_nested(t)
    # path of (parent, child_index) from the (j+1)th leaf upwards
    path: list[tuple[list, int]] = []
    counter = 0

    def find(node) -> bool:
        nonlocal counter
        for i, c in enumerate(node):
            if c is None:
                counter += 1
                if counter == j + 1:
                    path.append((node, i))
                    return True
            elif find(c):
                path.append((node, i))
                return True
        return False

    find(root)
    for step, (v, i) in enumerate(path):
        if 0 < i < len(v) - 1:
            lower = v[: i + 1]
            v[:] = [lower] + v[i + 1:]
            return _from_nested(root)
        if i == len(v) - 1 and step + 1 < len(path):
            upper, ui = path[step + 1]
            if ui == 0:
                upper[:] = v + upper[1:]
                return _from_nested(root)
    raise AssertionError("no local move found; tree is not prime?")


def factored_moment(j: int) -> Callable[[tuple[str, ...]], MomentPolynomial]:
    """Moments split at position j: ``m_w = m_{w & B} m_{w & C}`` with B the first j letters."""
    b_letters = set(standard_letters(j))

    def moment_of(w: tuple[str, ...]) -> MomentPolynomial:
        bs = tuple(x for x in w if x in b_letters)
        cs = tuple(x for x in w if x not in b_letters)
        out = MomentPolynomial.const(1)
        if bs:
            out = out * moment(bs)
        if cs:
            out = out * moment(cs)
        return out

    return moment_of


def mixed_kappa_factored(j: int, k: int) -> MomentPolynomial:
    """``kappa(b_1..b_j, c_1..c_k)`` under factored moments; vanishes identically."""
    return kappa_eval(j + k, "scalar", standard_letters(j + k), factored_moment(j))
