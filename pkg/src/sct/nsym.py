"""Noncommutative symmetric functions.

Elements are stored on the complete basis ``S^I = S_{i1} ... S_{ir}``, where
the product is concatenation of compositions.  The elementary basis
``Lambda^I`` and the ribbon basis ``R_I`` are views computed on demand.

>>> print(lagrange_g(3).homogeneous(3))
S[3] + 2S[2,1] + S[1,2] + S[1,1,1]
>>> print(convert(cumulant_K(3).homogeneous(3), "R"))
R[1,2] + 2R[1,1,1]
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Any, Callable, Iterable, Mapping, Union

from . import ncpart
from .fmt import format_linear, index_key, scalar_json

Composition = tuple[int, ...]
Scalar = Union[int, Fraction]
Terms = dict[Composition, Scalar]

BASES = ("S", "L", "R")
_BASIS_ALIASES = {"S": "S", "L": "L", "Lambda": "L", "Λ": "L", "R": "R"}


def _norm_basis(tag: str) -> str:
    try:
        return _BASIS_ALIASES[tag]
    except KeyError:
        raise ValueError(f"unknown basis {tag!r}; expected S, L or R") from None


def _add_into(acc: Terms, terms: Mapping[Composition, Scalar], scale: Scalar = 1) -> None:
    for k, c in terms.items():
        v = acc.get(k, 0) + c * scale
        if v:
            acc[k] = v
        else:
            acc.pop(k, None)


def _mul_terms(a: Mapping[Composition, Scalar], b: Mapping[Composition, Scalar], cap: int | None = None) -> Terms:
    out: Terms = {}
    for i, ci in a.items():
        wi = sum(i)
        for j, cj in b.items():
            if cap is not None and wi + sum(j) > cap:
                continue
            k = i + j
            v = out.get(k, 0) + ci * cj
            if v:
                out[k] = v
            else:
                out.pop(k, None)
    return out


# --- compositions -------------------------------------------------------------

@lru_cache(maxsize=None)
def compositions(n: int) -> tuple[Composition, ...]:
    """Compositions of n, in print order."""
    if n == 0:
        return ((),)
    out = []
    for cuts in product((False, True), repeat=n - 1):
        parts, run = [], 1
        for c in cuts:
            if c:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        out.append(tuple(parts))
    return tuple(sorted(out, key=index_key))


def coarsenings(index: Composition) -> list[Composition]:
    """All compositions obtained by merging runs of adjacent parts (including ``index``)."""
    if not index:
        return [()]
    out = []
    for keep in product((False, True), repeat=len(index) - 1):
        parts, run = [], index[0]
        for k, x in zip(keep, index[1:]):
            if k:
                parts.append(run)
                run = x
            else:
                run += x
        parts.append(run)
        out.append(tuple(parts))
    return out


def descents(index: Composition) -> frozenset[int]:
    out, s = set(), 0
    for x in index[:-1]:
        s += x
        out.add(s)
    return frozenset(out)


def from_descents(n: int, des: Iterable[int]) -> Composition:
    cuts = [0] + sorted(des) + [n]
    return tuple(b - a for a, b in zip(cuts, cuts[1:])) if n else ()


def mirror_conjugate(index: Composition) -> Composition:
    """Composition whose descent set is the complement of that of ``index``.

    (Conjugation complements and reverses; the mirror image reverses back.)

    >>> mirror_conjugate((2, 1))
    (1, 2)
    """
    n = sum(index)
    return from_descents(n, set(range(1, n)) - descents(index))


# --- basis changes --------------------------------------------------------------

@lru_cache(maxsize=None)
def _r_in_s(index: Composition) -> Terms:
    out: Terms = {}
    for j in coarsenings(index):
        _add_into(out, {j: (-1) ** (len(index) - len(j))})
    return out


@lru_cache(maxsize=None)
def _s_in_r(index: Composition) -> Terms:
    return {j: 1 for j in coarsenings(index)}


@lru_cache(maxsize=None)
def _single_swap(n: int) -> Terms:
    """``Lambda_n`` on S, which is also ``S_n`` on Lambda."""
    return {j: (-1) ** (n - len(j)) for j in compositions(n)}


@lru_cache(maxsize=None)
def _l_in_s(index: Composition) -> Terms:
    out: Terms = {(): 1}
    for part in index:
        out = _mul_terms(out, _single_swap(part))
    return out


def _change(terms: Mapping[Composition, Scalar], table) -> Terms:
    out: Terms = {}
    for k, c in terms.items():
        _add_into(out, table(k), c)
    return out


_TO_S = {"S": lambda k: {k: 1}, "L": _l_in_s, "R": _r_in_s}
_FROM_S = {"S": lambda k: {k: 1}, "L": _l_in_s, "R": _s_in_r}


@dataclass(frozen=True)
class NSymElement:
    """A finite linear combination of basis elements of one of S, L (Lambda), R."""

    terms: Mapping[Composition, Scalar] = field(default_factory=dict)
    basis: str = "S"

    def __post_init__(self):
        object.__setattr__(self, "basis", _norm_basis(self.basis))
        object.__setattr__(self, "terms", {tuple(k): c for k, c in self.terms.items() if c})

    # views
    def s_terms(self) -> Terms:
        return _change(self.terms, _TO_S[self.basis])

    def to(self, basis: str) -> "NSymElement":
        basis = _norm_basis(basis)
        if basis == self.basis:
            return self
        return NSymElement(_change(self.s_terms(), _FROM_S[basis]), basis)

    # arithmetic, always returned on S
    def __add__(self, other: "NSymElement") -> "NSymElement":
        out = self.s_terms()
        _add_into(out, _lift(other).s_terms())
        return NSymElement(out)

    def __sub__(self, other: "NSymElement") -> "NSymElement":
        out = self.s_terms()
        _add_into(out, _lift(other).s_terms(), -1)
        return NSymElement(out)

    def __neg__(self) -> "NSymElement":
        return NSymElement({k: -c for k, c in self.terms.items()}, self.basis)

    def __mul__(self, other) -> "NSymElement":
        if isinstance(other, (int, Fraction)):
            return NSymElement({k: c * other for k, c in self.terms.items()}, self.basis)
        return NSymElement(_mul_terms(self.s_terms(), _lift(other).s_terms()))

    def __rmul__(self, other) -> "NSymElement":
        if isinstance(other, (int, Fraction)):
            return self * other
        return _lift(other) * self

    def __eq__(self, other) -> bool:
        if not isinstance(other, (NSymElement, int, Fraction)):
            return NotImplemented
        return self.s_terms() == _lift(other).s_terms()

    def __hash__(self):
        return hash(frozenset(self.s_terms().items()))

    # grading
    def homogeneous(self, n: int) -> "NSymElement":
        return NSymElement({k: c for k, c in self.terms.items() if sum(k) == n}, self.basis)

    def truncate(self, n: int) -> "NSymElement":
        return NSymElement({k: c for k, c in self.terms.items() if sum(k) <= n}, self.basis)

    def degree(self) -> int:
        return max((sum(k) for k in self.terms), default=0)

    def constant(self) -> Scalar:
        return self.terms.get((), 0)

    # output
    def __str__(self) -> str:
        return format_terms(self.terms, self.basis)

    def __repr__(self) -> str:
        return f"NSymElement({self})"

    def to_json(self) -> dict:
        return {
            "basis": self.basis,
            "terms": [{"index": list(k), **scalar_json(self.terms[k])} for k in sorted(self.terms, key=index_key)],
        }


def _lift(x) -> NSymElement:
    if isinstance(x, NSymElement):
        return x
    if isinstance(x, (int, Fraction)):
        return NSymElement({(): x})
    raise TypeError(f"cannot use {type(x).__name__} as a noncommutative symmetric function")


def format_terms(terms: Mapping[Composition, Scalar], basis: str = "S") -> str:
    def body(k: Composition) -> str:
        return f"{basis}[{','.join(map(str, k))}]" if k else "1"
    return format_linear((body(k), terms[k]) for k in sorted(terms, key=index_key))


def S(*index: int) -> NSymElement:
    return NSymElement({tuple(i for i in index if i): 1})


def L(*index: int) -> NSymElement:
    return NSymElement({tuple(index): 1}, "L")


def R(*index: int) -> NSymElement:
    return NSymElement({tuple(index): 1}, "R")


ONE = NSymElement({(): 1})


def convert(x: NSymElement, target: str) -> NSymElement:
    return x.to(target)


def mul(x: NSymElement, y: NSymElement, n: int) -> NSymElement:
    """Product truncated at degree n."""
    return NSymElement(_mul_terms(x.s_terms(), y.s_terms(), n))


def power(x: NSymElement, k: int, n: int) -> NSymElement:
    out = ONE
    for _ in range(k):
        out = mul(out, x, n)
    return out


def inverse(x: NSymElement, n: int) -> NSymElement:
    """Multiplicative inverse to degree n of a series with constant term 1."""
    xs = x.s_terms()
    if xs.get((), 0) != 1:
        raise ValueError("inverse needs constant term 1")
    parts = _by_degree(xs, n)
    inv: list[Terms] = [{(): 1}]
    for d in range(1, n + 1):
        acc: Terms = {}
        for k in range(1, d + 1):
            _add_into(acc, _mul_terms(parts[k], inv[d - k]), -1)
        inv.append(acc)
    out: Terms = {}
    for p in inv:
        out.update(p)
    return NSymElement(out)


def _by_degree(terms: Mapping[Composition, Scalar], n: int) -> list[Terms]:
    parts: list[Terms] = [{} for _ in range(n + 1)]
    for k, c in terms.items():
        if sum(k) <= n:
            parts[sum(k)][k] = c
    return parts


def sigma1(n: int) -> NSymElement:
    """Sum of the generators S_0 + S_1 + ... + S_n."""
    return NSymElement({(k,) if k else (): 1 for k in range(n + 1)})


# --- automorphisms and operators ------------------------------------------------

def minus_A(x: NSymElement) -> NSymElement:
    """The automorphism ``S_n -> (-1)^n Lambda_n``."""
    out: Terms = {}
    for k, c in x.s_terms().items():
        _add_into(out, _l_in_s(k), c * (-1) ** sum(k))
    return NSymElement(out)


def omega(x: NSymElement) -> NSymElement:
    """``S^{i1,...,ir} -> S^{i1+1,i2,...,ir}`` and ``1 -> S_1``."""
    out: Terms = {}
    for k, c in x.s_terms().items():
        _add_into(out, {((k[0] + 1,) + k[1:]) if k else (1,): c})
    return NSymElement(out)


# --- Faa di Bruno coproduct and antipode ------------------------------------------

Tensor = dict[tuple[Composition, Composition], Scalar]


@lru_cache(maxsize=None)
def s_of_multiple(m: int, k: int) -> Terms:
    """``S_m(kA)``: sum over weak compositions (j1..jk) of m of S_{j1}...S_{jk}."""
    out: Terms = {}

    def rec(left: int, parts: int, acc: tuple[int, ...]):
        if parts == 1:
            key = tuple(x for x in acc + (left,) if x)
            out[key] = out.get(key, 0) + 1
            return
        for j in range(left + 1):
            rec(left - j, parts - 1, acc + (j,))

    rec(m, k, ())
    return out


@lru_cache(maxsize=None)
def _delta1_generator(n: int) -> Tensor:
    out: Tensor = {}
    for i in range(n + 1):
        left = (i,) if i else ()
        for right, c in s_of_multiple(n - i, i + 1).items():
            out[(left, right)] = out.get((left, right), 0) + c
    return out


def _tensor_mul(a: Tensor, b: Tensor) -> Tensor:
    out: Tensor = {}
    for (l1, r1), c1 in a.items():
        for (l2, r2), c2 in b.items():
            key = (l1 + l2, r1 + r2)
            v = out.get(key, 0) + c1 * c2
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return out


@lru_cache(maxsize=None)
def _delta1_s(index: Composition) -> Tensor:
    out: Tensor = {((), ()): 1}
    for part in index:
        out = _tensor_mul(out, _delta1_generator(part))
    return out


def delta1(x: NSymElement, n: int | None = None) -> Tensor:
    """Coproduct as ``{(I, J): coef}`` meaning ``sum coef S^I (x) S^J``; multiplicative."""
    out: Tensor = {}
    for k, c in x.s_terms().items():
        if n is not None and sum(k) > n:
            continue
        for key, v in _delta1_s(k).items():
            w = out.get(key, 0) + c * v
            if w:
                out[key] = w
            else:
                out.pop(key, None)
    return out


@lru_cache(maxsize=None)
def _antipode_generator(n: int) -> Terms:
    if n == 0:
        return {(): 1}
    out: Terms = {}
    for i in range(n):
        _add_into(out, _mul_terms(_antipode_generator(i), s_of_multiple(n - i, i + 1)), -1)
    return out


@lru_cache(maxsize=None)
def _antipode_s(index: Composition) -> Terms:
    out: Terms = {(): 1}
    for part in reversed(index):
        out = _mul_terms(out, _antipode_generator(part))
    return out


def antipode(x: NSymElement, n: int | None = None) -> NSymElement:
    """Antipode, from ``sum_i gamma(S_i) S_{n-i}((i+1)A) = 0`` on generators,
    extended as an anti-automorphism."""
    out: Terms = {}
    for k, c in x.s_terms().items():
        if n is None or sum(k) <= n:
            _add_into(out, _antipode_s(k), c)
    return NSymElement(out)


# --- Lagrange series and cumulants -------------------------------------------------

@lru_cache(maxsize=None)
def _lagrange(n: int) -> tuple[Terms, ...]:
    """Homogeneous parts g_0..g_n of the solution of g = sum S_k g^k."""
    if n == 0:
        return ({(): 1},)
    prev = _lagrange(n - 1)
    g = NSymElement({k: c for part in prev for k, c in part.items()})
    gn: Terms = {}
    for k in range(1, n + 1):
        _add_into(gn, _mul_terms({(k,): 1}, power(g, k, n - k).homogeneous(n - k).terms))
    return prev + (gn,)


def lagrange_g(n: int) -> NSymElement:
    """Noncommutative Lagrange series ``g = sum_k S_k g^k`` to degree n."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    return NSymElement({k: c for part in _lagrange(n) for k, c in part.items()})


def lagrange_g_ndpf(n: int) -> NSymElement:
    """``g_n`` as a sum over nondecreasing parking functions."""
    out: Terms = {}
    for w in ncpart.ndpf_enumerate(n):
        _add_into(out, {ncpart.ndpf_ev(w): 1})
    return NSymElement(out)


CUMULANT_METHODS = ("solve", "antipode_formula", "ribbon_rule")


def cumulant_K(n: int, method: str = "solve") -> NSymElement:
    """``K = 1 + K_1 + ... + K_n``."""
    if method == "solve":
        return _cumulant_solve(n)
    if method == "antipode_formula":
        return inverse(minus_A(lagrange_g(n)), n)
    if method == "ribbon_rule":
        return _cumulant_ribbon(n)
    raise ValueError(f"unknown method {method!r}; expected one of {CUMULANT_METHODS}")


@lru_cache(maxsize=None)
def _cumulant_solve_parts(n: int) -> tuple[Terms, ...]:
    """Graded solution of ``sigma_1 = sum_k K_k sigma_1^k``."""
    if n == 0:
        return ({(): 1},)
    prev = _cumulant_solve_parts(n - 1)
    s = sigma1(n)
    kn: Terms = {(n,): 1}
    for k in range(1, n):
        _add_into(kn, _mul_terms(prev[k], power(s, k, n - k).homogeneous(n - k).terms), -1)
    return prev + (kn,)


def _cumulant_solve(n: int) -> NSymElement:
    return NSymElement({k: c for part in _cumulant_solve_parts(n) for k, c in part.items()})


def _cumulant_ribbon(n: int) -> NSymElement:
    out: Terms = {(): 1}
    g = lagrange_g(max(n - 1, 0))
    for d in range(1, n + 1):
        ribbons = g.homogeneous(d - 1).to("R").terms
        kd = {(1,) + mirror_conjugate(i): c * (-1) ** (d - 1) for i, c in ribbons.items()}
        _add_into(out, NSymElement(kd, "R").s_terms())
    return NSymElement(out)


def s_in_K(n: int) -> dict[Composition, int]:
    """``S_n`` on the products ``K^I``: one term per nondecreasing parking function."""
    out: dict[Composition, int] = {}
    for w in ncpart.ndpf_enumerate(n):
        ev = ncpart.ndpf_ev(w)
        out[ev] = out.get(ev, 0) + 1
    return out


def substitute_K(expansion: Mapping[Composition, Scalar], n: int) -> NSymElement:
    """Evaluate ``sum c_I K^I`` with the cumulant series, truncated at degree n."""
    parts = _cumulant_solve_parts(n)
    out: Terms = {}
    for idx, c in expansion.items():
        term: Terms = {(): 1}
        for part in idx:
            term = _mul_terms(term, parts[part], n)
        _add_into(out, term, c)
    return NSymElement(out)


def format_K(expansion: Mapping[Composition, Scalar]) -> str:
    return format_terms(expansion, "K")


def specialize(x: NSymElement, value: Callable[[int], Any]) -> Any:
    """Image under the character ``S_n -> value(n)`` (commutative target ring)."""
    out: Any = 0
    for idx, c in x.s_terms().items():
        term: Any = c
        for part in idx:
            term = term * value(part)
        out = out + term
    return out
