"""Commutative polynomials with exact rational coefficients.

Indeterminates ("atoms") are tuples of strings.  The moment indeterminate
``m_w`` of a letter word ``w`` is the word itself, e.g. ``("a1", "a3")``; the
univariate moment ``m_k`` is the word of ``k`` copies of the letter ``"a"``.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Mapping, Union

Atom = tuple[str, ...]
Monomial = tuple[tuple[Atom, int], ...]
Scalar = Union[int, Fraction]

UNIVARIATE_LETTER = "a"


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for atom, e in b:
        exps[atom] = exps.get(atom, 0) + e
    return tuple(sorted(exps.items()))


def _display_order(m: Monomial) -> list[tuple[Atom, int]]:
    return sorted(m, key=lambda ae: (-len(ae[0]), ae[0]))


def _mono_key(m: Monomial):
    # total letter count, then the block-size partition (largest part first),
    # so univariate output reads 2m1^3 + 3m2m1 + m3
    sizes = tuple(sorted((len(a) for a, e in m for _ in range(e)), reverse=True))
    return (sum(sizes), sizes, [(a, e) for a, e in _display_order(m)])


class MomentPolynomial:
    """Sparse polynomial ``{monomial: coefficient}``; zero terms are never stored."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None):
        self.terms: dict[Monomial, Scalar] = {m: c for m, c in (terms or {}).items() if c}

    # constructors
    @classmethod
    def const(cls, c: Scalar) -> "MomentPolynomial":
        return cls({(): c})

    @classmethod
    def atom(cls, atom: Iterable[str]) -> "MomentPolynomial":
        return cls({((tuple(atom), 1),): 1})

    # arithmetic
    @staticmethod
    def _lift(other) -> "MomentPolynomial":
        if isinstance(other, MomentPolynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return MomentPolynomial.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return MomentPolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return MomentPolynomial({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return MomentPolynomial({m: c * other for m, c in self.terms.items()})
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out: dict[Monomial, Scalar] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return MomentPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = MomentPolynomial.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"MomentPolynomial({self})"

    def __str__(self):
        return format_poly(self)

    # structure
    def constant(self) -> Scalar:
        return self.terms.get((), 0)

    def atoms(self) -> set[Atom]:
        return {a for m in self.terms for a, _ in m}

    def map_atoms(self, fn: Callable[[Atom], "MomentPolynomial"]) -> "MomentPolynomial":
        """Ring homomorphism sending each atom to ``fn(atom)``."""
        cache: dict[Atom, MomentPolynomial] = {}
        out = MomentPolynomial()
        for m, c in self.terms.items():
            term = MomentPolynomial.const(c)
            for a, e in m:
                if a not in cache:
                    cache[a] = fn(a)
                term = term * cache[a] ** e
            out = out + term
        return out

    def coefficient_sum(self) -> Scalar:
        return sum(self.terms.values())

    def unsigned(self) -> "MomentPolynomial":
        return MomentPolynomial({m: abs(c) for m, c in self.terms.items()})


# --- helpers ---------------------------------------------------------------

def moment(word: Iterable[str]) -> MomentPolynomial:
    return MomentPolynomial.atom(word)


def m(k: int) -> MomentPolynomial:
    """Univariate moment ``m_k`` (``m_0 = 1``)."""
    if k == 0:
        return MomentPolynomial.const(1)
    return MomentPolynomial.atom((UNIVARIATE_LETTER,) * k)


def univariate(p: MomentPolynomial) -> MomentPolynomial:
    """Specialise every letter to a single variable: ``m_w -> m_{len(w)}``."""
    return p.map_atoms(lambda a: m(len(a)))


def symbol(letter: str, k: int) -> MomentPolynomial:
    """Graded one-letter indeterminate, e.g. ``symbol("e", 2)`` prints as ``e2``."""
    if len(letter) != 1 or letter == UNIVARIATE_LETTER:
        raise ValueError("symbol letters are single characters other than 'a'")
    return MomentPolynomial.const(1) if k == 0 else MomentPolynomial.atom((letter,) * k)


def format_atom(a: Atom) -> str:
    if all(x == UNIVARIATE_LETTER for x in a):
        return f"m{len(a)}"
    if len(a[0]) == 1 and all(x == a[0] for x in a):
        return f"{a[0]}{len(a)}"
    return "m[" + "".join(a) + "]"


def _format_coef_mono(c: Scalar, mono: Monomial) -> str:
    body = "".join(format_atom(a) + (f"^{e}" if e > 1 else "") for a, e in _display_order(mono))
    c = abs(c)
    if not body:
        return str(c)
    if c == 1:
        return body
    if isinstance(c, Fraction) and c.denominator != 1:
        return f"({c}){body}"
    return f"{c}{body}"


def format_poly(p: MomentPolynomial) -> str:
    if not p.terms:
        return "0"
    parts = []
    for i, mono in enumerate(sorted(p.terms, key=_mono_key)):
        c = p.terms[mono]
        s = _format_coef_mono(c, mono)
        if i == 0:
            parts.append(("-" if c < 0 else "") + s)
        else:
            parts.append((" - " if c < 0 else " + ") + s)
    return "".join(parts)


def poly_to_json(p: MomentPolynomial) -> list[dict]:
    out = []
    for mono in sorted(p.terms, key=_mono_key):
        c = Fraction(p.terms[mono])
        out.append({
            "monomial": [{"atom": list(a), "exp": e} for a, e in mono],
            "num": c.numerator,
            "den": c.denominator,
        })
    return out
