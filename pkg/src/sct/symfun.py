"""Classical univariate layer: power series, reversion and the star involution.

The complete functions are identified with the moments, ``h_n = m_n``, so
``H(t) = 1 + sum m_n t^n``.  The elementary functions come from
``E(-t) H(t) = 1``.  Reverting ``u = t H(t)`` gives ``t = u H*(u)``, which
defines ``h_n*`` and, by substitution, ``f*`` for every symmetric function f.

>>> print(revert(PowerSeries.from_scalars([0, 1, 1]), 4))
t - t^2 + 2t^3 - 5t^4
>>> print(classical_cumulants(3)[2])
2m1^3 - 3m2m1 + m3
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Mapping, Sequence, Union

from .fmt import format_linear, scalar_json
from .poly import UNIVARIATE_LETTER, MomentPolynomial, m, poly_to_json, symbol

Scalar = Union[int, Fraction]
Coef = Union[Scalar, MomentPolynomial]
Partition = tuple[int, ...]


def _poly(c: Coef) -> MomentPolynomial:
    return c if isinstance(c, MomentPolynomial) else MomentPolynomial.const(c)


def _scalar(p: MomentPolynomial) -> Scalar | None:
    """The value of a constant polynomial, or None."""
    if not p.terms:
        return 0
    if set(p.terms) == {()}:
        return p.terms[()]
    return None


class PowerSeries:
    """Truncated power series ``c_0 + c_1 t + ... + c_N t^N`` over the moment ring."""

    __slots__ = ("N", "coeffs")

    def __init__(self, coeffs: Iterable[Coef], N: int | None = None):
        cs = [_poly(c) for c in coeffs]
        if N is None:
            N = len(cs) - 1
        if N < 0:
            raise ValueError("truncation order must be non-negative")
        cs = cs[: N + 1] + [MomentPolynomial()] * (N + 1 - len(cs))
        self.N = N
        self.coeffs: tuple[MomentPolynomial, ...] = tuple(cs)

    @classmethod
    def from_scalars(cls, values: Sequence[Scalar], N: int | None = None) -> "PowerSeries":
        return cls(values, N)

    @classmethod
    def t(cls, N: int) -> "PowerSeries":
        return cls([0, 1], N)

    def __getitem__(self, k: int) -> MomentPolynomial:
        return self.coeffs[k] if 0 <= k <= self.N else MomentPolynomial()

    def truncate(self, N: int) -> "PowerSeries":
        return PowerSeries(self.coeffs, min(N, self.N))

    # arithmetic
    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        N = min(self.N, other.N)
        return PowerSeries((self[k] + other[k] for k in range(N + 1)), N)

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        return self + other * -1

    def __neg__(self) -> "PowerSeries":
        return self * -1

    def __mul__(self, other) -> "PowerSeries":
        if isinstance(other, (int, Fraction, MomentPolynomial)):
            return PowerSeries((c * other for c in self.coeffs), self.N)
        N = min(self.N, other.N)
        out = [MomentPolynomial() for _ in range(N + 1)]
        for i in range(N + 1):
            if not self[i]:
                continue
            for j in range(N + 1 - i):
                if other[j]:
                    out[i + j] = out[i + j] + self[i] * other[j]
        return PowerSeries(out, N)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "PowerSeries":
        if k < 0:
            return self.inverse() ** -k
        out = PowerSeries([1], self.N)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        """Equality up to the smaller truncation order."""
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return all(self[k] == other[k] for k in range(min(self.N, other.N) + 1))

    __hash__ = None  # mutable-looking value type; equality depends on truncation

    def inverse(self) -> "PowerSeries":
        """Multiplicative inverse; the constant term must be a nonzero scalar."""
        c0 = _scalar(self[0])
        if not c0:
            raise ValueError("constant term is not an invertible scalar")
        inv0 = Fraction(1, 1) / c0
        out = [MomentPolynomial.const(inv0)]
        for n in range(1, self.N + 1):
            acc = MomentPolynomial()
            for k in range(1, n + 1):
                if self[k]:
                    acc = acc + self[k] * out[n - k]
            out.append(acc * -inv0)
        return PowerSeries(out, self.N)

    def compose(self, g: "PowerSeries") -> "PowerSeries":
        """``self(g(t))``; g must have zero constant term."""
        if g[0]:
            raise ValueError("inner series must have zero constant term")
        N = min(self.N, g.N)
        out = PowerSeries([self[0]], N)
        power = PowerSeries([1], N)
        for k in range(1, N + 1):
            power = power * g
            if self[k]:
                out = out + power * self[k]
        return out

    def shift_down(self) -> "PowerSeries":
        """``F(t) / t`` for a series with zero constant term."""
        if self[0]:
            raise ValueError("series has a nonzero constant term")
        return PowerSeries(self.coeffs[1:], self.N - 1)

    # output
    def __str__(self) -> str:
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            var = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            s = _scalar(c)
            if s is not None:
                parts.append((var or "1", s) if var else (str(abs(s)), 1 if s > 0 else -1))
            elif len(c.terms) == 1:
                ((mono, coef),) = c.terms.items()
                body = str(MomentPolynomial({mono: abs(coef)}))
                parts.append((body + var, 1 if coef > 0 else -1))
            else:
                parts.append((f"({c})" + var, 1))
        return format_linear(parts, group_negative=False) if parts else "0"

    def __repr__(self) -> str:
        return f"PowerSeries(N={self.N}, {self})"

    def to_json(self) -> dict:
        return {"order": self.N, "coefficients": [poly_to_json(c) for c in self.coeffs]}


# --- reversion -------------------------------------------------------------------

def _check_revertible(F: PowerSeries) -> Scalar:
    if F[0]:
        raise ValueError("F(0) must be 0 for reversion")
    f1 = _scalar(F[1])
    if not f1:
        raise ValueError("F'(0) must be an invertible scalar for reversion")
    return f1


def revert(F: PowerSeries, N: int | None = None) -> PowerSeries:
    """Compositional inverse by graded substitution, one order at a time.

    ``N`` defaults to the order of F; a larger N reads F as a polynomial.

    With ``G`` known below order n, ``[t^n] F(G) = f_1 g_n + (terms of lower G)``,
    so ``g_n`` is fixed by requiring that coefficient to vanish (n >= 2).
    """
    f1 = _check_revertible(F)
    N = F.N if N is None else N
    F = PowerSeries(F.coeffs, N)
    inv = Fraction(1, 1) / f1
    g = [MomentPolynomial(), MomentPolynomial.const(inv)]
    for n in range(2, N + 1):
        partial = F.truncate(n).compose(PowerSeries(g, n))
        g.append(partial[n] * -inv)
    return PowerSeries(g[: N + 1], N)


def revert_lagrange(F: PowerSeries, N: int | None = None) -> PowerSeries:
    """Compositional inverse by Lagrange: ``[u^n] G = (1/n) [t^(n-1)] (t/F)^n``."""
    _check_revertible(F)
    N = F.N if N is None else N
    ratio = PowerSeries(F.coeffs, N).shift_down().inverse()
    g = [MomentPolynomial()]
    for n in range(1, N + 1):
        g.append(((ratio.truncate(n - 1)) ** n)[n - 1] * Fraction(1, n))
    return PowerSeries(g, N)


# --- complete and elementary functions -----------------------------------------------

def H(N: int) -> PowerSeries:
    """``1 + sum_{n>=1} h_n t^n`` with ``h_n = m_n``."""
    return PowerSeries([m(k) for k in range(N + 1)], N)


def E(N: int) -> PowerSeries:
    """``E(t)``, defined by ``E(-t) H(t) = 1``."""
    inv = H(N).inverse()
    return PowerSeries([inv[k] * (-1) ** k for k in range(N + 1)], N)


def e(n: int) -> MomentPolynomial:
    """Elementary function ``e_n`` as a polynomial in ``h_k = m_k``."""
    return E(n)[n]


@lru_cache(maxsize=None)
def _h_star_all(N: int) -> tuple[MomentPolynomial, ...]:
    u = revert(PowerSeries.t(N + 1) * H(N + 1), N + 1)
    return tuple(u[n + 1] for n in range(N + 1))


def h_star(n: int) -> MomentPolynomial:
    """``h_n*`` from ``t = u H*(u)``, the reversion of ``u = t H(t)``."""
    return _h_star_all(n)[n]


def h_star_lagrange(n: int) -> MomentPolynomial:
    """``h_n* = (1/(n+1)) [t^n] E(-t)^(n+1)``."""
    e_minus = PowerSeries([E(n)[k] * (-1) ** k for k in range(n + 1)], n)
    return (e_minus ** (n + 1))[n] * Fraction(1, n + 1)


def star(p: MomentPolynomial) -> MomentPolynomial:
    """The involution ``f -> f*``: substitute ``h_k -> h_k*`` in a polynomial in the h's."""
    def sub(atom):
        if any(x != UNIVARIATE_LETTER for x in atom):
            raise ValueError(f"star acts on polynomials in h_k = m_k, got atom {atom}")
        return h_star(len(atom))
    return p.map_atoms(sub)


def e_star(n: int) -> MomentPolynomial:
    return star(e(n))


# --- cumulants ------------------------------------------------------------------------

def classical_cumulants(N: int) -> list[MomentPolynomial]:
    """``[k_1, ..., k_N]`` from ``K = M^<-1>``, ``M(z) = 1/z + sum m_n z^(-n-1)``.

    Writing ``w = 1/z`` gives ``M = w H(w)``, hence ``1/K(z) = z H*(z)`` and
    ``k_n = [z^n] 1/H*(z)``.
    """
    if N < 1:
        raise ValueError("N must be at least 1")
    h_st = PowerSeries(_h_star_all(N), N)
    inv = h_st.inverse()
    return [inv[n] for n in range(1, N + 1)]


# --- the closed multinomial formula -----------------------------------------------------

def partitions(n: int, largest: int | None = None) -> list[Partition]:
    """Integer partitions of n, parts weakly decreasing, in reverse-lex order."""
    if n == 0:
        return [()]
    largest = n if largest is None else largest
    out = []
    for first in range(min(n, largest), 0, -1):
        out.extend((first,) + rest for rest in partitions(n - first, first))
    return out


def _multinomial(lam: Partition) -> int:
    counts: dict[int, int] = {}
    for part in lam:
        counts[part] = counts.get(part, 0) + 1
    out = factorial(len(lam))
    for c in counts.values():
        out //= factorial(c)
    return out


@dataclass(frozen=True)
class EExpansion:
    """Linear combination of products ``e_lambda = e_{l1} e_{l2} ...``."""

    terms: Mapping[Partition, Scalar]

    def to_e_poly(self) -> MomentPolynomial:
        out = MomentPolynomial()
        for lam, c in self.terms.items():
            term = MomentPolynomial.const(c)
            for part in lam:
                term = term * symbol("e", part)
            out = out + term
        return out

    def to_h_poly(self) -> MomentPolynomial:
        """Rewrite through ``e_k`` as polynomials in ``h_k = m_k``."""
        return self.to_e_poly().map_atoms(lambda atom: e(len(atom)))

    def __str__(self) -> str:
        order = sorted(self.terms, key=lambda lam: (len(lam), tuple(-x for x in lam)))
        return format_linear(
            ((f"e[{','.join(map(str, lam))}]", self.terms[lam]) for lam in order), group_negative=False
        )

    def to_json(self) -> dict:
        return {
            "terms": [{"partition": list(lam), **scalar_json(c)} for lam, c in sorted(self.terms.items())]
        }


def estar_formula(n: int) -> EExpansion:
    """``-e_n* = 1/(n-1) sum_{lambda |- n} C(n-1, l) multinomial(l; m_1, m_2, ...) e_lambda``.

    >>> print(estar_formula(3))
    e[3] + e[2,1]
    """
    if n < 2:
        raise ValueError("the closed formula needs n >= 2")
    out: dict[Partition, Scalar] = {}
    for lam in partitions(n):
        c = comb(n - 1, len(lam)) * _multinomial(lam)
        if c:
            out[lam] = Fraction(c, n - 1)
            if out[lam].denominator == 1:
                out[lam] = out[lam].numerator
    return EExpansion(out)
