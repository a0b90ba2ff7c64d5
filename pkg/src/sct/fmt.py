"""Shared text formatting for graded linear combinations."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction]


def index_key(index: Sequence[int]):
    """Print order: degree, then length, then reverse-lexicographic."""
    return (sum(index), len(index), tuple(-x for x in index))


def format_coef_term(c: Scalar, body: str) -> str:
    """Unsigned coefficient juxtaposed with the basis symbol (``2R[1,2]``)."""
    c = abs(c)
    if c == 1:
        return body
    if isinstance(c, Fraction) and c.denominator != 1:
        return f"({c}){body}"
    return f"{c}{body}"


def format_linear(terms: Iterable[tuple[str, Scalar]], group_negative: bool = True) -> str:
    """Join ``(body, coef)`` pairs in the given order.

    A combination whose coefficients are all negative and that has at least
    two terms is printed as ``-(...)`` unless ``group_negative`` is off.

    >>> format_linear([("S[2]", 1), ("S[1,1]", -1)])
    'S[2] - S[1,1]'
    >>> format_linear([("R[1,3]", -1), ("R[1,2,1]", -2)])
    '-(R[1,3] + 2R[1,2,1])'
    """
    terms = [(b, c) for b, c in terms if c]
    if not terms:
        return "0"
    if group_negative and len(terms) > 1 and all(c < 0 for _, c in terms):
        return "-(" + format_linear([(b, -c) for b, c in terms]) + ")"
    out = []
    for i, (body, c) in enumerate(terms):
        s = format_coef_term(c, body)
        if i == 0:
            out.append(("-" if c < 0 else "") + s)
        else:
            out.append((" - " if c < 0 else " + ") + s)
    return "".join(out)


def scalar_json(c: Scalar) -> dict:
    c = Fraction(c)
    return {"num": c.numerator, "den": c.denominator}
