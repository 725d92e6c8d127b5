"""Monomials and polynomials over F2 in k variables.

A monomial is a plain tuple of non-negative exponents; a polynomial is a
frozen set of such tuples (every coefficient is 1, addition is symmetric
difference). Hot loops elsewhere work on raw tuples and sets directly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

Monomial = tuple[int, ...]
WeightVector = tuple[int, ...]


def monomial(*exponents: int) -> Monomial:
    if any(e < 0 for e in exponents):
        raise ValueError(f"negative exponent in {exponents}")
    return tuple(exponents)


def degree(m: Monomial) -> int:
    return sum(m)


def multiply(m1: Monomial, m2: Monomial) -> Monomial:
    if len(m1) != len(m2):
        raise ValueError(f"rank mismatch: {len(m1)} vs {len(m2)}")
    return tuple(a + b for a, b in zip(m1, m2))


def weight(m: Monomial) -> WeightVector:
    """Count, for each binary digit position, the exponents having that bit set."""
    w = []
    j = 0
    top = max(m, default=0)
    while (top >> j) > 0:
        w.append(sum((a >> j) & 1 for a in m))
        j += 1
    return tuple(w)


def degree_of_weight(w: WeightVector) -> int:
    return sum(c << j for j, c in enumerate(w))


def kameko_down(m: Monomial) -> Optional[Monomial]:
    """Halve an all-odd monomial, ``x^(2a+1) -> x^a``; None (zero) otherwise."""
    if all(a & 1 for a in m):
        return tuple((a - 1) >> 1 for a in m)
    return None


def psi_lift(m: Monomial) -> Monomial:
    """``u -> (x1...xk) * u^2``, the section of :func:`kameko_down`."""
    return tuple(2 * a + 1 for a in m)


def _compositions(k: int, n: int) -> Iterator[Monomial]:
    if k == 1:
        yield (n,)
        return
    for a in range(n, -1, -1):
        for rest in _compositions(k - 1, n - a):
            yield (a,) + rest


def order_key(m: Monomial) -> tuple:
    """Total order on monomials of one degree: weight vector first, then exponents.

    Both parts compare left-lexicographically. Column order in the hit matrix
    is *descending* in this key, so the non-pivot columns, i.e. the basis,
    are the smallest monomials: the admissible ones.
    """
    return (weight(m), m)


def enumerate_monomials(k: int, n: int) -> list[Monomial]:
    """All degree-n monomials in k variables, largest first under :func:`order_key`."""
    if k < 1 or n < 0:
        raise ValueError(f"need k >= 1 and n >= 0, got k={k}, n={n}")
    return sorted(_compositions(k, n), key=order_key, reverse=True)


@dataclass(frozen=True)
class Polynomial:
    """An F2-polynomial in ``k`` variables."""

    k: int
    terms: frozenset[Monomial] = field(default_factory=frozenset)

    def __post_init__(self):
        for m in self.terms:
            if len(m) != self.k:
                raise ValueError(f"term {m} has rank {len(m)}, expected {self.k}")
            if any(a < 0 for a in m):
                raise ValueError(f"negative exponent in {m}")

    @classmethod
    def from_terms(cls, k: int, terms: Iterable[Monomial]) -> "Polynomial":
        acc: set[Monomial] = set()
        for m in terms:
            acc ^= {tuple(m)}
        return cls(k, frozenset(acc))

    @classmethod
    def zero(cls, k: int) -> "Polynomial":
        return cls(k)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        if self.k != other.k:
            raise ValueError(f"rank mismatch: {self.k} vs {other.k}")
        return Polynomial(self.k, self.terms ^ other.terms)

    __sub__ = __add__

    def __iter__(self) -> Iterator[Monomial]:
        return iter(sorted(self.terms, key=order_key, reverse=True))

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def degree(self) -> Optional[int]:
        """Common degree of all terms, None for zero; raises if inhomogeneous."""
        degs = {sum(m) for m in self.terms}
        if len(degs) > 1:
            raise ValueError(f"polynomial is not homogeneous (degrees {sorted(degs)})")
        return degs.pop() if degs else None

    def __str__(self) -> str:
        return format_polynomial(self.terms)


def format_monomial(m: Monomial) -> str:
    parts = []
    for i, a in enumerate(m, start=1):
        if a == 1:
            parts.append(f"x{i}")
        elif a > 1:
            parts.append(f"x{i}^{a}")
    return "*".join(parts) if parts else "1"


def format_polynomial(terms: Iterable[Monomial]) -> str:
    """Render terms sorted by their printed form, e.g. ``x1*x2^2 + x1^3*x2``."""
    ordered = sorted(terms, key=_display_key)
    return " + ".join(format_monomial(m) for m in ordered) if ordered else "0"


def _display_key(m: Monomial) -> str:
    return format_monomial(m)


class PolynomialParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


_FACTOR = re.compile(r"x(\d+)(?:\^(\d+))?")


def parse_polynomial(text: str, k: int) -> Polynomial:
    """Parse ``x1^3*x2 + x1*x2^3`` style text. Brackets ``[...]`` are accepted."""
    terms: list[Monomial] = []
    pos = 0
    length = len(text)

    def where(p: int) -> tuple[int, int]:
        line = text.count("\n", 0, p) + 1
        col = p - (text.rfind("\n", 0, p) + 1) + 1
        return line, col

    def skip_ws(p: int) -> int:
        while p < length and (text[p].isspace() or text[p] in "[]"):
            p += 1
        return p

    pos = skip_ws(pos)
    if pos == length:
        return Polynomial.zero(k)
    if text[pos] == "0":
        end = skip_ws(pos + 1)
        if end == length:
            return Polynomial.zero(k)
    while True:
        pos = skip_ws(pos)
        exps = [0] * k
        if pos < length and text[pos] == "1" and not text[pos + 1:pos + 2].isdigit():
            pos += 1
        else:
            while True:
                pos = skip_ws(pos)
                match = _FACTOR.match(text, pos)
                if not match:
                    raise PolynomialParseError("expected factor x<i>[^<e>]", *where(pos))
                idx = int(match.group(1))
                if not 1 <= idx <= k:
                    raise PolynomialParseError(f"variable x{idx} out of range for k={k}", *where(pos))
                exps[idx - 1] += int(match.group(2)) if match.group(2) else 1
                pos = skip_ws(match.end())
                if pos < length and text[pos] == "*":
                    pos += 1
                    continue
                break
        terms.append(tuple(exps))
        pos = skip_ws(pos)
        if pos == length:
            break
        if text[pos] != "+":
            raise PolynomialParseError(f"unexpected character {text[pos]!r}", *where(pos))
        pos += 1
    return Polynomial.from_terms(k, terms)
