"""GL_k(F2) acting on F2[x1, ..., xk] by linear substitution of variables."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional

from .gf2 import bits, rank_of_rows
from .monomials import Monomial, Polynomial

MAX_ENUMERABLE_RANK = 4


class UnsupportedRankError(ValueError):
    pass


@dataclass(frozen=True)
class GroupElement:
    """Invertible k x k matrix over F2; ``rows[i]`` has bit j set iff x_i -> ... + x_j + ...

    Row i is the image of x_i. With this convention substitution is a right
    action of the matrix product, so ``*`` is defined as composition of
    substitutions: ``substitute(g * h, p) == substitute(g, substitute(h, p))``.
    """

    k: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != self.k or any(r >> self.k for r in self.rows):
            raise ValueError("malformed matrix")
        if rank_of_rows(self.rows) != self.k:
            raise ValueError("matrix is not invertible over F2")

    @classmethod
    def from_matrix(cls, matrix: Iterable[Iterable[int]]) -> "GroupElement":
        rows = [sum((b & 1) << j for j, b in enumerate(r)) for r in matrix]
        return cls(len(rows), tuple(rows))

    @classmethod
    def identity(cls, k: int) -> "GroupElement":
        return cls(k, tuple(1 << i for i in range(k)))

    def matrix(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.k)] for r in self.rows]

    def matmul(self, other: "GroupElement") -> "GroupElement":
        """Ordinary matrix product self @ other."""
        rows = []
        for r in self.rows:
            acc = 0
            for j in bits(r):
                acc ^= other.rows[j]
            rows.append(acc)
        return GroupElement(self.k, tuple(rows))

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return other.matmul(self)

    def transpose(self) -> "GroupElement":
        rows = tuple(sum(((self.rows[i] >> j) & 1) << i for i in range(self.k)) for j in range(self.k))
        return GroupElement(self.k, rows)

    def inverse(self) -> "GroupElement":
        k = self.k
        aug = [self.rows[i] | (1 << (k + i)) for i in range(k)]
        for c in range(k):
            p = next(i for i in range(c, k) if (aug[i] >> c) & 1)
            aug[c], aug[p] = aug[p], aug[c]
            for i in range(k):
                if i != c and (aug[i] >> c) & 1:
                    aug[i] ^= aug[c]
        # aug = [I | A^-1] in row form; row i of A^-1 is aug[i] >> k.
        return GroupElement(k, tuple(a >> k for a in aug))

    def permutation(self) -> Optional[tuple[int, ...]]:
        """If this is a permutation matrix, the target variable of each x_i."""
        if all(r & (r - 1) == 0 for r in self.rows):
            return tuple(r.bit_length() - 1 for r in self.rows)
        return None


def _multiply_frobenius(state: set[Monomial], support: list[int], step: int, limit: Optional[int]) -> set[Monomial]:
    # state * sum_{j in support} x_j^step, XOR-accumulated.
    new: set[Monomial] = set()
    for t in state:
        for j in support:
            e = t[j] + step
            if limit is not None and e >= limit:
                continue
            u = t[:j] + (e,) + t[j + 1:]
            if u in new:
                new.remove(u)
            else:
                new.add(u)
    return new


def expand_terms(forms: tuple[int, ...], terms: Iterable[Monomial], limit: Optional[int] = None) -> set[Monomial]:
    """Expand sum_m prod_i L_i^{m_i} over F2, L_i the linear form with support ``forms[i]``.

    Each power is split into Frobenius factors ``L^(2^b) = sum_j x_j^(2^b)``
    multiplied in from the highest bit down. Monomials sharing their high
    bits share that part of the expansion (a trie over bit levels). With
    ``limit`` set, any term with an exponent >= limit is discarded, which is
    arithmetic in F2[x]/(x_i^limit).
    """
    odd: set[Monomial] = set()
    for m in terms:
        odd ^= {m}
    terms = list(odd)
    if not terms:
        return set()
    k = len(terms[0])
    supports = [bits(f) for f in forms]
    top = max(max(m, default=0) for m in terms).bit_length()
    result: set[Monomial] = set()

    def walk(b: int, group: list[Monomial], state: set[Monomial]) -> None:
        if not state:
            return
        if b < 0:
            result.symmetric_difference_update(state)
            return
        parts: dict[tuple[int, ...], list[Monomial]] = {}
        for m in group:
            parts.setdefault(tuple((a >> b) & 1 for a in m), []).append(m)
        step = 1 << b
        for pattern, sub in parts.items():
            st = state
            for i in range(k):
                if pattern[i]:
                    st = _multiply_frobenius(st, supports[i], step, limit)
            walk(b - 1, sub, st)

    walk(top - 1, terms, {(0,) * k})
    return result


def expand_monomial(forms: tuple[int, ...], m: Monomial, limit: Optional[int] = None) -> set[Monomial]:
    return expand_terms(forms, (m,), limit)


def substitute_terms(g: GroupElement, terms: Iterable[Monomial], limit: Optional[int] = None) -> set[Monomial]:
    perm = g.permutation()
    out: set[Monomial] = set()
    if perm is not None:
        for m in terms:
            e = [0] * g.k
            for i, a in enumerate(m):
                e[perm[i]] = a
            out ^= {tuple(e)}
        return out
    return expand_terms(g.rows, terms, limit)


def substitute(g: GroupElement, p: Polynomial) -> Polynomial:
    if g.k != p.k:
        raise ValueError(f"rank mismatch: group k={g.k}, polynomial k={p.k}")
    return Polynomial(p.k, frozenset(substitute_terms(g, p.terms)))


def transposition(k: int, i: int) -> GroupElement:
    """Swap x_i and x_{i+1} (1-based)."""
    if not 1 <= i <= k - 1:
        raise ValueError(f"transposition index {i} out of range for k={k}")
    rows = [1 << r for r in range(k)]
    rows[i - 1], rows[i] = rows[i], rows[i - 1]
    return GroupElement(k, tuple(rows))


def transvection(k: int) -> GroupElement:
    """x1 -> x1 + x2, other variables fixed."""
    if k < 2:
        raise ValueError("the transvection needs k >= 2")
    rows = [1 << r for r in range(k)]
    rows[0] |= 0b10
    return GroupElement(k, tuple(rows))


def sigma_generators(k: int) -> list[GroupElement]:
    return [transposition(k, i) for i in range(1, k)]


def group_order(k: int) -> int:
    order = 1
    for i in range(k):
        order *= (1 << k) - (1 << i)
    return order


@lru_cache(maxsize=None)
def _enumerate(k: int) -> tuple[GroupElement, ...]:
    out = []
    for rows in itertools.product(range(1, 1 << k), repeat=k):
        if rank_of_rows(rows) == k:
            out.append(GroupElement(k, tuple(rows)))
    return tuple(out)


def enumerate_group(k: int) -> list[GroupElement]:
    """All of GL_k(F2), rows iterated lexicographically. Only k <= 4."""
    if k < 1:
        raise ValueError("k must be positive")
    if k > MAX_ENUMERABLE_RANK:
        raise UnsupportedRankError(f"enumerating GL_{k}(F2) is impractical; k <= {MAX_ENUMERABLE_RANK} only")
    return list(_enumerate(k))
