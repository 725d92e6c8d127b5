"""Steenrod squares acting on F2[x1, ..., xk] and the hit-space generators."""

from __future__ import annotations

from math import comb
from typing import Iterable, Iterator, NamedTuple

from .monomials import Monomial, Polynomial, enumerate_monomials


def binom_odd(d: int, i: int) -> bool:
    """C(d, i) mod 2 by Lucas: odd iff the bits of i sit inside the bits of d."""
    return 0 <= i <= d and (i & (d - i)) == 0


def _increments(a: int, budget: int) -> list[int]:
    # j with C(a, j) odd are exactly the submasks of a.
    out = []
    sub = a
    while True:
        if sub <= budget:
            out.append(sub)
        if sub == 0:
            break
        sub = (sub - 1) & a
    return out


def sq_terms(i: int, m: Monomial) -> set[Monomial]:
    """Sq^i(m) as a raw term set, by the Cartan formula folded over the variables."""
    if i == 0:
        return {m}
    if i > sum(m):
        return set()
    k = len(m)
    # Suffix sums bound what the remaining variables can still absorb.
    room = [0] * (k + 1)
    for v in range(k - 1, -1, -1):
        room[v] = room[v + 1] + m[v]
    result: set[Monomial] = set()
    prefix = list(m)

    def walk(v: int, left: int) -> None:
        if v == k:
            if left == 0:
                result.symmetric_difference_update((tuple(prefix),))
            return
        if left > room[v]:
            return
        a = m[v]
        for j in _increments(a, left):
            prefix[v] = a + j
            walk(v + 1, left - j)
        prefix[v] = a

    walk(0, i)
    return result


def sq_monomial(i: int, m: Monomial) -> Polynomial:
    if i < 0:
        raise ValueError("Steenrod square index must be non-negative")
    return Polynomial(len(m), frozenset(sq_terms(i, m)))


def sq_polynomial(i: int, p: Polynomial) -> Polynomial:
    acc: set[Monomial] = set()
    for m in p.terms:
        acc ^= sq_terms(i, m)
    return Polynomial(p.k, frozenset(acc))


class HitTask(NamedTuple):
    """Apply ``Sq^(2^s)`` to ``source``."""

    s: int
    source: Monomial


def hit_tasks(k: int, n: int) -> Iterator[HitTask]:
    """One task per (s, g) with 2^s <= n and g of degree n - 2^s, s ascending."""
    s = 0
    while (1 << s) <= n:
        for g in enumerate_monomials(k, n - (1 << s)):
            yield HitTask(s, g)
        s += 1


def count_hit_tasks(k: int, n: int) -> int:
    total = 0
    s = 0
    while (1 << s) <= n:
        total += comb(n - (1 << s) + k - 1, k - 1)
        s += 1
    return total


def evaluate_hit_task(task: HitTask) -> Polynomial:
    return sq_monomial(1 << task.s, task.source)


def evaluate_hit_tasks(tasks: Iterable[HitTask]) -> list[set[Monomial]]:
    return [sq_terms(1 << t.s, t.source) for t in tasks]
