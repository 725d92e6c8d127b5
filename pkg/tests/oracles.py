"""Slow, independent reference implementations used only by the tests."""
from collections import Counter
from itertools import product

from cohitkit.monomials import Monomial


def poly_mul(a: set, b: set) -> set:
    out = Counter(tuple(x + y for x, y in zip(p, q)) for p in a for q in b)
    return {m for m, c in out.items() if c % 2}


def poly_pow(base: set, e: int, k: int) -> set:
    acc = {(0,) * k}
    for _ in range(e):
        acc = poly_mul(acc, base)
    return acc


def naive_sq(i: int, m: Monomial) -> set:
    """Degree-(|m|+i) part of prod_j (x_j + x_j^2)^{a_j}, by repeated multiplication."""
    k = len(m)
    total = {(0,) * k}
    for j, a in enumerate(m):
        x = tuple(int(t == j) for t in range(k))
        x2 = tuple(2 * int(t == j) for t in range(k))
        total = poly_mul(total, poly_pow({x, x2}, a, k))
    target = sum(m) + i
    return {t for t in total if sum(t) == target}


def naive_rank(rows: list[list[int]]) -> int:
    """Dense Gaussian elimination over lists of 0/1."""
    rows = [r[:] for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][c]:
                rows[r] = [x ^ y for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def all_invertible(k: int):
    """Every invertible k x k matrix over F2, via determinant-free rank test."""
    for flat in product((0, 1), repeat=k * k):
        rows = [list(flat[i * k:(i + 1) * k]) for i in range(k)]
        if naive_rank(rows) == k:
            yield rows


def naive_substitute(rows: list[list[int]], m: Monomial) -> set:
    """x_i -> sum_j rows[i][j] x_j, expanded by plain multiplication."""
    k = len(m)
    acc = {(0,) * k}
    for i, a in enumerate(m):
        form = {tuple(int(t == j) for t in range(k)) for j in range(k) if rows[i][j]}
        acc = poly_mul(acc, poly_pow(form, a, k))
    return acc
