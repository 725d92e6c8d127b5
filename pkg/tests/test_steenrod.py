import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cohitkit.gf2 import rank_of_rows
from cohitkit.monomials import Polynomial, enumerate_monomials
from cohitkit.steenrod import (
    binom_odd,
    count_hit_tasks,
    hit_tasks,
    sq_monomial,
    sq_polynomial,
    sq_terms,
)

from oracles import naive_sq

small_monomials = st.integers(1, 3).flatmap(lambda k: st.tuples(*[st.integers(0, 7)] * k))


def test_binom_odd():
    assert binom_odd(5, 1) and binom_odd(5, 4) and not binom_odd(5, 2)
    assert binom_odd(7, 3) and not binom_odd(3, 5)


def test_examples():
    assert sq_terms(1, (1, 0)) == {(2, 0)}
    assert sq_terms(1, (1, 1)) == {(2, 1), (1, 2)}
    assert sq_terms(2, (3,)) == {(5,)}
    assert sq_terms(1, (2,)) == set()
    assert sq_terms(0, (2, 5)) == {(2, 5)}


@settings(max_examples=300, deadline=None)
@given(small_monomials, st.integers(0, 9))
def test_matches_total_square_oracle(m, i):
    assert sq_terms(i, m) == naive_sq(i, m)


@given(small_monomials)
def test_unstable(m):
    d = sum(m)
    assert sq_terms(d, m) == {tuple(2 * a for a in m)}
    assert sq_terms(d + 1, m) == set()


@settings(deadline=None)
@given(small_monomials)
def test_adem_relations(m):
    p = Polynomial.from_terms(len(m), [m])
    sq = sq_polynomial
    assert sq(1, sq(1, p)) == Polynomial.zero(len(m))
    assert sq(1, sq(2, p)) == sq(3, p)
    assert sq(2, sq(2, p)) == sq(3, sq(1, p))


@given(small_monomials, small_monomials)
def test_cartan(a, b):
    k = min(len(a), len(b))
    a, b = a[:k], b[:k]
    prod = tuple(x + y for x, y in zip(a, b))
    for i in range(4):
        lhs = sq_monomial(i, prod)
        rhs = Polynomial.zero(k)
        for j in range(i + 1):
            for s in sq_terms(j, a):
                for t in sq_terms(i - j, b):
                    rhs = rhs + Polynomial.from_terms(k, [tuple(x + y for x, y in zip(s, t))])
        assert lhs == rhs


@pytest.mark.parametrize("k,n,count", [(4, 32, 19830), (5, 17, 11821)])
def test_task_counts(k, n, count):
    assert count_hit_tasks(k, n) == count
    assert sum(1 for _ in hit_tasks(k, n)) == count


def test_task_order():
    tasks = list(hit_tasks(2, 4))
    assert [t.s for t in tasks] == sorted(t.s for t in tasks)
    assert tasks[0] == (0, (3, 0))


def _span_rank(n, k, steps):
    index = {m: c for c, m in enumerate(enumerate_monomials(k, n))}
    rows = []
    for i in steps:
        for src in enumerate_monomials(k, n - i):
            rows.append(sum(1 << index[t] for t in sq_terms(i, src)))
    return rank_of_rows(rows)


@pytest.mark.parametrize("k", [1, 2, 3])
@pytest.mark.parametrize("n", range(1, 11))
def test_two_power_squares_suffice(k, n):
    twos = [1 << s for s in range(n.bit_length()) if 1 << s <= n]
    assert _span_rank(n, k, twos) == _span_rank(n, k, range(1, n + 1))
