import logging
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cohitkit.monomials import Polynomial, enumerate_monomials
from cohitkit.reducer import (
    CacheChecksumError,
    CacheTruncatedError,
    CacheVersionError,
    build_cohit_basis,
    cache_path,
    deserialize,
    get_cohit_basis,
    is_hit,
    load_cache,
    reduce,
    save_cache,
    serialize,
)
from cohitkit.steenrod import sq_terms

from oracles import naive_rank


def hit_space_rows(k, n):
    """Dense rows of every Sq^i image, i = 1..n, all sources."""
    order = enumerate_monomials(k, n)
    col = {m: c for c, m in enumerate(order)}
    rows = []
    for i in range(1, n + 1):
        for src in enumerate_monomials(k, n - i):
            row = [0] * len(order)
            for t in sq_terms(i, src):
                row[col[t]] ^= 1
            rows.append(row)
    return order, rows


def oracle_is_hit(k, n, terms, rows):
    order = enumerate_monomials(k, n)
    v = [int(m in terms) for m in order]
    return naive_rank(rows + [v]) == naive_rank(rows)


def test_brute_force_k2_n2():
    cb = build_cohit_basis(2, 2)
    assert cb.basis == ((1, 1),)
    assert cb.reducer == {(2, 0): 0, (0, 2): 0}


@pytest.mark.parametrize(
    "k,n,dim",
    [(2, 3, 3), (2, 7, 3), (2, 15, 3), (2, 10, 2), (3, 3, 7), (3, 7, 10), (3, 15, 13), (3, 31, 14)],
)
def test_known_dimensions(k, n, dim):
    assert build_cohit_basis(k, n).dim == dim


@pytest.mark.parametrize("k,n", [(1, 1), (1, 4), (2, 5), (2, 8), (3, 5), (3, 8), (4, 4)])
def test_dimension_matches_full_algebra_oracle(k, n):
    _, rows = hit_space_rows(k, n)
    assert build_cohit_basis(k, n).dim == comb(n + k - 1, k - 1) - naive_rank(rows)


@pytest.mark.parametrize("k,n", [(2, 6), (3, 7), (3, 6)])
def test_reducer_invariant(k, n):
    """m + reducer[m] is hit, for every pivot monomial m."""
    cb = build_cohit_basis(k, n)
    _, rows = hit_space_rows(k, n)
    assert len(cb.basis) + len(cb.reducer) == len(cb.monomial_order)
    for m, coords in cb.reducer.items():
        terms = {m} ^ set(cb.polynomial(coords).terms)
        assert oracle_is_hit(k, n, terms, rows)


@settings(max_examples=50, deadline=None)
@given(st.data())
def test_linearity_and_hit_agreement(data):
    k, n = 3, 7
    cb = build_cohit_basis(k, n)
    order = cb.monomial_order
    pick = st.frozensets(st.sampled_from(order), max_size=10).map(lambda s: Polynomial(k, s))
    p, q = data.draw(pick), data.draw(pick)
    assert reduce(cb, p + q) == reduce(cb, p) ^ reduce(cb, q)
    _, rows = hit_space_rows(k, n)
    assert is_hit(cb, p) == oracle_is_hit(k, n, set(p.terms), rows)


def test_reduce_rejects_wrong_shape():
    cb = build_cohit_basis(2, 3)
    with pytest.raises(ValueError):
        reduce(cb, Polynomial.from_terms(3, [(1, 1, 1)]))
    with pytest.raises(ValueError):
        reduce(cb, Polynomial.from_terms(2, [(1, 1)]))


def test_sq_image_is_hit():
    cb = build_cohit_basis(3, 7)
    for src in enumerate_monomials(3, 4):
        for i in (1, 2, 3):
            if sum(src) + i == 7:
                assert is_hit(cb, Polynomial(3, frozenset(sq_terms(i, src))))


def test_parallel_build_is_identical():
    assert build_cohit_basis(4, 14, workers=3) == build_cohit_basis(4, 14, workers=1)


def test_cache_round_trip(tmp_path):
    cb = build_cohit_basis(3, 15)
    assert deserialize(serialize(cb)) == cb
    save_cache(cb, tmp_path)
    assert load_cache(3, 15, tmp_path) == cb
    assert load_cache(3, 16, tmp_path) is None
    again, hit = get_cohit_basis(3, 15, tmp_path)
    assert hit and again == cb


def test_cache_corruption_detected():
    blob = serialize(build_cohit_basis(3, 7))
    with pytest.raises(CacheVersionError):
        deserialize(b"XOHIT01" + blob[7:])
    with pytest.raises(CacheTruncatedError):
        deserialize(blob[:-20])
    with pytest.raises(CacheTruncatedError):
        deserialize(blob[:10])
    flipped = bytearray(blob)
    flipped[40] ^= 1
    with pytest.raises(CacheChecksumError):
        deserialize(bytes(flipped))


def test_corrupt_cache_is_rebuilt(tmp_path, caplog):
    cb = build_cohit_basis(2, 7)
    path = save_cache(cb, tmp_path)
    path.write_bytes(path.read_bytes()[:-3])
    with caplog.at_level(logging.WARNING):
        again, hit = get_cohit_basis(2, 7, tmp_path)
    assert not hit and again == cb
    assert "corrupt cache" in caplog.text
    assert load_cache(2, 7, tmp_path) == cb
    assert cache_path(2, 7, tmp_path).name == "cohit_k2_n7.bin"
