import pytest

from cohitkit.clusters import (
    Cluster,
    InvariantBasis,
    build_weight_graph,
    check_cluster_closure,
    clusters,
    coboundary_column,
    compute_invariants,
    glk_invariants,
    sigma_invariants,
)
from cohitkit.gf2 import BitMatrix, kernel_basis, rank_of_rows
from cohitkit.group import enumerate_group, sigma_generators, substitute, transvection
from cohitkit.monomials import weight
from cohitkit.reducer import reduce

from conftest import load_poly


def global_invariants(cb, group):
    """Invariants of the whole of QP under ``group``, ignoring clusters."""
    cols = []
    for i in range(cb.dim):
        col = 0
        for block, g in enumerate(group):
            col |= coboundary_column(cb, g, 1 << i) << (block * cb.dim)
        cols.append(col)
    return kernel_basis(BitMatrix.from_columns(len(group) * cb.dim, cols))


def in_span(vectors, v):
    return rank_of_rows(list(vectors) + [v]) == rank_of_rows(vectors)


def pipeline(cb):
    parts = clusters(build_weight_graph(cb), cb)
    sig = []
    for c in parts:
        sig.extend(sigma_invariants(c, cb).coords)
    gl = glk_invariants(InvariantBasis("sigma", tuple(sig)), cb).coords
    return parts, sig, list(gl)


def test_weight_graph_vertices(basis_cache):
    cb = basis_cache(3, 7)
    graph = build_weight_graph(cb)
    assert set(graph.vertices) == {weight(m) for m in cb.basis}
    adj = graph.neighbours()
    assert all(v in adj for v in graph.vertices)


def test_clusters_partition_basis(basis_cache):
    cb = basis_cache(4, 14)
    parts = clusters(build_weight_graph(cb), cb)
    idx = sorted(i for c in parts for i in c.basis_indices)
    assert idx == list(range(cb.dim))
    for c in parts:
        check_cluster_closure(c, cb)


def test_closure_check_rejects_a_split_cluster(basis_cache):
    cb = basis_cache(5, 17)
    (big,) = clusters(build_weight_graph(cb), cb)
    leaky = 0
    for w in big.weights:
        piece = Cluster((w,), tuple(i for i in big.basis_indices if weight(cb.basis[i]) == w))
        try:
            check_cluster_closure(piece, cb)
        except AssertionError:
            leaky += 1
    assert leaky >= 1


@pytest.mark.parametrize("k,n", [(4, 32), pytest.param(5, 17, marks=pytest.mark.slow), (4, 14), (3, 7)])
def test_invariants_are_fixed(k, n, basis_cache):
    cb = basis_cache(k, n)
    _, sig, gl = pipeline(cb)
    assert rank_of_rows(sig) == len(sig)
    for v in sig:
        for g in sigma_generators(k):
            assert coboundary_column(cb, g, v) == 0
    for v in gl:
        assert in_span(sig, v)
        assert coboundary_column(cb, transvection(k), v) == 0


@pytest.mark.parametrize("n", [3, 5, 7, 8, 10, 15])
def test_strong_form_k3(n, basis_cache):
    """Cluster + generator route agrees with brute force over all of GL_3."""
    cb = basis_cache(3, n)
    _, sig, gl = pipeline(cb)
    sig_brute = global_invariants(cb, sigma_generators(3))
    gl_brute = global_invariants(cb, enumerate_group(3))
    assert len(sig) == len(sig_brute) and all(in_span(sig_brute, v) for v in sig)
    assert len(gl) == len(gl_brute) and all(in_span(gl_brute, v) for v in gl)


def test_cluster_split_loses_nothing(basis_cache):
    cb = basis_cache(4, 32)
    _, sig, _ = pipeline(cb)
    assert len(sig) == len(global_invariants(cb, sigma_generators(4)))


@pytest.mark.parametrize("k,n,count", [(4, 32, 11), pytest.param(5, 17, 16, marks=pytest.mark.slow)])
def test_printed_sigma_generators_in_span(k, n, count, basis_cache):
    cb = basis_cache(k, n)
    _, sig, _ = pipeline(cb)
    printed = [reduce(cb, load_poly(f"sigma{k}_{i}", k)) for i in range(1, count + 1)]
    assert all(in_span(sig, v) for v in printed)
    assert rank_of_rows(printed) == len(sig) == count


@pytest.mark.parametrize("k,n", [(4, 32), pytest.param(5, 17, marks=pytest.mark.slow)])
def test_printed_gl_generator(k, n, basis_cache):
    cb = basis_cache(k, n)
    _, _, gl = pipeline(cb)
    p = load_poly(f"gl{k}_1", k)
    assert len(gl) == 1
    assert reduce(cb, p) == gl[0]
    assert set(cb.polynomial(gl[0]).terms) == set(p.terms)


def test_printed_gl4_is_fixed_by_every_generator(basis_cache):
    cb = basis_cache(4, 32)
    p = load_poly("gl4_1", 4)
    for g in sigma_generators(4) + [transvection(4)]:
        assert reduce(cb, substitute(g, p) - p) == 0


def test_compute_invariants_report():
    rep = compute_invariants(4, 32)
    assert (rep.basis_size, rep.sigma_dim, rep.gl_dim) == (95, 11, 1)
    assert [(c.dim, c.weights) for c in rep.clusters] == [(95, [[2, 1, 1, 1, 1], [4, 2, 2, 2], [4, 4, 3, 1]])]
    only = compute_invariants(5, 6, sigma_only=True)
    assert only.gl_dim is None and only.sigma_dim == 3


def test_gl_stage_spans_clusters():
    """At (3,3) the only GL-invariant mixes two clusters; per-cluster solving misses it."""
    rep = compute_invariants(3, 3)
    assert len(rep.clusters) == 2
    assert sum(c.gl_dim for c in rep.clusters) == 0
    assert rep.gl_dim == 1
    assert compute_invariants(3, 31).gl_dim == 2
