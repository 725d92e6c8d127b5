"""Global cluster analysis: Sigma_k- then GL_k-invariants of (QP_k)_n.

Weights of basis monomials are joined whenever a transposition sends a
monomial of one weight to a class with a nonzero coordinate on a monomial of
the other. Connected components of that graph span Sigma_k-submodules, so
Sigma_k-invariants are solved cluster by cluster as kernels of coboundary
matrices. The transvection does not preserve clusters, so the GL_k stage is
solved once over the direct sum of all clusters' Sigma_k-invariants.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

from .gf2 import BitMatrix, bits, kernel_basis
from .group import GroupElement, sigma_generators, substitute_terms, transvection
from .monomials import Monomial, Polynomial, WeightVector, weight
from .reducer import CohitBasis, get_cohit_basis
from .report import ClusterSummary, InvariantReport
from .steenrod import count_hit_tasks

log = logging.getLogger(__name__)


@dataclass
class WeightGraph:
    vertices: list[WeightVector]
    edges: set[frozenset[WeightVector]] = field(default_factory=set)

    def neighbours(self) -> dict[WeightVector, set[WeightVector]]:
        adj: dict[WeightVector, set[WeightVector]] = {v: set() for v in self.vertices}
        for e in self.edges:
            if len(e) == 2:
                a, b = tuple(e)
                adj[a].add(b)
                adj[b].add(a)
        return adj


@dataclass(frozen=True)
class Cluster:
    weights: tuple[WeightVector, ...]
    basis_indices: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.basis_indices)


@dataclass(frozen=True)
class InvariantBasis:
    level: str  # "sigma" or "gl"
    coords: tuple[int, ...]  # bit-vectors over the cohit basis

    def polynomials(self, cb: CohitBasis) -> list[Polynomial]:
        return [cb.polynomial(v) for v in self.coords]

    def __len__(self) -> int:
        return len(self.coords)


def coboundary_column(cb: CohitBasis, g: GroupElement, coords: int) -> int:
    """Coordinates of (g - 1)[p] where p is the basis combination ``coords``."""
    terms = {cb.basis[i] for i in bits(coords)}
    return cb.coords_of_terms(substitute_terms(g, terms)) ^ coords


def build_weight_graph(cb: CohitBasis) -> WeightGraph:
    weights = [weight(m) for m in cb.basis]
    vertices = sorted(set(weights))
    graph = WeightGraph(vertices)
    for g in sigma_generators(cb.k):
        for s, m in enumerate(cb.basis):
            image = cb.coords_of_terms(substitute_terms(g, (m,)))
            for i in bits(image):
                graph.edges.add(frozenset((weights[s], weights[i])))
    return graph


def clusters(graph: WeightGraph, cb: CohitBasis) -> list[Cluster]:
    """Connected components (depth first), ordered by their smallest weight."""
    adj = graph.neighbours()
    seen: set[WeightVector] = set()
    comps = []
    for start in graph.vertices:
        if start in seen:
            continue
        stack, comp = [start], []
        seen.add(start)
        while stack:
            v = stack.pop()
            comp.append(v)
            for u in adj[v]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        comps.append(tuple(sorted(comp)))
    out = []
    for comp in comps:
        members = set(comp)
        idx = tuple(i for i, m in enumerate(cb.basis) if weight(m) in members)
        out.append(Cluster(comp, idx))
    return out


def check_cluster_closure(cluster: Cluster, cb: CohitBasis) -> None:
    """Raise if some transposition leaks a cluster monomial out of the cluster."""
    inside = 0
    for i in cluster.basis_indices:
        inside |= 1 << i
    for g in sigma_generators(cb.k):
        for i in cluster.basis_indices:
            image = cb.coords_of_terms(substitute_terms(g, (cb.basis[i],)))
            if image & ~inside:
                raise AssertionError(f"cluster {cluster.weights} is not closed under {g.rows}")


def sigma_invariants(cluster: Cluster, cb: CohitBasis) -> InvariantBasis:
    """Kernel of the stacked (rho_i - 1) blocks, one block of dim(QP) rows per transposition."""
    gens = sigma_generators(cb.k)
    n_total = cb.dim
    columns = []
    for i in cluster.basis_indices:
        col = 0
        for block, g in enumerate(gens):
            col |= coboundary_column(cb, g, 1 << i) << (block * n_total)
        columns.append(col)
    a_sigma = BitMatrix.from_columns(len(gens) * n_total, columns)
    kernel = kernel_basis(a_sigma)
    lifted = []
    for v in kernel:
        lifted.append(sum(1 << cluster.basis_indices[j] for j in bits(v)))
    return InvariantBasis("sigma", tuple(lifted))


def glk_invariants(sigma: InvariantBasis, cb: CohitBasis, extra: Optional[GroupElement] = None) -> InvariantBasis:
    """Restrict to the Sigma_k-invariants and impose invariance under the transvection."""
    if not sigma.coords:
        return InvariantBasis("gl", ())
    if cb.k < 2:
        return InvariantBasis("gl", sigma.coords)
    g = extra or transvection(cb.k)
    columns = [coboundary_column(cb, g, s) for s in sigma.coords]
    kernel = kernel_basis(BitMatrix.from_columns(cb.dim, columns))
    out = []
    for v in kernel:
        acc = 0
        for j in bits(v):
            acc ^= sigma.coords[j]
        out.append(acc)
    return InvariantBasis("gl", tuple(out))


def _sorted_generators(cb: CohitBasis, inv: InvariantBasis) -> list[str]:
    return [str(p) for p in inv.polynomials(cb)]


def compute_invariants(
    k: int,
    n: int,
    cache_dir=None,
    workers: int = 1,
    sigma_only: bool = False,
    progress: Optional[Callable[[str], None]] = None,
) -> InvariantReport:
    say = progress or (lambda msg: None)
    timings: dict[str, float] = {}

    t0 = time.perf_counter()
    say(f"--> Computing basis and reducer for k={k}, d={n}...")
    say(f"    - Building hit matrix with {count_hit_tasks(k, n) if n >= 1 else 0} tasks...")
    cb, cache_hit = get_cohit_basis(k, n, cache_dir, workers)
    say(f"    - Processing {len(cb.reducer)} decomposition tasks...")
    say(f"--> Found global admissible basis with {cb.dim} monomials.")
    timings["basis"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    say("    - Building weight space interaction graph...")
    graph = build_weight_graph(cb)
    parts = clusters(graph, cb)
    for c in parts:
        check_cluster_closure(c, cb)
    say(f"  - Found {len(parts)} independent cluster(s) of interacting weight spaces.")
    timings["graph"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    sigma_all: list[int] = []
    gl_all: list[int] = []
    summaries = []
    for num, c in enumerate(parts, start=1):
        say(f"  -- Analyzing Cluster {num} (dim={c.dim}, weights={list(c.weights)})...")
        sig = sigma_invariants(c, cb)
        say(f"     - Found {len(sig)} Sigma_{k}-invariants.")
        sigma_all.extend(sig.coords)
        gl_dim = None
        if not sigma_only:
            gl = glk_invariants(sig, cb)
            say(f"     - Found {len(gl)} GL_{k}-invariants.")
            gl_all.extend(gl.coords)
            gl_dim = len(gl)
        summaries.append(ClusterSummary(c.dim, [list(w) for w in c.weights], len(sig), gl_dim))

    sigma_basis = InvariantBasis("sigma", tuple(sigma_all))
    gl_basis = InvariantBasis("gl", ())
    if not sigma_only:
        # rho_k does not preserve clusters: a GL-invariant may mix Sigma-invariants
        # of several clusters, so the final stage runs on their direct sum.
        gl_basis = glk_invariants(sigma_basis, cb) if len(parts) > 1 else InvariantBasis("gl", tuple(gl_all))
        if len(parts) > 1:
            say(f"  -- Combined GL_{k} stage over {len(parts)} clusters: {len(gl_basis)} invariant(s).")
    timings["invariants"] = time.perf_counter() - t0
    return InvariantReport(
        k=k,
        n=n,
        basis_size=cb.dim,
        clusters=summaries,
        sigma_dim=len(sigma_all),
        gl_dim=None if sigma_only else len(gl_basis),
        sigma_generators=_sorted_generators(cb, sigma_basis),
        gl_generators=[] if sigma_only else _sorted_generators(cb, gl_basis),
        timings=timings,
        cache_hit=cache_hit,
    )
