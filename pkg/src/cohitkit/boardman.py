"""GL_k-coinvariants of primitive homology for k = 2, 3 via h-orbit symbols.

The primitives W are realised in the truncated ring F2[x1..xk]/(x_i^(2^l))
as the span of the GL_k-orbit of a symbol monomial; the coinvariants are
W modulo the span D of all differences w - g.w, so dim = dim W - dim D.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .gf2 import Echelonizer, bits, rank_of_rows
from .group import GroupElement, enumerate_group, expand_monomial, substitute_terms
from .monomials import Monomial, order_key
from .report import BoardmanReport, OrbitSummary

DEFAULT_L_OFFSET = 8

Terms = frozenset  # frozenset[Monomial], a polynomial in the truncated ring


class UnsupportedBoardmanRank(ValueError):
    pass


def _check_k(k: int) -> None:
    if k not in (2, 3):
        raise UnsupportedBoardmanRank(f"only k = 2, 3 are supported, got k={k}")


def identify_params(k: int, n: int) -> list[tuple[int, ...]]:
    """h-orbit parameters: (s, t) for k=2, (s, t, u) for k=3; [] for an invalid degree."""
    _check_k(k)
    if k == 2:
        val = n + 2
        if val <= 0:
            return []
        t = (val & -val).bit_length() - 1
        odd = val >> t
        if odd == 1:
            # n + 2 = 2^(t+1) = 2^t * (1 + 2^0)
            return [(0, t - 1)] if t >= 1 else []
        m = odd - 1
        if m & (m - 1):
            return []
        return [(m.bit_length() - 1, t)]

    val = n + 3
    if val <= 0:
        return []
    powers = sorted(bits(val), reverse=True)
    if len(powers) == 3:
        a, b, c = powers
        u, t, s = c, b - c, a - b
        if s == 0 and u > 0:
            return [(t + 2, 0, u - 1)]
        return [(s, t, u)]
    if len(powers) == 2:
        a, b = powers
        if b == 0:
            return []
        return [(a - b + 1, 0, b - 1)]
    if len(powers) == 1:
        a = powers[0]
        return [(0, 0, a - 1)] if a >= 2 else []
    return []


def default_l(params: Sequence[int]) -> int:
    return sum(params) + DEFAULT_L_OFFSET


def symbol_exponents(params: Sequence[int], l: int) -> Monomial:
    if len(params) == 2:
        s, t = params
        shifts = (t, s + t)
    else:
        s, t, u = params
        shifts = (u, t + u, s + t + u)
    if l <= max(shifts):
        raise ValueError(f"truncation level l={l} too small for parameters {tuple(params)}")
    return tuple((1 << l) - (1 << e) for e in shifts)


def build_symbol(params: Sequence[int], g: GroupElement, l: int) -> Terms:
    """prod_i (new_basis_i)^(e_i) with new_basis = (g^-1)^T . (x1..xk), truncated at 2^l."""
    exps = symbol_exponents(params, l)
    if len(exps) != g.k:
        raise ValueError("parameter count does not match the group rank")
    forms = g.inverse().transpose().rows
    return frozenset(expand_monomial(forms, exps, 1 << l))


def _rank_and_basis(polys: Sequence[Terms]) -> tuple[int, list[Terms]]:
    support = sorted({m for p in polys for m in p}, key=order_key, reverse=True)
    col = {m: c for c, m in enumerate(support)}
    ech = Echelonizer(len(support))
    for p in polys:
        v = 0
        for m in p:
            v ^= 1 << col[m]
        ech.add(v)
    ech.back_substitute()
    basis = [frozenset(support[c] for c in bits(ech.pivots[p])) for p in sorted(ech.pivots)]
    return ech.rank, basis


def dim_W(params: Sequence[int], l: int, group: Sequence[GroupElement]) -> tuple[int, list[Terms]]:
    orbit = [build_symbol(params, g, l) for g in group]
    return _rank_and_basis(orbit)


def difference_polys(W_basis: Sequence[Terms], group: Sequence[GroupElement], l: int) -> list[Terms]:
    """Distinct nonzero w - g.w, in first-seen order."""
    seen: dict[Terms, None] = {}
    limit = 1 << l
    for w in W_basis:
        for g in group:
            diff = frozenset(w ^ substitute_terms(g, w, limit))
            if diff:
                seen.setdefault(diff, None)
    return list(seen)


def dim_D(W_basis: Sequence[Terms], group: Sequence[GroupElement], l: int) -> tuple[int, int]:
    """(rank of the difference span, number of distinct difference polynomials)."""
    diffs = difference_polys(W_basis, group, l)
    if not diffs:
        return 0, 0
    rank, _ = _rank_and_basis(diffs)
    return rank, len(diffs)


@dataclass(frozen=True)
class OrbitAnalysis:
    params: tuple[tuple[int, ...], ...]
    l: int
    dim_W: int
    dim_D: int
    W_basis: tuple[Terms, ...]
    difference_count: int

    @property
    def coinvariant_dim(self) -> int:
        return self.dim_W - self.dim_D


def _matmul_rows(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    out = []
    for r in a:
        acc = 0
        for j in bits(r):
            acc ^= b[j]
        out.append(acc)
    return tuple(out)


def h_orbits(k: int, n: int) -> list[tuple[int, ...]]:
    """Every parameter tuple whose symbol has homology degree n.

    k=2: n = 2^t + 2^(s+t) - 2; k=3: n = 2^u + 2^(t+u) + 2^(s+t+u) - 3. The
    tuple :func:`identify_params` picks comes first, the rest ascending.
    """
    _check_k(k)
    found = []
    top = max(n + k, 1).bit_length()
    if k == 2:
        for t in range(top + 1):
            for s in range(top + 1 - t):
                if (1 << t) + (1 << (s + t)) - 2 == n:
                    found.append((s, t))
    else:
        for u in range(top + 1):
            for t in range(top + 1 - u):
                for s in range(top + 1 - u - t):
                    if (1 << u) + (1 << (t + u)) + (1 << (s + t + u)) - 3 == n:
                        found.append((s, t, u))
    first = [p for p in identify_params(k, n) if p in found]
    return first + sorted(p for p in found if p not in first)


def analyze_orbits(
    params_list: Sequence[Sequence[int]], l: int, group: Sequence[GroupElement]
) -> OrbitAnalysis:
    """dim W and dim D for the span of the orbits of all listed symbols.

    W is the row space of the orbit polynomials. g.w for a W-basis vector is
    obtained by linearity: each orbit polynomial is sent by g to another
    orbit polynomial, so only the symbols themselves are ever expanded.
    """
    group = list(group)
    slot = {g.inverse().transpose().rows: i for i, g in enumerate(group)}
    entries: list[Terms] = []
    for params in params_list:
        entries.extend(build_symbol(params, g, l) for g in group)
    support = sorted({m for p in entries for m in p}, key=order_key, reverse=True)
    col = {m: c for c, m in enumerate(support)}
    ncols = len(support)
    vecs = []
    for p in entries:
        v = 0
        for m in p:
            v ^= 1 << col[m]
        vecs.append(v)

    # Row reduction with the orbit-entry combination carried above the columns.
    ech = Echelonizer(ncols)
    for i, v in enumerate(vecs):
        ech.add(v | (1 << (ncols + i)))
    ech.back_substitute()
    low = (1 << ncols) - 1
    w_rows = [ech.pivots[c] for c in sorted(ech.pivots) if c < ncols]
    dim_w = len(w_rows)

    # g sends the entry built from A_h = (h^-1)^T to the entry built from g * A_h.
    size = len(group)
    a_rows = [h.inverse().transpose().rows for h in group]
    perms = []
    for g in group:
        # g * A = A @ g (composition of substitutions), on raw rows.
        perms.append([slot[_matmul_rows(a, g.rows)] for a in a_rows])

    diffs: dict[int, None] = {}
    for row in w_rows:
        w = row & low
        combo = bits(row >> ncols)
        for perm in perms:
            gw = 0
            for e in combo:
                block, h = divmod(e, size)
                gw ^= vecs[block * size + perm[h]]
            if gw != w:
                diffs.setdefault(w ^ gw, None)
    dim_d = rank_of_rows(diffs)
    basis = tuple(frozenset(support[c] for c in bits(r & low)) for r in w_rows)
    return OrbitAnalysis(tuple(tuple(p) for p in params_list), l, dim_w, dim_d, basis, len(diffs))


def analyze_orbit(params: Sequence[int], l: int, group: Sequence[GroupElement]) -> OrbitAnalysis:
    return analyze_orbits([params], l, group)


def coinvariant_dim(
    k: int,
    n: int,
    l_override: Optional[int] = None,
    l_offset: int = DEFAULT_L_OFFSET,
    all_orbits: bool = True,
    progress: Optional[Callable[[str], None]] = None,
) -> BoardmanReport:
    """Coinvariant dimension at (k, n).

    With ``all_orbits`` (the default) W is the joint span of every h-orbit of
    degree n, computed in one truncated ring. Otherwise only the parameters
    of :func:`identify_params` are used, each orbit analysed on its own and
    the per-orbit dimensions summed.
    """
    say = progress or (lambda msg: None)
    _check_k(k)
    t0 = time.perf_counter()
    params_list = h_orbits(k, n) if all_orbits else identify_params(k, n)
    if not params_list:
        return BoardmanReport(k, n, [], [], 0, note="invalid degree", timings={"total": time.perf_counter() - t0})
    group = enumerate_group(k)
    say(f"-> Found {len(params_list)} h-orbit(s) with parameters: {params_list}")
    if all_orbits:
        groups = [params_list]
    else:
        groups = [[p] for p in params_list]
    orbits = []
    for plist in groups:
        lv = l_override if l_override is not None else max(sum(p) for p in plist) + l_offset
        res = analyze_orbits(plist, lv, group)
        say(f"-> {plist}, l={lv}: dim(W) = {res.dim_W}, dim(D) = {res.dim_D}")
        orbits.append(
            OrbitSummary([list(p) for p in plist], lv, res.dim_W, res.dim_D, res.coinvariant_dim, res.difference_count)
        )
    total = sum(o.coinvariant_dim for o in orbits)
    return BoardmanReport(
        k, n, [list(p) for p in params_list], orbits, total, timings={"total": time.perf_counter() - t0}
    )
