#!/usr/bin/env python3
"""Coinvariant table for k = 2, 3 by the h-orbit method, next to dim (QP_k)_n and dim (QP_k)^GL_n."""
from __future__ import annotations

import argparse
from dataclasses import dataclass, field

from cohitkit import coinvariant_dim, compute_invariants


@dataclass
class TableConfig:
    cases: list[tuple[int, int]] = field(
        default_factory=lambda: [(2, 3), (2, 10), (3, 3), (3, 7), (3, 15), (3, 31)]
    )
    single_orbit: bool = False
    compare_invariants: bool = True


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k3-upto", type=int, help="sweep every valid k=3 degree up to this bound instead")
    ap.add_argument("--single-orbit", action="store_true")
    ap.add_argument("--no-compare", action="store_true", help="skip the cluster-invariant cross-check")
    args = ap.parse_args()
    cfg = TableConfig(single_orbit=args.single_orbit, compare_invariants=not args.no_compare)
    if args.k3_upto is not None:
        cfg.cases = [(3, n) for n in range(1, args.k3_upto + 1)]

    print(f"{'k':>2} {'n':>3} {'orbits':<28} {'W':>3} {'D':>3} {'coinv':>5} {'QP':>4} {'GL':>3}")
    for k, n in cfg.cases:
        rep = coinvariant_dim(k, n, all_orbits=not cfg.single_orbit)
        if not rep.params:
            continue
        w = sum(o.dim_W for o in rep.orbits)
        d = sum(o.dim_D for o in rep.orbits)
        qp = gl = ""
        if cfg.compare_invariants:
            inv = compute_invariants(k, n)
            qp, gl = inv.basis_size, inv.gl_dim
        orbits = " ".join(str(tuple(p)) for p in rep.params)
        print(f"{k:>2} {n:>3} {orbits:<28} {w:>3} {d:>3} {rep.total:>5} {qp:>4} {gl:>3}")


if __name__ == "__main__":
    main()
