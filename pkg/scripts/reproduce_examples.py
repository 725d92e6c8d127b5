#!/usr/bin/env python3
"""Reproduce the worked Global Cluster Analysis examples and print a summary table."""
from __future__ import annotations

import argparse
import json
import time
from dataclasses import asdict, dataclass, field

from cohitkit import compute_invariants


@dataclass
class ExampleConfig:
    cases: list[tuple[int, int]] = field(default_factory=lambda: [(4, 14), (4, 32), (5, 6), (5, 17)])
    workers: int = 1
    cache_dir: str | None = None
    show_generators: bool = False


def run(cfg: ExampleConfig) -> list[dict]:
    rows = []
    for k, n in cfg.cases:
        t0 = time.perf_counter()
        rep = compute_invariants(k, n, cache_dir=cfg.cache_dir, workers=cfg.workers)
        rows.append(
            {
                "k": k,
                "n": n,
                "basis": rep.basis_size,
                "clusters": len(rep.clusters),
                "sigma": rep.sigma_dim,
                "gl": rep.gl_dim,
                "seconds": round(time.perf_counter() - t0, 2),
                "gl_generators": rep.gl_generators,
            }
        )
    return rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--case", action="append", metavar="K,N", help="override the case list (repeatable)")
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--cache-dir")
    ap.add_argument("--generators", action="store_true", help="print GL generators")
    ap.add_argument("--json", action="store_true", help="emit JSON instead of a table")
    args = ap.parse_args()
    cfg = ExampleConfig(workers=args.workers, cache_dir=args.cache_dir, show_generators=args.generators)
    if args.case:
        cfg.cases = [tuple(int(x) for x in c.split(",")) for c in args.case]
    rows = run(cfg)
    if args.json:
        print(json.dumps({"config": asdict(cfg), "rows": rows}, indent=2))
        return
    print(f"{'k':>2} {'n':>3} {'dim QP':>7} {'clusters':>8} {'Sigma':>6} {'GL':>3} {'time':>7}")
    for r in rows:
        print(f"{r['k']:>2} {r['n']:>3} {r['basis']:>7} {r['clusters']:>8} {r['sigma']:>6} {r['gl']:>3} {r['seconds']:>6.2f}s")
        if cfg.show_generators:
            for g in r["gl_generators"]:
                print(f"      [{g}]")


if __name__ == "__main__":
    main()
