#!/usr/bin/env python3
"""Rank of the Kameko map (QP_k)_n -> (QP_k)_{(n-k)/2} over a range of degrees."""
from __future__ import annotations

import argparse
from dataclasses import dataclass

from cohitkit.cli import kameko_rank


@dataclass
class KamekoConfig:
    k: int = 4
    n_max: int = 40
    workers: int = 1
    cache_dir: str | None = None


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", type=int, default=KamekoConfig.k)
    ap.add_argument("--n-max", type=int, default=KamekoConfig.n_max)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--cache-dir")
    a = ap.parse_args()
    cfg = KamekoConfig(a.k, a.n_max, a.workers, a.cache_dir)
    print(f"{'n':>4} {'m':>4} {'dim QP_n':>9} {'dim QP_m':>9} {'rank':>5} {'ker':>5} epi")
    for n in range(cfg.k, cfg.n_max + 1, 2):
        r = kameko_rank(cfg.k, n, cfg.cache_dir, cfg.workers)
        print(
            f"{n:>4} {r['target_degree']:>4} {r['source_dim']:>9} {r['target_dim']:>9} "
            f"{r['rank']:>5} {r['kernel_dim']:>5} {'yes' if r['epimorphism'] else 'no'}"
        )


if __name__ == "__main__":
    main()
