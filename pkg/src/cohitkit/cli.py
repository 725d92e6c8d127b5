"""Command-line entry point: ``cohitkit {invariants,boardman,verify,kameko}``."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

from .boardman import DEFAULT_L_OFFSET, UnsupportedBoardmanRank, coinvariant_dim
from .clusters import compute_invariants
from .gf2 import BitMatrix, rank
from .group import UnsupportedRankError, enumerate_group, sigma_generators, substitute_terms, transvection
from .monomials import PolynomialParseError, kameko_down, parse_polynomial
from .reducer import CacheError, get_cohit_basis

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_CACHE = 4
EXIT_UNSUPPORTED = 5

BANNER = "=" * 80


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _cache_dir(arg: Optional[str]) -> Optional[Path]:
    raw = arg if arg is not None else os.environ.get("COHIT_CACHE_DIR")
    if not raw:
        return None
    path = Path(raw)
    try:
        path.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise CliError(f"cannot use cache directory {path}: {exc}", EXIT_CACHE) from exc
    if not os.access(path, os.R_OK | os.W_OK | os.X_OK):
        raise CliError(f"cache directory {path} is not readable and writable", EXIT_CACHE)
    return path


def _threads(arg: Optional[int]) -> int:
    if arg is None:
        return os.cpu_count() or 1
    if arg < 1:
        raise CliError("--threads must be at least 1", EXIT_USAGE)
    return arg


def _check_kn(k: int, n: int) -> None:
    if k < 1 or n < 0:
        raise CliError(f"need k >= 1 and n >= 0, got k={k}, n={n}", EXIT_USAGE)


def _write_json(path: str, text: str) -> None:
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc}", EXIT_USAGE) from exc


def cmd_invariants(args: argparse.Namespace) -> int:
    k, n = args.k, args.n
    _check_kn(k, n)
    cache = _cache_dir(args.cache_dir)
    workers = _threads(args.threads)
    start = time.perf_counter()
    title = f"STARTING GLOBAL ANALYSIS FOR THE COMPUTATION OF (QP_k)^{{GL_k(F_2)}}_n WITH k = {k}, n = {n}"
    print(BANNER)
    print(title)
    print(BANNER)
    print()
    print("[PHASE I] Computing/Loading Admissible Basis and Reducer...")

    def progress(msg: str) -> None:
        if msg.startswith("    - Building weight"):
            print()
            print("[PHASE II] Finding invariants by analyzing interacting weight-space clusters...")
        print(msg)

    try:
        report = compute_invariants(k, n, cache, workers, sigma_only=args.sigma_only, progress=progress)
    except CacheError as exc:
        raise CliError(f"cache error: {exc}", EXIT_CACHE) from exc
    print(report.render())
    print("ENTIRE COMPUTATION PROCESS COMPLETED")
    print(f"Total execution time: {time.perf_counter() - start:.2f} seconds")
    print(BANNER)
    if args.json:
        _write_json(args.json, report.to_json(timings=args.json_timings))
    return EXIT_OK


def cmd_boardman(args: argparse.Namespace) -> int:
    try:
        report = coinvariant_dim(
            args.k,
            args.n,
            l_override=args.l,
            l_offset=args.l_offset,
            all_orbits=not args.single_orbit,
        )
    except (UnsupportedBoardmanRank, UnsupportedRankError) as exc:
        raise CliError(str(exc), EXIT_UNSUPPORTED) from exc
    except ValueError as exc:
        raise CliError(str(exc), EXIT_USAGE) from exc
    print(report.render())
    if args.json:
        _write_json(args.json, report.to_json(timings=args.json_timings))
    return EXIT_OK


def verify_polynomial(k: int, n: int, text: str, cache: Optional[Path] = None, workers: int = 1) -> dict:
    """Hit / invariance checks for one polynomial, all modulo hits."""
    p = parse_polynomial(text, k)
    d = p.degree()
    if d is not None and d != n:
        raise ValueError(f"polynomial has degree {d}, expected {n}")
    cb, _ = get_cohit_basis(k, n, cache, workers)
    coords = cb.coords_of_terms(p.terms)

    def fixed(g) -> bool:
        return cb.coords_of_terms(substitute_terms(g, p.terms)) == coords

    result = {
        "hit": coords == 0,
        "sigma": {f"rho_{i}": fixed(g) for i, g in enumerate(sigma_generators(k), start=1)},
    }
    if k >= 2:
        result["gl_generator"] = fixed(transvection(k))
    if k <= 3:
        result["gl_full_group"] = all(fixed(g) for g in enumerate_group(k))
    return result


def cmd_verify(args: argparse.Namespace) -> int:
    _check_kn(args.k, args.n)
    cache = _cache_dir(args.cache_dir)
    try:
        text = Path(args.file).read_text() if args.file != "-" else sys.stdin.read()
    except OSError as exc:
        raise CliError(f"cannot read {args.file}: {exc}", EXIT_USAGE) from exc
    try:
        res = verify_polynomial(args.k, args.n, text, cache, _threads(args.threads))
    except PolynomialParseError as exc:
        raise CliError(f"parse error: {exc}", EXIT_PARSE) from exc
    except ValueError as exc:
        raise CliError(str(exc), EXIT_PARSE) from exc
    yes = {True: "yes", False: "no"}
    k = args.k
    print(f"Checks for a degree-{args.n} polynomial in k={k} variables (modulo hits):")
    print(f"  hit: {yes[res['hit']]}")
    sigma_ok = all(res["sigma"].values())
    for name, ok in res["sigma"].items():
        print(f"  fixed by {name}: {yes[ok]}")
    print(f"  Sigma_{k}-invariant: {yes[sigma_ok]}")
    ok = sigma_ok
    if "gl_generator" in res:
        gl_ok = sigma_ok and res["gl_generator"]
        print(f"  fixed by transvection x1 -> x1 + x2: {yes[res['gl_generator']]}")
        print(f"  GL_{k}-invariant: {yes[gl_ok]}")
        ok = gl_ok
    if "gl_full_group" in res:
        print(f"  fixed by every element of GL_{k}: {yes[res['gl_full_group']]}")
        ok = ok and res["gl_full_group"]
    if args.json:
        _write_json(args.json, json.dumps(res, indent=2) + "\n")
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def kameko_rank(k: int, n: int, cache: Optional[Path] = None, workers: int = 1) -> dict:
    if n < k or (n - k) % 2:
        raise ValueError(f"the Kameko map needs n >= k and n - k even, got k={k}, n={n}")
    m = (n - k) // 2
    source, _ = get_cohit_basis(k, n, cache, workers)
    target, _ = get_cohit_basis(k, m, cache, workers)
    columns = []
    for b in source.basis:
        down = kameko_down(b)
        columns.append(target.coords_of_terms((down,)) if down is not None else 0)
    r = rank(BitMatrix.from_columns(target.dim, columns)) if columns else 0
    return {
        "k": k,
        "n": n,
        "target_degree": m,
        "source_dim": source.dim,
        "target_dim": target.dim,
        "rank": r,
        "kernel_dim": source.dim - r,
        "epimorphism": r == target.dim,
    }


def cmd_kameko(args: argparse.Namespace) -> int:
    _check_kn(args.k, args.n)
    cache = _cache_dir(args.cache_dir)
    try:
        res = kameko_rank(args.k, args.n, cache, _threads(args.threads))
    except ValueError as exc:
        raise CliError(str(exc), EXIT_USAGE) from exc
    k, n, m = res["k"], res["n"], res["target_degree"]
    print(f"Kameko map (QP_{k})_{n} -> (QP_{k})_{m}")
    print(f"  dim (QP_{k})_{n} = {res['source_dim']}")
    print(f"  dim (QP_{k})_{m} = {res['target_dim']}")
    print(f"  rank = {res['rank']}, dim kernel = {res['kernel_dim']}")
    print(f"  epimorphism: {'yes' if res['epimorphism'] else 'no'}")
    if args.json:
        _write_json(args.json, json.dumps(res, indent=2) + "\n")
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cohitkit", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true", help="log debug output to stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, cache=True):
        p.add_argument("--k", type=int, required=True, help="number of variables")
        p.add_argument("--n", type=int, required=True, help="degree")
        if cache:
            p.add_argument("--cache-dir", help="basis cache directory (default: $COHIT_CACHE_DIR)")
            p.add_argument("--threads", type=int, help="worker processes for the hit matrix (default: all cores)")
        p.add_argument("--json", metavar="PATH", help="also write a JSON report")

    p = sub.add_parser("invariants", help="Sigma_k- and GL_k-invariants of (QP_k)_n")
    common(p)
    p.add_argument("--sigma-only", action="store_true", help="stop after the Sigma_k stage")
    p.add_argument("--json-timings", action="store_true", help="include phase timings in the JSON report")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("boardman", help="GL_k-coinvariants of primitive homology, k = 2, 3")
    common(p, cache=False)
    p.add_argument("--l-offset", type=int, default=DEFAULT_L_OFFSET, help="truncation level above the parameter sum")
    p.add_argument("--l", type=int, help="explicit truncation level (overrides --l-offset)")
    p.add_argument(
        "--single-orbit",
        action="store_true",
        help="use only the single parameter tuple of the closed-form rule, not every h-orbit",
    )
    p.add_argument("--json-timings", action="store_true", help="include timings in the JSON report")
    p.set_defaults(func=cmd_boardman)

    p = sub.add_parser("verify", help="check a polynomial for hit / invariance modulo hits")
    common(p)
    p.add_argument("file", help="polynomial text file ('-' for stdin)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("kameko", help="rank of the Kameko map on cohits")
    common(p)
    p.set_defaults(func=cmd_kameko)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
