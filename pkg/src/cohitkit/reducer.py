"""Admissible basis of the cohits (QP_k)_n and the reducer modulo hits.

The hit matrix has one row per :class:`HitTask` and one column per degree-n
monomial in :func:`enumerate_monomials` order. Its non-pivot columns form the
basis; every pivot monomial is congruent, modulo hits, to the sum of the
non-pivot monomials left in its reduced row.
"""

from __future__ import annotations

import hashlib
import logging
import os
import struct
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional

from .gf2 import Echelonizer, bits
from .monomials import Monomial, Polynomial, enumerate_monomials
from .steenrod import HitTask, evaluate_hit_tasks, hit_tasks

log = logging.getLogger(__name__)

CACHE_MAGIC = b"COHIT01"


class CacheError(Exception):
    """Base class for unusable cache files."""


class CacheVersionError(CacheError):
    pass


class CacheTruncatedError(CacheError):
    pass


class CacheChecksumError(CacheError):
    pass


@dataclass(frozen=True, eq=False)
class CohitBasis:
    k: int
    n: int
    monomial_order: tuple[Monomial, ...]
    basis: tuple[Monomial, ...]
    # pivot monomial -> coordinates over ``basis`` (bit i <-> basis[i])
    reducer: dict[Monomial, int]
    index: dict[Monomial, int] = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "index", {m: i for i, m in enumerate(self.basis)})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CohitBasis):
            return NotImplemented
        return (
            (self.k, self.n, self.monomial_order, self.basis) == (other.k, other.n, other.monomial_order, other.basis)
            and list(self.reducer.items()) == list(other.reducer.items())
        )

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coords_of_terms(self, terms: Iterable[Monomial]) -> int:
        """Reduce a raw term set (each term degree n, rank k) to basis coordinates."""
        v = 0
        index, reducer = self.index, self.reducer
        for m in terms:
            i = index.get(m)
            if i is not None:
                v ^= 1 << i
                continue
            try:
                v ^= reducer[m]
            except KeyError:
                raise ValueError(f"monomial {m} is not of rank {self.k} and degree {self.n}") from None
        return v

    def polynomial(self, coords: int) -> Polynomial:
        """The sum of basis monomials selected by ``coords``."""
        return Polynomial(self.k, frozenset(self.basis[i] for i in bits(coords)))


def reduce(cb: CohitBasis, p: Polynomial) -> int:
    if p.k != cb.k:
        raise ValueError(f"rank mismatch: polynomial has k={p.k}, basis has k={cb.k}")
    d = p.degree()
    if d is not None and d != cb.n:
        raise ValueError(f"degree mismatch: polynomial has degree {d}, basis is for n={cb.n}")
    return cb.coords_of_terms(p.terms)


def is_hit(cb: CohitBasis, p: Polynomial) -> bool:
    return reduce(cb, p) == 0


def _evaluate_chunk(chunk: list[HitTask]) -> list[set[Monomial]]:
    return evaluate_hit_tasks(chunk)


def hit_rows(k: int, n: int, workers: int = 1) -> list[set[Monomial]]:
    """Evaluate every hit task, in task order, optionally across processes."""
    tasks = list(hit_tasks(k, n))
    if workers <= 1 or len(tasks) < 2000:
        return evaluate_hit_tasks(tasks)
    size = -(-len(tasks) // (workers * 4))
    chunks = [tasks[i:i + size] for i in range(0, len(tasks), size)]
    out: list[set[Monomial]] = []
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_evaluate_chunk, chunks):
            out.extend(part)
    return out


def build_cohit_basis(k: int, n: int, workers: int = 1) -> CohitBasis:
    if k < 1 or n < 0:
        raise ValueError(f"need k >= 1 and n >= 0, got k={k}, n={n}")
    order = enumerate_monomials(k, n)
    col = {m: c for c, m in enumerate(order)}
    ech = Echelonizer(len(order))
    for terms in hit_rows(k, n, workers):
        v = 0
        for m in terms:
            v ^= 1 << col[m]
        ech.add(v)
    ech.back_substitute()

    pivot_mask = 0
    for c in ech.pivots:
        pivot_mask |= 1 << c
    basis_cols = [c for c in range(len(order)) if not (pivot_mask >> c) & 1]
    basis_pos = {c: i for i, c in enumerate(basis_cols)}
    reducer = {}
    for c in sorted(ech.pivots):
        rest = ech.pivots[c] ^ (1 << c)
        reducer[order[c]] = sum(1 << basis_pos[j] for j in bits(rest))
    return CohitBasis(k, n, tuple(order), tuple(order[c] for c in basis_cols), reducer)


# -- cache -------------------------------------------------------------------
#
# Little-endian layout:
#   magic "COHIT01" | u32 k | u32 n | u32 #monomials | u32 #basis | u32 #reducer
#   | #basis x k u32 exponents
#   | #reducer x (k u32 exponents, ceil(#basis/64) u64 words)
#   | u64 checksum (blake2b-64 of everything before it)


def cache_path(k: int, n: int, directory: os.PathLike | str) -> Path:
    return Path(directory) / f"cohit_k{k}_n{n}.bin"


def _checksum(data: bytes) -> bytes:
    return hashlib.blake2b(data, digest_size=8).digest()


def serialize(cb: CohitBasis) -> bytes:
    k = cb.k
    words = (cb.dim + 63) // 64
    mono = struct.Struct(f"<{k}I")
    parts = [CACHE_MAGIC, struct.pack("<5I", k, cb.n, len(cb.monomial_order), cb.dim, len(cb.reducer))]
    parts.extend(mono.pack(*m) for m in cb.basis)
    for m, v in cb.reducer.items():
        parts.append(mono.pack(*m))
        parts.append(v.to_bytes(8 * words, "little"))
    body = b"".join(parts)
    return body + _checksum(body)


def deserialize(data: bytes) -> CohitBasis:
    if data[: len(CACHE_MAGIC)] != CACHE_MAGIC:
        raise CacheVersionError("bad magic: not a COHIT01 cache file")
    head = len(CACHE_MAGIC) + 20
    if len(data) < head + 8:
        raise CacheTruncatedError("cache file shorter than its header")
    k, n, n_mono, n_basis, n_red = struct.unpack_from("<5I", data, len(CACHE_MAGIC))
    words = (n_basis + 63) // 64
    expected = head + n_basis * 4 * k + n_red * (4 * k + 8 * words) + 8
    if len(data) < expected:
        raise CacheTruncatedError(f"cache file has {len(data)} bytes, expected {expected}")
    if len(data) > expected:
        raise CacheChecksumError("trailing bytes after checksum")
    if _checksum(data[:-8]) != data[-8:]:
        raise CacheChecksumError("checksum mismatch")
    mono = struct.Struct(f"<{k}I")
    pos = head
    basis = []
    for _ in range(n_basis):
        basis.append(mono.unpack_from(data, pos))
        pos += mono.size
    reducer = {}
    for _ in range(n_red):
        m = mono.unpack_from(data, pos)
        pos += mono.size
        reducer[m] = int.from_bytes(data[pos:pos + 8 * words], "little")
        pos += 8 * words
    order = enumerate_monomials(k, n)
    if len(order) != n_mono or n_basis + n_red != n_mono:
        raise CacheChecksumError("monomial counts inconsistent with (k, n)")
    return CohitBasis(k, n, tuple(order), tuple(basis), reducer)


def save_cache(cb: CohitBasis, directory: os.PathLike | str) -> Path:
    path = cache_path(cb.k, cb.n, directory)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    tmp.write_bytes(serialize(cb))
    os.replace(tmp, path)
    return path


def load_cache(k: int, n: int, directory: os.PathLike | str) -> Optional[CohitBasis]:
    """Read a cached basis; None if absent, :class:`CacheError` if unusable."""
    path = cache_path(k, n, directory)
    if not path.exists():
        return None
    cb = deserialize(path.read_bytes())
    if (cb.k, cb.n) != (k, n):
        raise CacheVersionError(f"{path} holds k={cb.k}, n={cb.n}")
    return cb


def get_cohit_basis(
    k: int, n: int, cache_dir: os.PathLike | str | None = None, workers: int = 1
) -> tuple[CohitBasis, bool]:
    """Load from cache if possible, else build (and save). Returns (basis, cache_hit)."""
    if cache_dir is not None:
        try:
            cb = load_cache(k, n, cache_dir)
        except CacheError as exc:
            log.warning("ignoring corrupt cache for k=%d n=%d: %s", k, n, exc)
            cb = None
        if cb is not None:
            return cb, True
    cb = build_cohit_basis(k, n, workers)
    if cache_dir is not None:
        save_cache(cb, cache_dir)
    return cb, False
