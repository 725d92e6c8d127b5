"""Dense GF(2) matrices with rows packed into Python ints.

Bit ``c`` of a row int is the entry in column ``c``. Python's arbitrary
precision ints are word-packed internally, so ``^`` is word-wide XOR.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


def low_bit(x: int) -> int:
    """Index of the least significant set bit of a nonzero int."""
    return (x & -x).bit_length() - 1


def bits(x: int) -> list[int]:
    """Indices of the set bits of ``x``, ascending."""
    out = []
    while x:
        lsb = x & -x
        out.append(lsb.bit_length() - 1)
        x ^= lsb
    return out


def from_indices(indices: Iterable[int]) -> int:
    v = 0
    for i in indices:
        v ^= 1 << i
    return v


@dataclass(frozen=True)
class BitMatrix:
    nrows: int
    ncols: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != self.nrows:
            raise ValueError("row count does not match data")
        limit = 1 << self.ncols
        for r in self.rows:
            if r < 0 or r >= limit:
                raise ValueError("row has bits beyond ncols")

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return (self.rows[i] >> j) & 1

    def mul_vec(self, v: int) -> int:
        """Matrix-vector product; bit i of the result is <row_i, v>."""
        out = 0
        for i, r in enumerate(self.rows):
            if (r & v).bit_count() & 1:
                out |= 1 << i
        return out

    def transpose(self) -> "BitMatrix":
        cols = [0] * self.ncols
        for i, r in enumerate(self.rows):
            for j in bits(r):
                cols[j] |= 1 << i
        return BitMatrix(self.ncols, self.nrows, tuple(cols))

    @classmethod
    def from_columns(cls, nrows: int, columns: Sequence[int]) -> "BitMatrix":
        return BitMatrix(len(columns), nrows, tuple(columns)).transpose()


def from_rows(ncols: int, rows: Iterable[Iterable[int]]) -> BitMatrix:
    packed = []
    for idx in rows:
        v = 0
        for c in idx:
            if not 0 <= c < ncols:
                raise IndexError(f"column {c} out of range for {ncols} columns")
            v ^= 1 << c
        packed.append(v)
    return BitMatrix(len(packed), ncols, tuple(packed))


@dataclass(frozen=True)
class EchelonForm:
    reduced_rows: BitMatrix
    pivot_cols: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.pivot_cols)


class Echelonizer:
    """Incremental row reduction keyed by leading (lowest) column.

    ``pivots[c]`` holds a row whose lowest set bit is ``c``. Rows are only
    forward-reduced while being added; :meth:`back_substitute` finishes RREF.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: dict[int, int] = {}

    def reduce(self, row: int) -> int:
        """Forward-reduce ``row``; the result's lowest bit is not a pivot (or it is 0)."""
        pivots = self.pivots
        while row:
            lead = (row & -row).bit_length() - 1
            p = pivots.get(lead)
            if p is None:
                return row
            row ^= p
        return 0

    def add(self, row: int) -> bool:
        row = self.reduce(row)
        if row:
            self.pivots[low_bit(row)] = row
            return True
        return False

    def reduce_fully(self, row: int) -> int:
        """Clear every pivot column from ``row`` (needs :meth:`reduced` rows)."""
        pivots = self.pivots
        mask = row & self._pivot_mask
        while mask:
            c = low_bit(mask)
            row ^= pivots[c]
            mask = row & self._pivot_mask
        return row

    def back_substitute(self) -> None:
        """Bring the stored pivot rows to reduced row echelon form in place."""
        mask = from_indices(self.pivots)
        self._pivot_mask = mask
        # Rightmost pivots first: rows processed later only see finished rows.
        for c in sorted(self.pivots, reverse=True):
            row = self.pivots[c]
            other = row & mask & ~(1 << c)
            while other:
                j = low_bit(other)
                row ^= self.pivots[j]
                other = row & mask & ~(1 << c)
            self.pivots[c] = row

    @property
    def rank(self) -> int:
        return len(self.pivots)


def rref(m: BitMatrix) -> EchelonForm:
    ech = Echelonizer(m.ncols)
    for r in m.rows:
        ech.add(r)
    ech.back_substitute()
    cols = tuple(sorted(ech.pivots))
    reduced = BitMatrix(len(cols), m.ncols, tuple(ech.pivots[c] for c in cols))
    return EchelonForm(reduced, cols)


def rank(m: BitMatrix) -> int:
    ech = Echelonizer(m.ncols)
    for r in m.rows:
        ech.add(r)
    return ech.rank


def rank_of_rows(rows: Iterable[int]) -> int:
    ech = Echelonizer(0)
    for r in rows:
        ech.add(r)
    return ech.rank


def row_space_basis(m: BitMatrix) -> list[int]:
    return list(rref(m).reduced_rows.rows)


def kernel_basis(m: BitMatrix) -> list[int]:
    """Right null space: one vector per free column, free columns ascending."""
    ech = rref(m)
    pivot_set = set(ech.pivot_cols)
    pivot_rows = list(zip(ech.pivot_cols, ech.reduced_rows.rows))
    basis = []
    for f in range(m.ncols):
        if f in pivot_set:
            continue
        v = 1 << f
        for p, row in pivot_rows:
            if (row >> f) & 1:
                v |= 1 << p
        basis.append(v)
    if ech.rank + len(basis) != m.ncols:
        raise AssertionError("rank-nullity violated")
    for v in basis:
        if m.mul_vec(v):
            raise AssertionError("kernel vector not annihilated")
    return basis
