"""Packed GF(2) vectors as Python ints, with incremental row reduction."""

from __future__ import annotations

from typing import Iterable


class EchelonBasis:
    """Row-reduced spanning set of a GF(2) subspace, keyed by leading bit."""

    def __init__(self, rows: Iterable[int] = ()):
        self.pivots: dict[int, int] = {}
        for r in rows:
            self.add(r)

    def reduce(self, row: int) -> int:
        while row:
            h = row.bit_length() - 1
            p = self.pivots.get(h)
            if p is None:
                return row
            row ^= p
        return 0

    def add(self, row: int) -> bool:
        """Insert row; return False if it was already in the span."""
        row = self.reduce(row)
        if not row:
            return False
        self.pivots[row.bit_length() - 1] = row
        return True

    def __contains__(self, row: int) -> bool:
        return self.reduce(row) == 0

    def __len__(self):
        return len(self.pivots)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def rows(self) -> list[int]:
        return [self.pivots[h] for h in sorted(self.pivots)]


def rank(rows: Iterable[int]) -> int:
    return EchelonBasis(rows).rank


def pack(bits: Iterable[int]) -> int:
    """Bitset with the given positions set (positions repeated an even number of times cancel)."""
    v = 0
    for b in bits:
        v ^= 1 << b
    return v


def unpack(v: int) -> list[int]:
    out = []
    while v:
        low = v & -v
        out.append(low.bit_length() - 1)
        v ^= low
    return out
