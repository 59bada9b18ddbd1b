"""Incremental GF(2) elimination over int bitsets."""

from __future__ import annotations


class XorBasis:
    """Row-echelon basis keyed by leading bit.

    ``insert`` optionally tracks which inserted vectors combine into each
    stored row, so membership queries can return a certificate.
    """

    __slots__ = ("rows", "combo", "track")

    def __init__(self, track: bool = False):
        self.rows: dict[int, int] = {}
        self.combo: dict[int, int] = {}
        self.track = track

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, x: int) -> tuple[int, int]:
        """Return ``(residue, combination)``; the residue is 0 iff ``x`` is in the span.

        Elimination stops at the first leading bit that is not a pivot, which
        is all ``insert`` needs.
        """
        combo = 0
        rows = self.rows
        while x:
            top = x.bit_length() - 1
            r = rows.get(top)
            if r is None:
                break
            x ^= r
            if self.track:
                combo ^= self.combo[top]
        return x, combo

    def contains(self, x: int) -> bool:
        return self.reduce(x)[0] == 0

    def insert(self, x: int, tag: int = 0) -> bool:
        """Add ``x``; ``tag`` is its bit in the combination bookkeeping."""
        residue, combo = self.reduce(x)
        if residue == 0:
            return False
        top = residue.bit_length() - 1
        self.rows[top] = residue
        if self.track:
            self.combo[top] = combo ^ tag
        return True

    def copy(self) -> "XorBasis":
        out = XorBasis(self.track)
        out.rows = dict(self.rows)
        out.combo = dict(self.combo)
        return out


def rank(vectors) -> int:
    b = XorBasis()
    for v in vectors:
        b.insert(v)
    return len(b)
