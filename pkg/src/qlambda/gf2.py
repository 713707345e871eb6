"""Symmetric matrices over GF(2) with bit-packed rows."""

from __future__ import annotations

from typing import Iterable, Sequence, Tuple

__all__ = ["Gf2Matrix", "rank_rows", "nullity", "rank", "bordered", "tri_nullities", "tri_type", "block_diag"]


def rank_rows(rows: Iterable[int]) -> int:
    """GF(2) rank of a collection of bit-vectors (row i bit j = entry (i, j))."""
    pivots = {}
    for r in rows:
        while r:
            top = r.bit_length() - 1
            p = pivots.get(top)
            if p is None:
                pivots[top] = r
                break
            r ^= p
    return len(pivots)


class Gf2Matrix:
    """Square symmetric 0/1 matrix; ``rows[i]`` has bit ``j`` set iff entry (i, j) is 1."""

    __slots__ = ("n", "rows")

    def __init__(self, rows: Sequence[int], n: int | None = None, check: bool = True):
        self.rows: Tuple[int, ...] = tuple(rows)
        self.n = len(self.rows) if n is None else n
        if len(self.rows) != self.n:
            raise ValueError("row count does not match dimension")
        if check:
            limit = 1 << self.n
            for i, r in enumerate(self.rows):
                if r < 0 or r >= limit:
                    raise ValueError(f"row {i} has bits outside the matrix")
                for j in range(self.n):
                    if (r >> j) & 1 != (self.rows[j] >> i) & 1:
                        raise ValueError(f"matrix is not symmetric at ({i}, {j})")

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]]) -> "Gf2Matrix":
        rows = []
        for row in entries:
            if len(row) != len(entries):
                raise ValueError("matrix is not square")
            bits = 0
            for j, e in enumerate(row):
                if e & 1:
                    bits |= 1 << j
            rows.append(bits)
        return cls(rows)

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def to_lists(self):
        return [[self.entry(i, j) for j in range(self.n)] for i in range(self.n)]

    def __eq__(self, other):
        return isinstance(other, Gf2Matrix) and self.n == other.n and self.rows == other.rows

    def __hash__(self):
        return hash((self.n, self.rows))

    def __repr__(self):
        return f"Gf2Matrix({self.to_lists()})"


def rank(m: Gf2Matrix) -> int:
    return rank_rows(m.rows)


def nullity(m: Gf2Matrix) -> int:
    return m.n - rank_rows(m.rows)


def bordered(m: Gf2Matrix, s: Iterable[int], loop: bool | int) -> Gf2Matrix:
    """Adjoin a new index 0 adjacent to ``s`` (old indices), looped iff ``loop``."""
    s = set(s)
    for i in s:
        if not 0 <= i < m.n:
            raise IndexError(f"index {i} out of range for {m.n}x{m.n} matrix")
    first = 1 if loop else 0
    rows = []
    for i, r in enumerate(m.rows):
        nr = r << 1
        if i in s:
            nr |= 1
            first |= 1 << (i + 1)
        rows.append(nr)
    return Gf2Matrix([first] + rows, check=False)


def tri_nullities(m: Gf2Matrix, s: Iterable[int]) -> Tuple[int, int, int]:
    s = list(s)
    return nullity(bordered(m, s, 0)), nullity(m), nullity(bordered(m, s, 1))


def tri_type(m: Gf2Matrix, s: Iterable[int]) -> int:
    """1, 2 or 3 according to which of nu(border), nu(m), nu(looped border) is largest."""
    triple = tri_nullities(m, s)
    lo, hi = min(triple), max(triple)
    if hi != lo + 1 or triple.count(hi) != 1:
        raise AssertionError(f"nullity triple {triple} violates the two-equal-one-larger pattern")
    return triple.index(hi) + 1


def block_diag(*blocks: Gf2Matrix) -> Gf2Matrix:
    rows = []
    offset = 0
    for b in blocks:
        rows.extend(r << offset for r in b.rows)
        offset += b.n
    return Gf2Matrix(rows, check=False)
