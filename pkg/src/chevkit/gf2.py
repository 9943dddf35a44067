"""Bitset linear algebra over GF(2).

Vectors over w unknowns are Python ints; bit b is the coefficient of
unknown b.  Elimination keeps a pivot table {pivot_bit: row}; pivots are
chosen at the lowest set bit, rows are processed in input order, so all
results are deterministic.
"""

from __future__ import annotations


def lowest_bit(x: int) -> int:
    return (x & -x).bit_length() - 1


class Echelon:
    """Incremental row echelon over GF(2)."""

    def __init__(self):
        self.pivots: dict[int, int] = {}

    def reduce(self, v: int) -> int:
        while v:
            b = lowest_bit(v)
            row = self.pivots.get(b)
            if row is None:
                return v
            v ^= row
        return 0

    def add(self, v: int) -> bool:
        """Insert a row; returns True if it enlarged the span."""
        v = self.reduce(v)
        if v == 0:
            return False
        self.pivots[lowest_bit(v)] = v
        return True

    def contains(self, v: int) -> bool:
        return self.reduce(v) == 0

    @property
    def rank(self) -> int:
        return len(self.pivots)


def nullspace(rows: list[int], width: int) -> list[int]:
    """Basis of {x : row . x = 0 for all rows} over GF(2).

    Equations are bitmasks of coefficients.  Free unknowns are taken in
    increasing bit order; the basis vector for free bit f has bit f set.
    """
    ech = Echelon()
    for r in rows:
        ech.add(r)
    piv = ech.pivots
    # back-substitute to reduced echelon
    order = sorted(piv)
    for i, b in enumerate(order):
        row = piv[b]
        for b2 in order[i + 1 :]:
            if (row >> b2) & 1:
                row ^= piv[b2]
        piv[b] = row
    basis = []
    pivot_bits = set(piv)
    for f in range(width):
        if f in pivot_bits:
            continue
        vec = 1 << f
        for b, row in piv.items():
            if (row >> f) & 1:
                vec |= 1 << b
        basis.append(vec)
    return basis


def span_dim(vectors: list[int]) -> int:
    ech = Echelon()
    for v in vectors:
        ech.add(v)
    return ech.rank


def contained_in_span(vectors: list[int], space: list[int]) -> bool:
    ech = Echelon()
    for v in space:
        ech.add(v)
    return all(ech.contains(v) for v in vectors)
