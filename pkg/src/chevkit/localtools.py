"""Order-three decompositions over local rings with invertible 3.

For a matrix a with a^3 = 1 over a local ring where 3 is a unit,
e = (1 + a + a^2)/3 is an idempotent projecting onto the a-fixed
submodule; the complement splits into two-dimensional invariant blocks
on which a acts as [[0, -1], [1, -1]].  Ranks are ranks of the residue
matrices (projective modules over a local ring are free, so the residue
rank determines the splitting).
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import RingMatrix, rank_over_field
from .rings import NonUnit, NotLocal, Ring


class Order3Violation(ValueError):
    """The input matrix does not cube to the identity."""


class NotCongruent(ValueError):
    """The two matrices are not congruent modulo the radical."""


@dataclass
class IdempotentSplit:
    e: RingMatrix
    rank0: int
    rank1: int


def _third(ring: Ring):
    three = ring.from_int(3)
    if not ring.is_unit(three):
        raise NonUnit("3 must be a unit for the order-three idempotent")
    return ring.invert(three)


def order3_split(a: RingMatrix) -> IdempotentSplit:
    """Split the module by e = (1 + a + a^2)/3 for an order-three matrix.

    rank0 is the residue rank of e (the a-fixed part), rank1 the residue
    rank of 1 - e (the part carrying the two-dimensional blocks);
    rank0 + rank1 = n.
    """
    ring = a.ring
    if not ring.local:
        raise NotLocal("order3_split needs a local ring")
    eye = RingMatrix.identity(ring, a.n)
    if a * a * a != eye:
        raise Order3Violation("matrix does not have order dividing three")
    third = _third(ring)
    e = (eye + a + a * a).scale(third)
    if e * e != e:
        raise AssertionError("idempotent identity failed")
    rank0 = rank_over_field(e.residue())
    rank1 = rank_over_field((eye - e).residue())
    if rank0 + rank1 != a.n:
        raise AssertionError("residue ranks do not add up to the dimension")
    return IdempotentSplit(e, rank0, rank1)


def _unit_column_select(ring: Ring, cols: list[list], existing: list[list]):
    """Greedily pick columns extending `existing` to an independent set
    over the residue field."""
    k = ring.residue_ring()
    ech: list[tuple[int, list]] = []

    def insert(col) -> bool:
        vec = [ring.residue(v) for v in col]
        for piv, pcol in ech:
            f = vec[piv]
            if f != k.zero:
                vec = [k.sub(x, k.mul(f, y)) for x, y in zip(vec, pcol)]
        piv = next((i for i, v in enumerate(vec) if v != k.zero), None)
        if piv is None:
            return False
        inv = k.invert(vec[piv])
        ech.append((piv, [k.mul(inv, v) for v in vec]))
        return True

    for col in existing:
        if not insert(col):
            raise AssertionError("existing columns are dependent")
    picked = []
    for col in cols:
        if insert(col):
            picked.append(col)
    return picked


def _canonical_basis(a: RingMatrix) -> RingMatrix:
    """Columns: a basis adapted to a, fixed part first, then (v, a v) pairs.

    On the moving part a satisfies a^2 + a + 1 = 0, so every pair
    (v, a v) spans an invariant block with matrix [[0, -1], [1, -1]].
    """
    ring = a.ring
    n = a.n
    split = order3_split(a)
    e = split.e
    eye = RingMatrix.identity(ring, n)
    fixed = _unit_column_select(ring, [e.column(j) for j in range(n)], [])
    if len(fixed) != split.rank0:
        raise AssertionError("fixed-part basis has wrong size")
    comp = eye - e
    basis = list(fixed)
    cand = [comp.column(j) for j in range(n)]
    while len(basis) < n:
        picked = _unit_column_select(ring, cand, basis)
        if not picked:
            raise AssertionError("could not complete the moving part")
        v = picked[0]
        av = [0] * n
        for i in range(n):
            acc = ring.zero
            for j in range(n):
                if v[j] != ring.zero and a.rows[i][j] != ring.zero:
                    acc = ring.add(acc, ring.mul(a.rows[i][j], v[j]))
            av[i] = acc
        basis.append(v)
        basis.append(av)
    cols = RingMatrix(ring, [list(row) for row in zip(*basis)])
    return cols


def conjugacy_witness(a: RingMatrix, b: RingMatrix) -> RingMatrix:
    """A unit T with T a T^{-1} = b for congruent order-three matrices.

    Both matrices are brought to the common canonical form
    1 ⊕ [[0,-1],[1,-1]] ⊕ ... through bases adapted to their idempotents;
    the composite change is the witness.  Requires a ≡ b mod the radical
    (raises NotCongruent otherwise); the residue condition guarantees the
    two canonical shapes agree.
    """
    ring = a.ring
    if a.residue() != b.residue():
        raise NotCongruent("matrices differ modulo the radical")
    sa = order3_split(a)
    sb = order3_split(b)
    if (sa.rank0, sa.rank1) != (sb.rank0, sb.rank1):
        raise NotCongruent("residue ranks disagree")
    ta = _canonical_basis(a)
    tb = _canonical_basis(b)
    # a ta = ta C and b tb = tb C with the same canonical C
    t = tb * ta.inverse()
    if t * a != b * t:
        raise AssertionError("canonical forms disagree")
    return t
