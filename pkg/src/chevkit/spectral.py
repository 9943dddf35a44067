"""Eigen-splitting of the order-three Q elements and invariant block analysis.

Over a ring containing a cube root of unity xi with 3 invertible, an
order-three matrix splits the module through the exact projections

    pi_lambda = (1/3) (1 + lambda^2 Q + lambda Q^2),   lambda^3 = 1,

whose images are free direct summands over a local base.  The transition
matrix P returned by `diagonalize_q` is built per invariant block from
unit-pivot column bases of these projections, so P Q P^{-1} is diagonal
with entries 1, xi, xi^2 exactly.

`centralizer_pattern` computes the support of the full commutant of a set
of matrices over a field: the positions (i, j) such that some commuting
matrix is nonzero there.  For a family of commuting order-three matrices
this uses the joint eigenbasis; otherwise it falls back to solving the
commutation system directly (small dimensions only).

`pairing_profile_partition` is different bookkeeping: it groups basis
lines by the vector of Cartan pairings against a set of reference roots
(a line for beta merging with the line for -beta, Cartan lines attached
to the all-zero class).  This is the classical coarse invariant-block
chart used to organize the rigidity analysis, and it is what the shipped
block lists are compared against.  It is deliberately not the commutant
support: over the residue field the commutant of the Q family alone links
every Cartan line with the eigenline mixtures, which merges almost all
blocks (see the design notes in the README).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .linalg import RingMatrix, nullspace_over_field, out_matrix
from .rings import NonUnit, OmegaRing, Ring
from .rootsys import RootSystem, RootVector, pairing

from .chevalley import q_elem


class SingularTransition(ArithmeticError):
    """The assembled eigen-transition failed to be invertible."""


@dataclass
class BlockPartition:
    parts: list[set[int]]
    labels: list[str | None] = field(default_factory=list)

    def as_sorted(self) -> list[list[int]]:
        return sorted((sorted(p) for p in self.parts), key=lambda p: p[0])


def support_components(n: int, pattern: set[tuple[int, int]]) -> list[set[int]]:
    """Connected components of the symmetric closure of a support set."""
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in pattern:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
    comps: dict[int, set[int]] = {}
    for i in range(n):
        comps.setdefault(find(i), set()).add(i)
    return sorted(comps.values(), key=min)


def block_partition(pattern: set[tuple[int, int]], n: int) -> BlockPartition:
    parts = support_components(n, pattern)
    return BlockPartition(parts, [None] * len(parts))


def _unit_column_basis(ring: Ring, cols: list[list], need: int | None = None):
    """Select columns forming a basis of their span via unit pivots.

    Works over local rings: columns are chosen greedily when their image
    stays independent over the residue field.
    """
    k = ring.residue_ring() if ring.local else ring
    reduce_rows: list[tuple[int, list]] = []  # (pivot index, reduced residue col)
    chosen = []
    for col in cols:
        if ring.local:
            vec = [ring.residue(v) for v in col]
        else:
            vec = list(col)
        for piv, pcol in reduce_rows:
            f = vec[piv]
            if f != k.zero:
                vec = [k.sub(a, k.mul(f, b)) for a, b in zip(vec, pcol)]
        piv = next((i for i, v in enumerate(vec) if v != k.zero), None)
        if piv is None:
            continue
        inv = k.invert(vec[piv])
        vec = [k.mul(inv, v) for v in vec]
        reduce_rows.append((piv, vec))
        chosen.append(col)
        if need is not None and len(chosen) == need:
            break
    return chosen


def _eigen_projections(ring: OmegaRing, q: RingMatrix):
    """The three projections onto the 1/xi/xi^2 eigen-summands of Q."""
    three = ring.from_int(3)
    if not ring.is_unit(three):
        raise NonUnit("3 must be invertible to split an order-three element")
    third = ring.invert(three)
    one = ring.from_int(1)
    xi, xi2 = ring.xi(), ring.xi2()
    q2 = q * q
    eye = RingMatrix.identity(ring, q.n)
    out = []
    for lam, lam2 in ((one, one), (xi, xi2), (xi2, xi)):
        # pi = (1 + conj(lam) Q + conj(lam)^2 Q^2)/3 with conj(lam) = lam^2
        m = eye + q.scale(lam2) + q2.scale(lam)
        out.append(m.scale(third))
    return out  # order: eigenvalue 1, xi, xi^2


def diagonalize_q(
    ring: Ring, system: RootSystem, alpha: RootVector
) -> tuple[RingMatrix, RingMatrix]:
    """Exact (P, D) with P Q_alpha P^{-1} = D diagonal over 1, xi, xi^2.

    The transition is assembled blockwise over the Q-invariant components
    of the basis: an isolated fixed line stays untouched, a component
    meeting the Cartan lines gets eigencolumns ordered xi, xi^2, 1, and a
    four-line component of connected root pairs gets xi, xi, xi^2, xi^2.
    """
    if not isinstance(ring, OmegaRing):
        raise ValueError("diagonalize_q needs an omega-extension ring")
    q = q_elem(ring, system, alpha)
    pattern = q.support()
    comps = support_components(system.n, pattern)
    pi_1, pi_xi, pi_xi2 = _eigen_projections(ring, q)
    n = system.n
    zero = ring.zero
    tcols: list[list] = []
    for comp in comps:
        idx = sorted(comp)
        if len(idx) == 1:
            col = [zero] * n
            col[idx[0]] = ring.one
            tcols.append(col)
            continue
        got = 0
        for pi in (pi_xi, pi_xi2, pi_1):
            cand = [pi.column(j) for j in idx]
            picked = _unit_column_basis(ring, cand)
            tcols.extend(picked)
            got += len(picked)
        if got != len(idx):
            raise SingularTransition(
                f"component of size {len(idx)} produced {got} eigencolumns"
            )
    t = RingMatrix(ring, [list(row) for row in zip(*tcols)])
    p = t.inverse()
    d = p * q * t
    for i in range(n):
        for j in range(n):
            if i != j and d.rows[i][j] != zero:
                raise SingularTransition("transition failed to diagonalize")
    allowed = {ring.one, ring.xi(), ring.xi2()}
    for i in range(n):
        if d.rows[i][i] not in allowed:
            raise SingularTransition("diagonal entry outside {1, xi, xi^2}")
    return p, d


def xi_multiplicities(ring: Ring, d: RingMatrix) -> tuple[int, int, int]:
    """Counts of (1, xi, xi^2) along the diagonal."""
    one, xi, xi2 = ring.one, ring.xi(), ring.xi2()
    c = {one: 0, xi: 0, xi2: 0}
    for i in range(d.n):
        c[d.rows[i][i]] += 1
    return c[one], c[xi], c[xi2]


def simultaneous_transition(
    ring: Ring, qs: list[RingMatrix]
) -> tuple[RingMatrix, list[tuple]]:
    """Joint eigenbasis of commuting order-three matrices.

    Returns (T, chars): columns of T are joint eigenvectors; chars[c] is
    the tuple of eigenvalues (payload values) of the c-th column under
    each matrix in turn.
    """
    if not isinstance(ring, OmegaRing):
        raise ValueError("simultaneous splitting needs an omega-extension ring")
    n = qs[0].n
    one = ring.one
    groups: list[tuple[tuple, list[list]]] = [
        ((), [[one if i == j else ring.zero for i in range(n)] for j in range(n)])
    ]
    lams = [ring.one, ring.xi(), ring.xi2()]
    for q in qs:
        pis = _eigen_projections(ring, q)
        new_groups = []
        for chars, cols in groups:
            got = 0
            for lam, pi in zip(lams, pis):
                cand = []
                for col in cols:
                    image = [ring.zero] * n
                    for r in range(n):
                        acc = ring.zero
                        prow = pi.rows[r]
                        for k, v in enumerate(col):
                            if v != ring.zero and prow[k] != ring.zero:
                                acc = ring.add(acc, ring.mul(prow[k], v))
                        image[r] = acc
                    cand.append(image)
                picked = _unit_column_basis(ring, cand)
                if picked:
                    new_groups.append((chars + (lam,), picked))
                    got += len(picked)
            if got != len(cols):
                raise SingularTransition("joint eigen-splitting lost rank")
        groups = new_groups
    tcols = []
    chars = []
    for ch, cols in groups:
        for col in cols:
            tcols.append(col)
            chars.append(ch)
    t = RingMatrix(ring, [list(row) for row in zip(*tcols)])
    return t, chars


def _is_order3_family(field: Ring, knowns: list[RingMatrix]) -> bool:
    eye = RingMatrix.identity(field, knowns[0].n)
    for k in knowns:
        if not (k * k * k).is_identity():
            return False
    for i, a in enumerate(knowns):
        for b in knowns[i + 1 :]:
            if a * b != b * a:
                return False
    return True


def centralizer_pattern(
    field: Ring, knowns: list[RingMatrix]
) -> set[tuple[int, int]]:
    """Support of the commutant: positions where some commuting M is nonzero.

    The union of supports over any basis of the solution space of
    M K = K M (all K) equals this set, so it is basis independent.
    """
    if not knowns:
        raise ValueError("need at least one known matrix")
    n = knowns[0].n
    nontrivial = [k for k in knowns if not k.is_identity()]
    if not nontrivial:
        return {(i, j) for i in range(n) for j in range(n)}
    if isinstance(field, OmegaRing) and _is_order3_family(field, nontrivial):
        return _pattern_from_eigensplit(field, nontrivial)
    if n * n > 1600:
        raise ValueError("commutation system too large for direct elimination")
    return _pattern_by_elimination(field, nontrivial)


def _pattern_from_eigensplit(field, knowns) -> set[tuple[int, int]]:
    t, chars = simultaneous_transition(field, knowns)
    tinv = t.inverse()
    n = t.n
    zero = field.zero
    col_supp = [
        [i for i in range(n) if t.rows[i][c] != zero] for c in range(n)
    ]
    row_supp = [
        [j for j in range(n) if tinv.rows[r][j] != zero] for r in range(n)
    ]
    by_char: dict[tuple, list[int]] = {}
    for c, ch in enumerate(chars):
        by_char.setdefault(ch, []).append(c)
    pattern: set[tuple[int, int]] = set()
    for members in by_char.values():
        rows = sorted({i for u in members for i in col_supp[u]})
        cols = sorted({j for v in members for j in row_supp[v]})
        # outer products T[:,u] * Tinv[v,:] form a commutant basis indexed
        # by char-equal pairs (u, v); their supports are full rectangles
        for u in members:
            for v in members:
                for i in col_supp[u]:
                    for j in row_supp[v]:
                        pattern.add((i, j))
        del rows, cols
    return pattern


def _pattern_by_elimination(field, knowns) -> set[tuple[int, int]]:
    n = knowns[0].n
    zero = field.zero
    rows = []
    for k in knowns:
        for r in range(n):
            for c in range(n):
                # position (r, c) of M K - K M
                coeff = [zero] * (n * n)
                krow = k.rows
                for m in range(n):
                    if krow[m][c] != zero:
                        coeff[r * n + m] = field.add(coeff[r * n + m], krow[m][c])
                    if krow[r][m] != zero:
                        coeff[m * n + c] = field.sub(coeff[m * n + c], krow[r][m])
                if any(v != zero for v in coeff):
                    rows.append(coeff)
    basis = nullspace_over_field(field, rows, n * n)
    pattern = set()
    for vec in basis:
        for idx, v in enumerate(vec):
            if v != zero:
                pattern.add((idx // n, idx % n))
    return pattern


def pairing_profile_partition(
    system: RootSystem, reference_roots: list[RootVector]
) -> BlockPartition:
    """Basis lines grouped by Cartan pairings against reference roots.

    The line of beta and the line of -beta always share a part; the
    Cartan lines join the part of the roots orthogonal to every
    reference root.
    """
    classes: dict[tuple, set[int]] = {}
    zero_profile = tuple(0 for _ in reference_roots)
    for line, (kind, idx) in enumerate(system.basis_labels):
        if kind == "h":
            key = zero_profile
        else:
            beta = system.roots[idx]
            prof = tuple(pairing(beta, g) for g in reference_roots)
            neg = tuple(-p for p in prof)
            key = max(prof, neg)
        classes.setdefault(key, set()).add(line)
    parts = sorted(classes.items(), key=lambda kv: min(kv[1]))
    labels = []
    for key, members in parts:
        nonzero = [abs(p) for p in key if p]
        if key == zero_profile:
            labels.append("first")
        elif nonzero == [2]:
            labels.append("fourth")
        elif len(nonzero) >= 2:
            labels.append("third")
        else:
            labels.append("second")
    return BlockPartition([m for _, m in parts], labels)


def generator_reference_roots(system: RootSystem, which: str) -> list[RootVector]:
    """Reference roots for the x1/x2 invariant-block charts.

    x1: every sequence root except the first; x2 (A family): the sequence
    roots orthogonal to the second simple root, i.e. all but the first two.
    """
    from .rootsys import orthogonal_sequence

    seq = orthogonal_sequence(system)
    if which == "x1":
        return seq.gammas[1:]
    if which == "x2":
        if system.family != "A":
            raise ValueError("the x2 chart is defined for the A family")
        target = system.simple(1)
        return [g for g in seq.gammas if pairing(g, target) == 0]
    raise ValueError(f"unknown generator chart {which!r}")


def joint_transition_block(
    ring: Ring,
    system: RootSystem,
    gamma_i: RootVector,
    gamma_j: RootVector,
    alpha: RootVector,
) -> RingMatrix:
    """Normalized transition jointly diagonalizing Q_{gi}, Q_{gj} on the
    eight lines spanned by alpha and its shifts by the two gammas.

    Rows give new coordinates in terms of old, scaled to a unit diagonal.
    The new basis diagonalizes both Q elements with eigenvalue pairs
    (xi, xi), (xi, xi^2), (xi^2, xi), (xi^2, xi^2), two lines each.
    """
    if not isinstance(ring, OmegaRing):
        raise ValueError("joint transition needs an omega-extension ring")

    def addr(a, b):
        return RootVector(tuple(x + y for x, y in zip(a.coords2, b.coords2)))

    chain = [alpha, addr(alpha, gamma_i), addr(alpha, gamma_j),
             addr(addr(alpha, gamma_i), gamma_j)]
    lines = []
    for r in chain:
        lines.append(system.root_line(r))
        lines.append(system.root_line(-r))
    qi = q_elem(ring, system, gamma_i)
    qj = q_elem(ring, system, gamma_j)

    def restrict(m):
        return RingMatrix(ring, [[m.rows[i][j] for j in lines] for i in lines])

    qi, qj = restrict(qi), restrict(qj)
    pis_i = _eigen_projections(ring, qi)
    pis_j = _eigen_projections(ring, qj)
    lams = [ring.one, ring.xi(), ring.xi2()]
    pi_of = {lam: p for lam, p in zip(lams, pis_i)}
    pj_of = {lam: p for lam, p in zip(lams, pis_j)}
    xi, xi2 = ring.xi(), ring.xi2()
    tcols = []
    for li, lj in ((xi, xi), (xi, xi2), (xi2, xi), (xi2, xi2)):
        pij = pi_of[li] * pj_of[lj]
        cand = [pij.column(c) for c in range(8)]
        picked = _unit_column_basis(ring, cand, need=2)
        if len(picked) != 2:
            raise SingularTransition("joint eigenvalue pair has wrong rank")
        tcols.extend(picked)
    t = RingMatrix(ring, [list(r) for r in zip(*tcols)])
    p = t.inverse()
    for q in (qi, qj):
        d = p * q * t
        for i in range(8):
            for j in range(8):
                if i != j and d.rows[i][j] != ring.zero:
                    raise SingularTransition("joint transition not diagonal")
    rows = []
    for i in range(8):
        piv = p.rows[i][i]
        if not ring.is_unit(piv):
            raise SingularTransition("transition diagonal is not a unit")
        inv = ring.invert(piv)
        rows.append([ring.mul(inv, v) for v in p.rows[i]])
    return RingMatrix(ring, rows)
