"""Chevalley basis of the adjoint representation and the generator matrices.

Basis lines are those of `RootSystem.basis_labels`: the pair (x_beta,
x_{-beta}) for each positive root beta in height/lex order, then the
Cartan lines h_1..h_l (coroots of the simple roots).

Structure constant signs come from the classical extraspecial-pair
recursion over the height-ordered positive roots: for each non-simple
positive root g the pair (r, s), r + s = g with r minimal, gets
N(r, s) = +1, and every other constant follows from the Jacobi identity
and the (anti)symmetries N(b, a) = -N(a, b), N(-a, -b) = -N(a, b).
The convention is a gauge choice; printed reference forms elsewhere may
differ by a signed diagonal change of basis.
"""

from __future__ import annotations

from .linalg import RingMatrix
from .rings import IntegerRing, NonUnit, Ring
from .rootsys import OrthogonalSequence, RootSystem, RootVector, pairing, root_sum


class DivisibilityViolation(ArithmeticError):
    """An alleged divided power M^k / k! failed entrywise divisibility."""


class StructureConstants:
    """Signs N(a, b) for all root pairs with a + b a root."""

    def __init__(self, system: RootSystem):
        self.system = system
        self._pos: dict[tuple[int, int], int] = {}
        self._posindex = {r.coords2: i for i, r in enumerate(system.positives)}
        self._build()

    def _build(self) -> None:
        system = self.system
        pos = system.positives
        index = {r.coords2: i for i, r in enumerate(pos)}

        def as_pos(r: RootVector) -> int | None:
            return index.get(r.coords2)

        # process sums in increasing height; extraspecial pair gets +1
        for gi, g in enumerate(pos):
            pairs = []
            for ri, r in enumerate(pos):
                if ri >= gi:
                    break
                rest = RootVector(
                    tuple(a - b for a, b in zip(g.coords2, r.coords2))
                )
                si = as_pos(rest)
                if si is not None and ri < si:
                    pairs.append((ri, si))
            if not pairs:
                continue
            pairs.sort()
            r0, s0 = pairs[0]
            self._pos[(r0, s0)] = 1
            for ri, si in pairs[1:]:
                self._pos[(ri, si)] = self._special_sign(pos, r0, s0, ri, si)

    def _special_sign(self, pos, r0, s0, ri, si) -> int:
        """Sign of a special pair from the extraspecial one (Jacobi)."""
        r, a, b = pos[r0], pos[ri], pos[si]
        total = 0
        a_minus_r = RootVector(tuple(x - y for x, y in zip(a.coords2, r.coords2)))
        if self.system.contains(a_minus_r.coords2):
            total += self.sign(-r, a) * self.sign(a_minus_r, b)
        b_minus_r = RootVector(tuple(x - y for x, y in zip(b.coords2, r.coords2)))
        if self.system.contains(b_minus_r.coords2):
            total += self.sign(-r, b) * self.sign(a, b_minus_r)
        if total not in (1, -1):
            raise AssertionError("extraspecial recursion produced a bad sign")
        return total

    def _pos_sign(self, a: RootVector, b: RootVector) -> int:
        ia = self._posindex[a.coords2]
        ib = self._posindex[b.coords2]
        if ia < ib:
            return self._pos[(ia, ib)]
        return -self._pos[(ib, ia)]

    def sign(self, a: RootVector, b: RootVector) -> int:
        """N(a, b) for any pair of roots with a + b a root."""
        system = self.system
        s = tuple(x + y for x, y in zip(a.coords2, b.coords2))
        if not any(s) or not system.contains(s):
            raise ValueError("a + b is not a root")
        ha, hb = system.height(a), system.height(b)
        if ha > 0 and hb > 0:
            return self._pos_sign(a, b)
        if ha < 0 and hb < 0:
            return -self._pos_sign(-a, -b)
        if ha < 0:
            return -self.sign(b, a)
        # a positive, b negative
        if system.height(RootVector(s)) > 0:
            # N(a,b) = N(b, -a-b) = -N(-b, a+b)
            return -self._pos_sign(-b, RootVector(s))
        # N(a,b) = N(-a-b, a)
        return self._pos_sign(-RootVector(s), a)

    def bracket(self, u, v):
        """Lie bracket on basis symbols ('x', root) / ('h', i).

        Returns a list of (coefficient, symbol) terms; used as the
        independent oracle for the Jacobi checks.
        """
        system = self.system
        ku, kv = u[0], v[0]
        if ku == "h" and kv == "h":
            return []
        if ku == "h":
            c = pairing(v[1], system.simple(u[1]))
            return [(c, v)] if c else []
        if kv == "h":
            c = -pairing(u[1], system.simple(v[1]))
            return [(c, u)] if c else []
        a, b = u[1], v[1]
        if (-a).coords2 == b.coords2:
            return [
                (c, ("h", i))
                for i, c in enumerate(system.simple_coeffs(a))
                if c
            ]
        s = root_sum(system, a, b)
        if s is None:
            return []
        return [(self.sign(a, b), ("x", s))]


def structure_constants(system: RootSystem) -> StructureConstants:
    cache = system._cache
    if "N" not in cache:
        cache["N"] = StructureConstants(system)
    return cache["N"]


_ZZ = IntegerRing()


def ad_matrix(system: RootSystem, alpha: RootVector) -> RingMatrix:
    """Matrix of ad x_alpha on the Chevalley basis, over the integers."""
    key = ("ad", alpha.coords2)
    if key in system._cache:
        return system._cache[key]
    N = structure_constants(system)
    n = system.n
    rows = [[0] * n for _ in range(n)]
    for j, (kind, idx) in enumerate(system.basis_labels):
        if kind == "root":
            beta = system.roots[idx]
            if (-alpha).coords2 == beta.coords2:
                for i, c in enumerate(system.simple_coeffs(alpha)):
                    if c:
                        rows[system.h_line(i)][j] = c
            else:
                s = root_sum(system, alpha, beta)
                if s is not None:
                    rows[system.root_line(s)][j] = N.sign(alpha, beta)
        else:
            c = -pairing(alpha, system.simple(idx))
            if c:
                rows[system.root_line(alpha)][j] = c
    m = RingMatrix(_ZZ, rows)
    system._cache[key] = m
    return m


def divided_power(m: RingMatrix, k: int) -> RingMatrix:
    """M^k / k! for an integer matrix, exactly."""
    if not isinstance(m.ring, IntegerRing):
        raise ValueError("divided powers are defined for integer matrices")
    if k == 0:
        return RingMatrix.identity(m.ring, m.n)
    power = m
    for _ in range(k - 1):
        power = power * m
    fact = 1
    for i in range(2, k + 1):
        fact *= i
    rows = []
    for row in power.rows:
        out = []
        for v in row:
            if v % fact:
                raise DivisibilityViolation(f"{v} not divisible by {k}!")
            out.append(v // fact)
        rows.append(out)
    return RingMatrix(m.ring, rows)


def _x_parts(system: RootSystem, alpha: RootVector) -> tuple[RingMatrix, RingMatrix]:
    """Integer matrices (ad, ad^2/2); ad^3 vanishes on the adjoint module."""
    key = ("xparts", alpha.coords2)
    if key in system._cache:
        return system._cache[key]
    m = ad_matrix(system, alpha)
    m2 = divided_power(m, 2)
    if not (m2 * m).is_zero():
        raise AssertionError("ad x_alpha is not 3-step nilpotent")
    system._cache[key] = (m, m2)
    return m, m2


def x_elem(ring: Ring, system: RootSystem, alpha: RootVector, t) -> RingMatrix:
    """exp(t ad x_alpha) = 1 + t M + t^2 M^2/2 over the given ring."""
    m, m2 = _x_parts(system, alpha)
    t = getattr(t, "value", t)
    n = system.n
    zero = ring.zero
    add, mul = ring.add, ring.mul
    t2 = mul(t, t)
    rows = [[zero] * n for _ in range(n)]
    for i in range(n):
        out = rows[i]
        out[i] = ring.one
        mrow, m2row = m.rows[i], m2.rows[i]
        for j in range(n):
            acc = out[j]
            if mrow[j]:
                acc = add(acc, mul(t, ring.from_int(mrow[j])))
            if m2row[j]:
                acc = add(acc, mul(t2, ring.from_int(m2row[j])))
            out[j] = acc
    return RingMatrix(ring, rows)


def w_elem(ring: Ring, system: RootSystem, alpha: RootVector, t) -> RingMatrix:
    """w_alpha(t) = x_alpha(t) x_{-alpha}(-t^{-1}) x_alpha(t); t must be a unit."""
    t = getattr(t, "value", t)
    if not ring.is_unit(t):
        raise NonUnit(f"w_elem needs a unit, got {t!r}")
    tinv = ring.invert(t)
    return (
        x_elem(ring, system, alpha, t)
        * x_elem(ring, system, -alpha, ring.neg(tinv))
        * x_elem(ring, system, alpha, t)
    )


def h_elem(ring: Ring, system: RootSystem, alpha: RootVector, t) -> RingMatrix:
    """h_alpha(t) = w_alpha(t) w_alpha(1)^{-1}; diagonal with t^<beta,alpha>."""
    t = getattr(t, "value", t)
    if not ring.is_unit(t):
        raise NonUnit(f"h_elem needs a unit, got {t!r}")
    w_t = w_elem(ring, system, alpha, t)
    w_minus1 = w_elem(ring, system, alpha, ring.from_int(-1))
    return w_t * w_minus1


def q_elem(ring: Ring, system: RootSystem, alpha: RootVector) -> RingMatrix:
    """Q_alpha = w_alpha(1) x_alpha(1), an element of order three."""
    one = ring.one
    return w_elem(ring, system, alpha, one) * x_elem(ring, system, alpha, one)


def q_elem_int(system: RootSystem, alpha: RootVector) -> RingMatrix:
    key = ("qint", alpha.coords2)
    if key in system._cache:
        return system._cache[key]
    q = q_elem(_ZZ, system, alpha)
    system._cache[key] = q
    return q


def wij_elem(
    ring: Ring, system: RootSystem, seq: OrthogonalSequence, i: int, j: int
) -> RingMatrix:
    """w_{i,j} = w_c(1) w_{gamma_i}(1) w_{gamma_j}(1) w_c(1), c the connector.

    Swaps Q_{gamma_i} and Q_{gamma_j} by conjugation and squares to the
    identity; i, j are positions in the orthogonal sequence.
    """
    if i == j:
        raise ValueError("need two distinct sequence positions")
    c = seq.connector(i, j)
    one = ring.one
    wc = w_elem(ring, system, c, one)
    return (
        wc
        * w_elem(ring, system, seq.gammas[i], one)
        * w_elem(ring, system, seq.gammas[j], one)
        * wc
    )


def torus_conjugation_exponent(beta: RootVector, alpha: RootVector) -> int:
    """Exponent in h_alpha(t) x_beta(s) h_alpha(t)^{-1} = x_beta(t^k s)."""
    return pairing(beta, alpha)
