"""Simply-laced root systems A_l, D_l, E_6, E_7, E_8.

Roots are stored with doubled integer coordinates (coords2 = 2 * euclidean)
so that the half-integer roots of the E series stay integral.  All roots
have squared length 2, i.e. sum(c*c for c in coords2) == 8.

Realizations:
    A_l  in R^{l+1}:  e_i - e_j, i != j
    D_l  in R^l:      +-e_i +- e_j, i < j
    E_8  in R^8:      +-e_i +- e_j  plus  (1/2) sum(+-e_i) with an even
                      number of minus signs
    E_7  = E_8 roots orthogonal to e_7 + e_8
    E_6  = E_7 roots orthogonal to e_6 + e_7

Positive roots are cut out by a fixed generic linear functional; the basis
order lists positive roots by height, then by descending coords2, with the
lines x_beta, x_{-beta} adjacent, followed by the Cartan lines h_1..h_l.
For A_3 this reproduces the standard 15-line weight-basis enumeration
v_1 = x_{a1}, v_2 = x_{-a1}, ..., v_13 = h_{a1}, v_14 = h_{a2}, v_15 = h_{a3}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product


@dataclass(frozen=True)
class RootVector:
    coords2: tuple[int, ...]

    def __add__(self, other: "RootVector") -> "RootVector":
        return RootVector(tuple(a + b for a, b in zip(self.coords2, other.coords2)))

    def __neg__(self) -> "RootVector":
        return RootVector(tuple(-a for a in self.coords2))

    def __repr__(self) -> str:
        return "Root(" + ",".join(str(c) for c in self.coords2) + ")"


def pairing(beta: RootVector, alpha: RootVector) -> int:
    """Cartan pairing <beta, alpha>; equals the euclidean product since
    all roots have squared length 2."""
    dot4 = sum(a * b for a, b in zip(beta.coords2, alpha.coords2))
    if dot4 % 4 != 0:
        raise ValueError("pairing is not integral; vectors are not both roots")
    return dot4 // 4


def _unit2(i: int, dim: int) -> list[int]:
    v = [0] * dim
    v[i] = 2
    return v


def _generate_coords(family: str, rank: int) -> tuple[list[tuple[int, ...]], int]:
    if family == "A":
        if rank < 2:
            raise ValueError("A_l needs l >= 2")
        dim = rank + 1
        roots = []
        for i in range(dim):
            for j in range(dim):
                if i != j:
                    v = [0] * dim
                    v[i], v[j] = 2, -2
                    roots.append(tuple(v))
        return roots, dim
    if family == "D":
        if rank < 4:
            raise ValueError("D_l needs l >= 4")
        dim = rank
        roots = []
        for i, j in combinations(range(dim), 2):
            for si, sj in product((2, -2), repeat=2):
                v = [0] * dim
                v[i], v[j] = si, sj
                roots.append(tuple(v))
        return roots, dim
    if family == "E":
        if rank not in (6, 7, 8):
            raise ValueError("E_l needs l in {6, 7, 8}")
        dim = 8
        roots = []
        for i, j in combinations(range(8), 2):
            for si, sj in product((2, -2), repeat=2):
                v = [0] * 8
                v[i], v[j] = si, sj
                roots.append(tuple(v))
        for signs in product((1, -1), repeat=8):
            if signs.count(-1) % 2 == 0:
                roots.append(signs)
        if rank == 8:
            return roots, dim

        def orth(v, i, j):  # orthogonal to e_i + e_j
            return v[i] + v[j] == 0

        roots = [v for v in roots if orth(v, 6, 7)]
        if rank == 7:
            return roots, dim
        roots = [v for v in roots if orth(v, 5, 6)]
        return roots, dim
    raise ValueError(f"unsupported family {family!r}")


# weights 3^(dim-1-i) make the positivity functional generic on all roots
def _height_key(coords2: tuple[int, ...]) -> Fraction:
    dim = len(coords2)
    return sum(Fraction(c, 2) * 3 ** (dim - 1 - i) for i, c in enumerate(coords2))


class RootSystem:
    def __init__(self, family: str, rank: int):
        coords, dim = _generate_coords(family, rank)
        self.family = family
        self.rank = rank
        self.ambient = dim

        pos = sorted(
            (c for c in coords if _height_key(c) > 0),
            key=lambda c: tuple(-x for x in c),
        )
        neg = [tuple(-x for x in c) for c in pos]
        pos_set = set(pos)
        all_set = pos_set | set(neg)

        # simple roots: positive roots that are not sums of two positives
        simples = []
        for c in pos:
            decomposable = any(
                tuple(a - b for a, b in zip(c, d)) in pos_set for d in pos if d != c
            )
            if not decomposable:
                simples.append(c)
        if len(simples) != rank:
            raise AssertionError(
                f"found {len(simples)} simple roots for {family}{rank}"
            )

        # heights and simple-root coefficients by closure from the simples
        height: dict[tuple[int, ...], int] = {s: 1 for s in simples}
        coeffs: dict[tuple[int, ...], tuple[int, ...]] = {
            s: tuple(1 if k == i else 0 for k in range(rank))
            for i, s in enumerate(simples)
        }
        frontier = list(simples)
        while frontier:
            nxt = []
            for c in frontier:
                for i, s in enumerate(simples):
                    t = tuple(a + b for a, b in zip(c, s))
                    if t in pos_set and t not in height:
                        height[t] = height[c] + 1
                        cf = list(coeffs[c])
                        cf[i] += 1
                        coeffs[t] = tuple(cf)
                        nxt.append(t)
            frontier = nxt
        if len(height) != len(pos):
            raise AssertionError("height closure missed positive roots")

        pos.sort(key=lambda c: (height[c], tuple(-x for x in c)))

        self.simples = [RootVector(s) for s in simples]
        self.positives = [RootVector(c) for c in pos]
        self.roots: list[RootVector] = []
        for c in pos:
            self.roots.append(RootVector(c))
            self.roots.append(RootVector(tuple(-x for x in c)))
        self._index = {r.coords2: i for i, r in enumerate(self.roots)}
        self._coeffs = {c: coeffs[c] for c in pos}
        self._height = height
        self._cache: dict = {}

        # basis order: (x_b, x_{-b}) pairs for positives by (height, lex), then h's
        self.num_positive = len(pos)
        self.n = rank + 2 * self.num_positive
        self.basis_labels: list[tuple[str, int]] = [
            ("root", i) for i in range(2 * self.num_positive)
        ] + [("h", i) for i in range(rank)]
        if all(c in all_set for c in all_set):
            pass

    # -- lookups ----------------------------------------------------------

    def root_index(self, r: RootVector) -> int:
        return self._index[r.coords2]

    def contains(self, coords2: tuple[int, ...]) -> bool:
        return coords2 in self._index

    def root_line(self, r: RootVector) -> int:
        """Basis line of x_r."""
        return self.root_index(r)

    def h_line(self, i: int) -> int:
        return 2 * self.num_positive + i

    def height(self, r: RootVector) -> int:
        c = r.coords2
        if c in self._height:
            return self._height[c]
        return -self._height[(-r).coords2]

    def simple_coeffs(self, r: RootVector) -> tuple[int, ...]:
        """Coefficients of r in the simple-root basis (negated for -r)."""
        c = r.coords2
        if c in self._coeffs:
            return self._coeffs[c]
        return tuple(-x for x in self._coeffs[(-r).coords2])

    def simple(self, i: int) -> RootVector:
        return self.simples[i]

    def __repr__(self) -> str:
        return f"{self.family}{self.rank}"


def build_root_system(family: str, rank: int) -> RootSystem:
    system = RootSystem(family, rank)
    counts = {"A": rank * (rank + 1), "D": 2 * rank * (rank - 1)}
    expected = counts.get(family, {6: 72, 7: 126, 8: 240}.get(rank))
    if len(system.roots) != expected:
        raise AssertionError("root count mismatch")
    return system


def parse_system(name: str) -> RootSystem:
    """Parse names like 'A3', 'D4', 'E8'."""
    name = name.strip().upper()
    if len(name) < 2 or name[0] not in "ADE":
        raise ValueError(f"bad system name {name!r}")
    return build_root_system(name[0], int(name[1:]))


def root_sum(system: RootSystem, a: RootVector, b: RootVector) -> RootVector | None:
    c = tuple(x + y for x, y in zip(a.coords2, b.coords2))
    if any(c) and system.contains(c):
        return RootVector(c)
    return None


def reflect(beta: RootVector, alpha: RootVector) -> RootVector:
    k = pairing(beta, alpha)
    return RootVector(tuple(b - k * a for b, a in zip(beta.coords2, alpha.coords2)))


@dataclass
class OrthogonalSequence:
    gammas: list[RootVector]
    connectors: dict[tuple[int, int], RootVector]

    def connector(self, i: int, j: int) -> RootVector:
        return self.connectors[(i, j) if (i, j) in self.connectors else (j, i)]


def _half(*signs: int) -> RootVector:
    return RootVector(tuple(signs))


def _diff(p: int, q: int, dim: int) -> RootVector:
    v = [0] * dim
    v[p], v[q] = 2, -2
    return RootVector(tuple(v))


def _sum2(p: int, q: int, dim: int, sp: int = 2, sq: int = 2) -> RootVector:
    v = [0] * dim
    v[p], v[q] = sp, sq
    return RootVector(tuple(v))


def orthogonal_sequence(system: RootSystem) -> OrthogonalSequence:
    """The standard maximal family of mutually orthogonal roots.

    A_l: every other simple root e_1-e_2, e_3-e_4, ... (ending with
         e_l - e_{l+1} when l is odd).
    D_l: e_{2i-1} - e_{2i} and e_{2i-1} + e_{2i}.
    E_8: e_1-e_2, e_3-e_4, e_5-e_6, e_7-e_8 and the four half-sum roots
         (1/2)(e_1+e_2 -+ ...) with sign blocks of even width.
    E_7/E_6: the members of the E_8 set that survive in the sub-lattice,
         padded with pair sums (documented choice; any maximal orthogonal
         set with connectors serves the block analysis).
    """
    fam, l, dim = system.family, system.rank, system.ambient
    gammas: list[RootVector] = []
    if fam == "A":
        for p in range(0, l + 1 - 1, 2):
            gammas.append(_diff(p, p + 1, dim))
    elif fam == "D":
        for p in range(0, l - 1, 2):
            gammas.append(_diff(p, p + 1, dim))
        for p in range(0, l - 1, 2):
            gammas.append(_sum2(p, p + 1, dim))
    elif fam == "E" and l == 8:
        for p in (0, 2, 4, 6):
            gammas.append(_diff(p, p + 1, dim))
        gammas.append(_half(1, 1, -1, -1, -1, -1, -1, -1))
        gammas.append(_half(1, 1, 1, 1, -1, -1, -1, -1))
        gammas.append(_half(1, 1, 1, 1, 1, 1, -1, -1))
        gammas.append(_half(1, 1, 1, 1, 1, 1, 1, 1))
    elif fam == "E" and l == 7:
        # e_1-e_2, e_3-e_4, e_5-e_6 survive from the E_8 list; pad with sums
        for p in (0, 2, 4):
            gammas.append(_diff(p, p + 1, dim))
            gammas.append(_sum2(p, p + 1, dim))
        gammas.append(_diff(6, 7, dim))
    elif fam == "E" and l == 6:
        # e_1-e_2, e_3-e_4 survive; pad with the matching pair sums
        for p in (0, 2):
            gammas.append(_diff(p, p + 1, dim))
            gammas.append(_sum2(p, p + 1, dim))
    else:
        raise ValueError(f"unsupported system {system}")

    for g in gammas:
        if not system.contains(g.coords2):
            raise AssertionError(f"{g} is not a root of {system}")
    for a, b in combinations(gammas, 2):
        if pairing(a, b) != 0:
            raise AssertionError("sequence is not orthogonal")

    connectors: dict[tuple[int, int], RootVector] = {}
    for i, j in combinations(range(len(gammas)), 2):
        connectors[(i, j)] = _find_connector(system, gammas[i], gammas[j])
    return OrthogonalSequence(gammas, connectors)


def _find_connector(system: RootSystem, gi: RootVector, gj: RootVector) -> RootVector:
    """A root pairing to -1 with both members of an orthogonal pair.

    For difference pairs e_p-e_{p+1}, e_q-e_{q+1} (p < q) the classical
    choice e_{p+1}-e_q is used; other shapes fall back to the first root
    (in basis order) with the required pairings.
    """
    ci, cj = gi.coords2, gj.coords2
    dim = len(ci)

    def shape(c):
        pos = [k for k, v in enumerate(c) if v == 2]
        neg = [k for k, v in enumerate(c) if v == -2]
        if len(pos) == 1 and len(neg) == 1 and all(v in (0, 2, -2) for v in c):
            return ("diff", pos[0], neg[0])
        if len(pos) == 2 and not neg and all(v in (0, 2) for v in c):
            return ("sum", pos[0], pos[1])
        return ("half",)

    si, sj = shape(ci), shape(cj)
    candidate = None
    if si[0] != "half" and sj[0] != "half" and {si[1], si[2]} == {sj[1], sj[2]}:
        # same index pair (e_p -+ e_{p+1}): take -e_p + e_q with q spare
        spare = next(k for k in range(dim) if k not in (si[1], si[2]))
        candidate = _diff(spare, si[1], dim)
    elif si[0] == "diff" or sj[0] == "diff":
        # anchor on a difference root e_p - e_{p+1}: e_{p+1} - e_q
        d, o = (si, sj) if si[0] == "diff" else (sj, si)
        if o[0] != "half":
            candidate = _diff(d[2], o[1], dim)
    elif si[0] == "sum" and sj[0] == "sum":
        candidate = _sum2(si[2], sj[1], dim, -2, -2)
    if candidate is not None and system.contains(candidate.coords2):
        if pairing(gi, candidate) == -1 and pairing(gj, candidate) == -1:
            return candidate
    for r in system.roots:
        if pairing(gi, r) == -1 and pairing(gj, r) == -1:
            return r
    raise AssertionError(f"no connector for {gi}, {gj} in {system}")
