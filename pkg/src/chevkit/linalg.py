"""Dense square matrices over the rings of `chevkit.rings`.

Entries are stored as raw payloads; the owning ring supplies arithmetic.
Multiplication walks nonzero entries only, which keeps products of the
very sparse generator matrices cheap even at dimension 248.

Inverses and ranks use Gaussian elimination with unit pivots, which is
complete over local rings (every element is a unit or in the radical)
and over fields.
"""

from __future__ import annotations

from .rings import IntegerRing, NonUnit, Ring


class SingularMatrix(ArithmeticError):
    """No unit pivot was available while inverting/eliminating."""


class RingMatrix:
    __slots__ = ("ring", "n", "rows")

    def __init__(self, ring: Ring, rows):
        self.ring = ring
        self.rows = [list(r) for r in rows]
        self.n = len(self.rows)
        for r in self.rows:
            if len(r) != self.n:
                raise ValueError("matrix must be square")

    # -- constructors ---------------------------------------------------

    @classmethod
    def zeros(cls, ring: Ring, n: int) -> "RingMatrix":
        z = ring.zero
        return cls(ring, [[z] * n for _ in range(n)])

    @classmethod
    def identity(cls, ring: Ring, n: int) -> "RingMatrix":
        m = cls.zeros(ring, n)
        one = ring.one
        for i in range(n):
            m.rows[i][i] = one
        return m

    @classmethod
    def from_int_rows(cls, ring: Ring, int_rows) -> "RingMatrix":
        return cls(ring, [[ring.from_int(v) for v in r] for r in int_rows])

    def copy(self) -> "RingMatrix":
        return RingMatrix(self.ring, self.rows)

    def map_ring(self, target: Ring) -> "RingMatrix":
        """Functorial move of an integer matrix into another ring."""
        if not isinstance(self.ring, IntegerRing):
            raise ValueError("map_ring expects an integer matrix")
        return RingMatrix.from_int_rows(target, self.rows)

    # -- basic ops ------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RingMatrix)
            and self.ring == other.ring
            and self.rows == other.rows
        )

    def __hash__(self):
        raise TypeError("RingMatrix is not hashable")

    def entry(self, i: int, j: int):
        return self.rows[i][j]

    def is_identity(self) -> bool:
        one, zero = self.ring.one, self.ring.zero
        for i, row in enumerate(self.rows):
            for j, v in enumerate(row):
                if v != (one if i == j else zero):
                    return False
        return True

    def is_zero(self) -> bool:
        zero = self.ring.zero
        return all(v == zero for row in self.rows for v in row)

    def __add__(self, other: "RingMatrix") -> "RingMatrix":
        add = self.ring.add
        return RingMatrix(
            self.ring,
            [
                [add(a, b) for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ],
        )

    def __sub__(self, other: "RingMatrix") -> "RingMatrix":
        sub = self.ring.sub
        return RingMatrix(
            self.ring,
            [
                [sub(a, b) for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ],
        )

    def __neg__(self) -> "RingMatrix":
        neg = self.ring.neg
        return RingMatrix(self.ring, [[neg(a) for a in r] for r in self.rows])

    def scale(self, c) -> "RingMatrix":
        mul = self.ring.mul
        return RingMatrix(self.ring, [[mul(c, a) for a in r] for r in self.rows])

    def __mul__(self, other: "RingMatrix") -> "RingMatrix":
        if self.ring != other.ring or self.n != other.n:
            raise ValueError("mismatched matrices")
        ring = self.ring
        zero = ring.zero
        add, mul = ring.add, ring.mul
        n = self.n
        brows = other.rows
        out = [[zero] * n for _ in range(n)]
        for i in range(n):
            arow = self.rows[i]
            orow = out[i]
            for k in range(n):
                a = arow[k]
                if a == zero:
                    continue
                brow = brows[k]
                for j in range(n):
                    b = brow[j]
                    if b != zero:
                        orow[j] = add(orow[j], mul(a, b))
        return out_matrix(ring, out)

    def pow(self, k: int) -> "RingMatrix":
        if k < 0:
            return self.inverse().pow(-k)
        acc = RingMatrix.identity(self.ring, self.n)
        base = self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base if k > 1 else base
            k >>= 1
        return acc

    def transpose(self) -> "RingMatrix":
        return RingMatrix(self.ring, [list(col) for col in zip(*self.rows)])

    def support(self) -> set[tuple[int, int]]:
        zero = self.ring.zero
        return {
            (i, j)
            for i, row in enumerate(self.rows)
            for j, v in enumerate(row)
            if v != zero
        }

    def column(self, j: int) -> list:
        return [r[j] for r in self.rows]

    # -- elimination ------------------------------------------------------

    def inverse(self) -> "RingMatrix":
        """Gauss-Jordan with unit pivots; exact over local rings and fields."""
        ring = self.ring
        n = self.n
        zero = ring.zero
        a = [list(r) for r in self.rows]
        inv = [[ring.one if i == j else zero for j in range(n)] for i in range(n)]
        for col in range(n):
            piv = None
            for r in range(col, n):
                if a[r][col] != zero and ring.is_unit(a[r][col]):
                    piv = r
                    break
            if piv is None:
                raise SingularMatrix(f"no unit pivot in column {col}")
            a[col], a[piv] = a[piv], a[col]
            inv[col], inv[piv] = inv[piv], inv[col]
            pinv = ring.invert(a[col][col])
            a[col] = [ring.mul(pinv, v) for v in a[col]]
            inv[col] = [ring.mul(pinv, v) for v in inv[col]]
            for r in range(n):
                if r == col:
                    continue
                f = a[r][col]
                if f == zero:
                    continue
                arow, acol = a[r], a[col]
                irow, icol = inv[r], inv[col]
                for j in range(n):
                    if acol[j] != zero:
                        arow[j] = ring.sub(arow[j], ring.mul(f, acol[j]))
                    if icol[j] != zero:
                        irow[j] = ring.sub(irow[j], ring.mul(f, icol[j]))
        return RingMatrix(ring, inv)

    def residue(self) -> "RingMatrix":
        k = self.ring.residue_ring()
        return RingMatrix(k, [[self.ring.residue(v) for v in r] for r in self.rows])

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "ring": self.ring.spec(),
            "n": self.n,
            "entries": [[self.ring.to_json(v) for v in r] for r in self.rows],
        }


def out_matrix(ring: Ring, rows) -> RingMatrix:
    m = RingMatrix.__new__(RingMatrix)
    m.ring = ring
    m.rows = rows
    m.n = len(rows)
    return m


def matrix_from_json(obj: dict, ring: Ring | None = None) -> RingMatrix:
    from .rings import make_ring

    r = ring if ring is not None else make_ring(obj["ring"])
    rows = [[r.from_json(v) for v in row] for row in obj["entries"]]
    if len(rows) != obj["n"]:
        raise ValueError("row count disagrees with declared dimension")
    return RingMatrix(r, rows)


def rank_over_field(m: RingMatrix) -> int:
    """Row rank by elimination; entries must lie in a field."""
    ring = m.ring
    zero = ring.zero
    a = [list(r) for r in m.rows]
    n = m.n
    rank = 0
    row = 0
    for col in range(n):
        piv = None
        for r in range(row, n):
            if a[r][col] != zero:
                piv = r
                break
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        pinv = ring.invert(a[row][col])
        a[row] = [ring.mul(pinv, v) for v in a[row]]
        for r in range(n):
            if r != row and a[r][col] != zero:
                f = a[r][col]
                a[r] = [ring.sub(x, ring.mul(f, y)) for x, y in zip(a[r], a[row])]
        row += 1
        rank += 1
        if row == n:
            break
    return rank


def nullspace_over_field(ring: Ring, rows: list[list], width: int) -> list[list]:
    """Basis of the solution space of a homogeneous system over a field.

    `rows` are coefficient rows of length `width`.  Deterministic pivot
    order: first usable row, lowest column.
    """
    zero = ring.zero
    a = [list(r) for r in rows if any(v != zero for v in r)]
    pivots: dict[int, list] = {}
    for r in a:
        for col in range(width):
            if r[col] == zero:
                continue
            if col in pivots:
                f = r[col]
                prow = pivots[col]
                for j in range(col, width):
                    if prow[j] != zero:
                        r[j] = ring.sub(r[j], ring.mul(f, prow[j]))
            else:
                cinv = ring.invert(r[col])
                pivots[col] = [ring.mul(cinv, v) for v in r]
                break
    basis = []
    free = [c for c in range(width) if c not in pivots]
    for fc in free:
        vec = [zero] * width
        vec[fc] = ring.one
        for pc, prow in pivots.items():
            vec[pc] = ring.neg(prow[fc])
        basis.append(vec)
    return basis


def det_int(rows: list[list[int]]) -> int:
    """Exact integer determinant (fraction-free Bareiss elimination)."""
    a = [list(r) for r in rows]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[-1][-1]
