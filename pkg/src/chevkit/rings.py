"""Commutative rings with exact arithmetic.

Every ring here is a commutative ring with 1 whose elements have a unique
canonical payload, so equality of elements is payload equality.  The rings
of interest are the local ones in which 2 is not invertible (Z/2^k, the
rationals with odd denominator, dual numbers over a characteristic-2 base),
together with the extensions obtained by adjoining a cube root of unity.

Payload conventions:
    Integers                -> int
    IntMod(n)               -> int in range(n)
    OddLocalizedRationals   -> Fraction in lowest terms, odd denominator
    DualNumbers(B)          -> (a, b) meaning a + b*eps,  eps^2 = 0
    OmegaExtension(B)       -> (a, b) meaning a + b*xi,   xi^2 = -xi - 1

All ring handles and elements are immutable; operations are pure and safe
for concurrent use.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Iterator


class NonUnit(ArithmeticError):
    """Inversion was requested for a non-invertible element."""


class NotLocal(ValueError):
    """A radical/residue operation was requested on a non-local ring."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _prime_power_base(n: int) -> int | None:
    """Return p if n = p^k for a prime p, else None."""
    if n < 2:
        return None
    for p in range(2, n + 1):
        if p * p > n:
            return n if _is_prime(n) else None
        if n % p == 0:
            m = n
            while m % p == 0:
                m //= p
            return p if m == 1 else None
    return None


class Ring:
    """Base class for ring handles.  Subclasses operate on raw payloads."""

    kind = "abstract"
    local = False

    # -- payload arithmetic -------------------------------------------------

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def from_int(self, k: int):
        raise NotImplementedError

    @property
    def zero(self):
        return self.from_int(0)

    @property
    def one(self):
        return self.from_int(1)

    def is_zero(self, a) -> bool:
        return a == self.zero

    def is_unit(self, a) -> bool:
        raise NotImplementedError

    def invert(self, a):
        raise NotImplementedError

    def in_radical(self, a) -> bool:
        if not self.local:
            raise NotLocal(f"{self} is not local")
        return not self.is_unit(a)

    # -- residue field ------------------------------------------------------

    def residue_ring(self) -> "Ring":
        if not self.local:
            raise NotLocal(f"{self} is not local")
        raise NotImplementedError

    def residue(self, a):
        """Image of the payload in the residue field."""
        if not self.local:
            raise NotLocal(f"{self} is not local")
        raise NotImplementedError

    # -- misc ---------------------------------------------------------------

    @property
    def no_half(self) -> bool:
        """True for local rings where 2 is not a unit."""
        return self.local and not self.is_unit(self.from_int(2))

    def sample(self, rng) -> Any:
        raise NotImplementedError

    def sample_unit(self, rng) -> Any:
        for _ in range(1000):
            a = self.sample(rng)
            if self.is_unit(a):
                return a
        raise RuntimeError(f"could not sample a unit of {self}")

    def to_json(self, a):
        raise NotImplementedError

    def from_json(self, obj):
        raise NotImplementedError

    def spec(self) -> str:
        raise NotImplementedError

    def __repr__(self) -> str:
        return self.spec()

    def __eq__(self, other) -> bool:
        return isinstance(other, Ring) and self.spec() == other.spec()

    def __hash__(self) -> int:
        return hash(self.spec())

    def element(self, payload) -> "RingElement":
        return RingElement(self, payload)


class IntegerRing(Ring):
    kind = "Integers"
    local = False

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def from_int(self, k):
        return k

    def is_unit(self, a):
        return a in (1, -1)

    def invert(self, a):
        if a in (1, -1):
            return a
        raise NonUnit(f"{a} is not a unit in Z")

    def sample(self, rng):
        return rng.randint(-9, 9)

    def to_json(self, a):
        return a

    def from_json(self, obj):
        return int(obj)

    def spec(self):
        return "Z"


class IntModRing(Ring):
    kind = "IntMod"

    def __init__(self, n: int):
        if n < 2:
            raise ValueError("modulus must be >= 2")
        self.n = n
        self._p = _prime_power_base(n)
        self.local = self._p is not None

    def add(self, a, b):
        return (a + b) % self.n

    def mul(self, a, b):
        return (a * b) % self.n

    def neg(self, a):
        return (-a) % self.n

    def from_int(self, k):
        return k % self.n

    def is_unit(self, a):
        if self._p is not None:
            return a % self._p != 0
        from math import gcd

        return gcd(a, self.n) == 1

    def invert(self, a):
        try:
            return pow(a, -1, self.n)
        except ValueError:
            raise NonUnit(f"{a} is not a unit in Z/{self.n}") from None

    def residue_ring(self):
        if not self.local:
            raise NotLocal(f"{self} is not local")
        return IntModRing(self._p)

    def residue(self, a):
        if not self.local:
            raise NotLocal(f"{self} is not local")
        return a % self._p

    def sample(self, rng):
        return rng.randrange(self.n)

    def to_json(self, a):
        return a

    def from_json(self, obj):
        return int(obj) % self.n

    def spec(self):
        return f"Z/{self.n}"


class OddLocalRing(Ring):
    """Rationals with odd denominator: the integers localized at 2."""

    kind = "OddLocalizedRationals"
    local = True

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def from_int(self, k):
        return Fraction(k)

    def coerce(self, q: Fraction) -> Fraction:
        q = Fraction(q)
        if q.denominator % 2 == 0:
            raise ValueError(f"{q} has even denominator, not in Z_(2)")
        return q

    def is_unit(self, a):
        return a.numerator % 2 != 0

    def invert(self, a):
        if a.numerator % 2 == 0:
            raise NonUnit(f"{a} is not a unit in Zodd")
        return 1 / a

    def residue_ring(self):
        return IntModRing(2)

    def residue(self, a):
        # denominator is odd, hence congruent to 1 mod 2
        return a.numerator % 2

    def sample(self, rng):
        den = rng.choice([1, 3, 5, 7, 9, 11])
        return Fraction(rng.randint(-20, 20), den)

    def to_json(self, a):
        return {"num": a.numerator, "den": a.denominator}

    def from_json(self, obj):
        return self.coerce(Fraction(int(obj["num"]), int(obj["den"])))

    def spec(self):
        return "Zodd"


class DualRing(Ring):
    """Dual numbers a + b*eps over a base ring, eps^2 = 0."""

    kind = "DualNumbers"

    def __init__(self, base: Ring):
        self.base = base
        self.local = base.local

    def add(self, a, b):
        return (self.base.add(a[0], b[0]), self.base.add(a[1], b[1]))

    def mul(self, a, b):
        B = self.base
        return (B.mul(a[0], b[0]), B.add(B.mul(a[0], b[1]), B.mul(a[1], b[0])))

    def neg(self, a):
        return (self.base.neg(a[0]), self.base.neg(a[1]))

    def from_int(self, k):
        return (self.base.from_int(k), self.base.from_int(0))

    def eps(self):
        return (self.base.from_int(0), self.base.from_int(1))

    def is_unit(self, a):
        return self.base.is_unit(a[0])

    def invert(self, a):
        inv = self.base.invert(a[0])
        B = self.base
        return (inv, B.neg(B.mul(B.mul(inv, a[1]), inv)))

    def in_radical(self, a):
        if not self.local:
            raise NotLocal(f"{self} is not local")
        return self.base.in_radical(a[0])

    def residue_ring(self):
        if not self.local:
            raise NotLocal(f"{self} is not local")
        return self.base.residue_ring()

    def residue(self, a):
        if not self.local:
            raise NotLocal(f"{self} is not local")
        return self.base.residue(a[0])

    def sample(self, rng):
        return (self.base.sample(rng), self.base.sample(rng))

    def to_json(self, a):
        return {"a": self.base.to_json(a[0]), "b": self.base.to_json(a[1])}

    def from_json(self, obj):
        return (self.base.from_json(obj["a"]), self.base.from_json(obj["b"]))

    def spec(self):
        return f"dual({self.base.spec()})"


class OmegaRing(Ring):
    """Extension a + b*xi by a primitive cube root of unity, xi^2 = -xi - 1.

    Units are detected through the norm a^2 - ab + b^2, which lies in the
    base ring.  No irreducibility of x^2+x+1 over the base is assumed; the
    handle is flagged local only when the base is local and x^2+x+1 has no
    root in its residue field.
    """

    kind = "OmegaExtension"

    def __init__(self, base: Ring):
        self.base = base
        self.local = base.local and self._residue_irreducible()

    def _residue_irreducible(self) -> bool:
        if not self.base.local:
            return False
        k = self.base.residue_ring()
        if isinstance(k, IntModRing):
            return all((x * x + x + 1) % k.n != 0 for x in range(k.n))
        if isinstance(k, OmegaRing):
            # x^2+x+1 splits once xi is present
            return False
        return False

    def add(self, a, b):
        return (self.base.add(a[0], b[0]), self.base.add(a[1], b[1]))

    def mul(self, a, b):
        # (a0 + a1 xi)(b0 + b1 xi) = a0b0 - a1b1 + (a0b1 + a1b0 - a1b1) xi
        B = self.base
        a0, a1 = a
        b0, b1 = b
        a1b1 = B.mul(a1, b1)
        re = B.sub(B.mul(a0, b0), a1b1)
        im = B.sub(B.add(B.mul(a0, b1), B.mul(a1, b0)), a1b1)
        return (re, im)

    def neg(self, a):
        return (self.base.neg(a[0]), self.base.neg(a[1]))

    def from_int(self, k):
        return (self.base.from_int(k), self.base.from_int(0))

    def xi(self):
        return (self.base.from_int(0), self.base.from_int(1))

    def xi2(self):
        return (self.base.from_int(-1), self.base.from_int(-1))

    def norm(self, a):
        B = self.base
        a0, a1 = a
        return B.add(B.sub(B.mul(a0, a0), B.mul(a0, a1)), B.mul(a1, a1))

    def is_unit(self, a):
        return self.base.is_unit(self.norm(a))

    def invert(self, a):
        ninv = self.base.invert(self.norm(a))
        B = self.base
        # conjugate of a0 + a1 xi is (a0 - a1) - a1 xi
        return (B.mul(B.sub(a[0], a[1]), ninv), B.mul(B.neg(a[1]), ninv))

    def in_radical(self, a):
        if not self.local:
            raise NotLocal(f"{self} is not local")
        return self.base.in_radical(self.norm(a))

    def residue_ring(self):
        if not self.local:
            raise NotLocal(f"{self} is not local")
        return OmegaRing(self.base.residue_ring())

    def residue(self, a):
        if not self.local:
            raise NotLocal(f"{self} is not local")
        return (self.base.residue(a[0]), self.base.residue(a[1]))

    def sample(self, rng):
        return (self.base.sample(rng), self.base.sample(rng))

    def to_json(self, a):
        return {"a": self.base.to_json(a[0]), "b": self.base.to_json(a[1])}

    def from_json(self, obj):
        return (self.base.from_json(obj["a"]), self.base.from_json(obj["b"]))

    def spec(self):
        return f"omega({self.base.spec()})"


class RingElement:
    """An element tied to its owning ring.  Thin immutable wrapper."""

    __slots__ = ("ring", "value")

    def __init__(self, ring: Ring, value):
        self.ring = ring
        self.value = value

    def _check(self, other: "RingElement"):
        if self.ring != other.ring:
            raise ValueError(f"mixed rings {self.ring} and {other.ring}")

    def __add__(self, other):
        self._check(other)
        return RingElement(self.ring, self.ring.add(self.value, other.value))

    def __sub__(self, other):
        self._check(other)
        return RingElement(self.ring, self.ring.sub(self.value, other.value))

    def __mul__(self, other):
        self._check(other)
        return RingElement(self.ring, self.ring.mul(self.value, other.value))

    def __neg__(self):
        return RingElement(self.ring, self.ring.neg(self.value))

    def __eq__(self, other):
        return (
            isinstance(other, RingElement)
            and self.ring == other.ring
            and self.value == other.value
        )

    def __hash__(self):
        return hash((self.ring, repr(self.value)))

    def is_unit(self) -> bool:
        return self.ring.is_unit(self.value)

    def in_radical(self) -> bool:
        return self.ring.in_radical(self.value)

    def invert(self) -> "RingElement":
        return RingElement(self.ring, self.ring.invert(self.value))

    def __repr__(self):
        return f"{self.value!r} in {self.ring}"


def arith(a: RingElement, b: RingElement, op: str) -> RingElement:
    """Binary arithmetic on elements sharing an owner; op in {add, sub, mul}."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def residue_map(a: RingElement) -> RingElement:
    """Project an element of a local ring into its residue field."""
    k = a.ring.residue_ring()
    return RingElement(k, a.ring.residue(a.value))


def _split_args(s: str) -> str:
    if not s.startswith("(") or not s.endswith(")"):
        raise ValueError(f"malformed ring spec fragment {s!r}")
    return s[1:-1]


def make_ring(spec: str) -> Ring:
    """Parse a ring specification string.

    Grammar: Z | Z/<n> | Zodd | dual(<spec>) | omega(<spec>) | residue(<spec>)
    residue(R) is defined only for local R and yields its residue field.
    """
    s = spec.strip()
    if s == "Z":
        return IntegerRing()
    if s == "Zodd":
        return OddLocalRing()
    if s.startswith("Z/"):
        try:
            n = int(s[2:])
        except ValueError:
            raise ValueError(f"malformed ring spec {spec!r}") from None
        return IntModRing(n)
    for head, builder in (
        ("dual", DualRing),
        ("omega", OmegaRing),
    ):
        if s.startswith(head):
            return builder(make_ring(_split_args(s[len(head) :])))
    if s.startswith("residue"):
        inner = make_ring(_split_args(s[len("residue") :]))
        if not inner.local:
            raise NotLocal(f"residue({inner}) undefined: ring is not local")
        return inner.residue_ring()
    raise ValueError(f"malformed ring spec {spec!r}")


# The canonical name used by the language-agnostic interface.
ring_make = make_ring


def radical_elements(ring: Ring) -> Iterator:
    """Enumerate the radical of small finite local rings (testing aid)."""
    if isinstance(ring, IntModRing):
        if not ring.local:
            raise NotLocal(f"{ring} is not local")
        yield from (x for x in range(ring.n) if x % ring._p == 0)
    elif isinstance(ring, DualRing):
        for a in radical_elements(ring.base):
            base_all = _all_elements(ring.base)
            for b in base_all:
                yield (a, b)
    else:
        raise NotImplementedError(f"radical enumeration for {ring}")


def _all_elements(ring: Ring) -> list:
    if isinstance(ring, IntModRing):
        return list(range(ring.n))
    if isinstance(ring, (DualRing, OmegaRing)):
        base = _all_elements(ring.base)
        return [(a, b) for a in base for b in base]
    raise NotImplementedError(f"element enumeration for {ring}")
