"""Ring handles: small descriptor objects giving each supported ring family
a uniform surface (coerce / divides / is_unit, and fraction-field hooks where
ideal certificates need them).

Handles for the structured families live next to their machinery
(`quadring.QuadOrder`, `pullback.PullbackRing`, ...); this module holds the
two plain ones and the registry used by the CLI ring grammar.
"""

from __future__ import annotations

from fractions import Fraction

from .core import Poly, RatFunc, poly_divrem


class IntegerRing:
    family = "int"
    zero = 0
    one = 1
    characteristic = 0

    def contains_rat(self, q) -> bool:
        return Fraction(q).denominator == 1

    def coerce(self, v):
        if isinstance(v, int):
            return v
        if isinstance(v, Fraction) and v.denominator == 1:
            return int(v)
        raise ValueError(f"cannot coerce {v!r} into Z")

    def divides(self, b, a):
        if b == 0:
            return 0 if a == 0 else None
        q, r = divmod(a, b)
        return q if r == 0 else None

    def is_unit(self, x) -> bool:
        return x in (1, -1)

    def field_coerce(self, v):
        return Fraction(v)

    def from_field(self, q):
        if isinstance(q, Fraction) and q.denominator == 1:
            return int(q)
        if isinstance(q, int):
            return q
        return None

    def to_json(self):
        return {"family": "int"}

    def __str__(self):
        return "Z"

    def __eq__(self, other):
        return isinstance(other, IntegerRing)

    def __hash__(self):
        return hash("int")


class RationalPolyRing:
    """Q[X]: dense polynomials with Fraction coefficients."""

    family = "qpoly"

    @property
    def zero(self):
        return Poly()

    @property
    def one(self):
        return Poly((Fraction(1),))

    def coerce(self, v):
        if isinstance(v, Poly):
            return v.map_coeffs(Fraction)
        if isinstance(v, (int, Fraction)):
            return Poly((Fraction(v),))
        raise ValueError(f"cannot coerce {v!r} into Q[X]")

    def divides(self, b, a):
        if b.is_zero():
            return Poly() if a.is_zero() else None
        q, r = poly_divrem(a, b)
        return q if r.is_zero() else None

    def is_unit(self, x) -> bool:
        return isinstance(x, Poly) and x.degree == 0

    def field_coerce(self, v):
        if isinstance(v, RatFunc):
            return v
        return RatFunc(self.coerce(v))

    def from_field(self, q):
        if isinstance(q, RatFunc):
            return q.num if q.is_poly() else None
        return None

    def to_json(self):
        return {"family": "qpoly"}

    def __str__(self):
        return "Q[X]"

    def __eq__(self, other):
        return isinstance(other, RationalPolyRing)

    def __hash__(self):
        return hash("qpoly")


class RationalField:
    """Q as a coefficient domain."""

    family = "rat"
    zero = Fraction(0)
    one = Fraction(1)
    characteristic = 0

    def coerce(self, v):
        return Fraction(v)

    def contains_rat(self, q: Fraction) -> bool:
        return True

    def divides(self, b, a):
        if b == 0:
            return Fraction(0) if a == 0 else None
        return Fraction(a) / Fraction(b)

    def is_unit(self, x) -> bool:
        return x != 0

    def to_json(self):
        return {"family": "rat"}

    def __str__(self):
        return "Q"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("rat")


def _strip_primes(n: int, primes) -> int:
    n = abs(n)
    for p in primes:
        while n % p == 0:
            n //= p
    return n


class LocalizedIntegers:
    """Z[1/p : p in primes] as a coefficient domain."""

    family = "zloc"
    characteristic = 0

    def __init__(self, primes):
        ps = sorted(set(int(p) for p in primes))
        if not ps or any(p < 2 for p in ps):
            raise ValueError("need at least one prime >= 2")
        self.primes = tuple(ps)
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def coerce(self, v):
        q = Fraction(v)
        if not self.contains_rat(q):
            raise ValueError(f"{q} lies outside {self}")
        return q

    def contains_rat(self, q: Fraction) -> bool:
        return _strip_primes(q.denominator, self.primes) == 1

    def divides(self, b, a):
        if b == 0:
            return Fraction(0) if a == 0 else None
        q = Fraction(a) / Fraction(b)
        return q if self.contains_rat(q) else None

    def is_unit(self, x) -> bool:
        if x == 0:
            return False
        x = Fraction(x)
        return (
            _strip_primes(x.numerator, self.primes) == 1
            and _strip_primes(x.denominator, self.primes) == 1
        )

    def to_json(self):
        return {"family": "zloc", "primes": [str(p) for p in self.primes]}

    def __str__(self):
        return "Z[" + ",".join(f"1/{p}" for p in self.primes) + "]"

    def __eq__(self, other):
        return isinstance(other, LocalizedIntegers) and other.primes == self.primes

    def __hash__(self):
        return hash(("zloc", self.primes))


ZZ = IntegerRing()
QQ = RationalField()
QQ_POLY = RationalPolyRing()
