"""Coefficient fields: the rationals (gmpy2 ``mpq``) and prime fields (plain ints)."""

from __future__ import annotations

from fractions import Fraction

import gmpy2

DEFAULT_PRIME = 32003


def is_prime(p: int) -> bool:
    return p >= 2 and bool(gmpy2.is_prime(p))


class Field:
    """Exact coefficient field.

    ``characteristic == 0`` means the rationals, otherwise the prime field of
    that order. Elements over F_p are ints in ``range(p)``.
    """

    __slots__ = ("p",)

    def __init__(self, characteristic: int = 0):
        characteristic = int(characteristic)
        if characteristic != 0 and not is_prime(characteristic):
            raise ValueError(f"characteristic must be 0 or a prime, got {characteristic}")
        self.p = characteristic

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "QQ" if self.p == 0 else f"GF({self.p})"

    def __call__(self, value):
        """Coerce an int, Fraction, mpq or ``"a/b"`` string into the field."""
        p = self.p
        if isinstance(value, str):
            value = Fraction(value)
        if p == 0:
            if isinstance(value, Fraction):
                return gmpy2.mpq(value.numerator, value.denominator)
            return gmpy2.mpq(value)
        if isinstance(value, int):
            return value % p
        q = gmpy2.mpq(value)
        den = int(q.denominator) % p
        if den == 0:
            raise ZeroDivisionError(f"denominator divisible by {p}")
        return int(q.numerator) * pow(den, -1, p) % p

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(int(a), -1, self.p)
        return 1 / gmpy2.mpq(a)

    def neg(self, a):
        return (-a) % self.p if self.p else -a

    def random_element(self, rng, bound: int = 50, nonzero: bool = False):
        """Uniform over F_p, or an integer in [-bound, bound] over QQ."""
        while True:
            if self.p:
                c = rng.randrange(self.p)
            else:
                c = gmpy2.mpq(rng.randint(-bound, bound))
            if c or not nonzero:
                return c

    def to_python(self, a):
        """JSON-friendly value: int, or "num/den" string for non-integral rationals."""
        if self.p:
            return int(a)
        a = gmpy2.mpq(a)
        if a.denominator == 1:
            return int(a.numerator)
        return f"{a.numerator}/{a.denominator}"


QQ = Field(0)


def GF(p: int = DEFAULT_PRIME) -> Field:
    return Field(p)
