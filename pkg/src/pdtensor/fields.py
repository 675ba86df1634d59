"""Exact coefficient fields: arbitrary-precision rationals and prime fields.

Every coefficient in the engine is either a ``fractions.Fraction`` (over QQ)
or a plain int in ``[0, p)`` (over GF(p)).  The field object supplies the
arithmetic so polynomial code stays field-generic and rounding-free.
"""

from __future__ import annotations

from fractions import Fraction


class FieldError(ValueError):
    pass


class Rationals:
    """The field of exact rationals.  Elements are ``Fraction`` values."""

    char = 0

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, n, d=1):
        return Fraction(n, d)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def div(self, a, b):
        return a / b

    def is_zero(self, a):
        return a == 0

    def format(self, a):
        return str(a)

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class PrimeField:
    """GF(p) for a prime p.  Elements are ints reduced into [0, p)."""

    def __init__(self, p: int):
        if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
            raise FieldError(f"{p} is not prime")
        self.p = p
        self.char = p

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, n, d=1):
        if d % self.p == 0:
            raise ZeroDivisionError(f"denominator {d} vanishes in GF({self.p})")
        return (n * pow(d, -1, self.p)) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return (a * self.inv(b)) % self.p

    def is_zero(self, a):
        return a % self.p == 0

    def format(self, a):
        return str(a % self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = Rationals()


def field_from_name(name: str):
    """Parse a field spec: ``QQ`` or ``GF <p>`` / ``GF(p)``."""
    text = name.strip()
    if text.upper() == "QQ":
        return QQ
    if text.upper().startswith("GF"):
        digits = text[2:].strip().strip("()").strip()
        if not digits.isdigit():
            raise FieldError(f"bad prime field spec: {name!r}")
        return PrimeField(int(digits))
    raise FieldError(f"unknown field: {name!r}")
