"""Exact scalar arithmetic over the rationals and over prime fields.

Coefficients are plain Python values: ``fractions.Fraction`` over Q and
``int`` in ``[0, p)`` over F_p.  A Field object supplies the arithmetic so
that polynomial code never needs to know which field it is working over.
No floating point is used anywhere.
"""

from __future__ import annotations

from fractions import Fraction

_TRIAL_DIVISION_BOUND = 1 << 20


class FieldMismatchError(ValueError):
    """Raised when two values from different fields are combined."""


def _is_prime(p: int) -> bool:
    # Complete trial division; callers guarantee p < 2**40 so the
    # 2**20 bound covers every possible factor.
    if p < 2:
        return False
    d = 2
    while d * d <= p and d <= _TRIAL_DIVISION_BOUND:
        if p % d == 0:
            return p == d
        d += 1
    return True


class Rationals:
    """The field Q with Fraction coefficients."""

    tag = "q"

    zero = Fraction(0)
    one = Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def from_fraction(self, q):
        return Fraction(q)

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
            raise ZeroDivisionError("inverse of 0")
        return 1 / Fraction(a)

    def div(self, a, b):
        return a / b

    def is_zero(self, a):
        return a == 0

    def coeff_str(self, a):
        return str(a)

    def __repr__(self):
        return "Q"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("q")


class PrimeField:
    """The field F_p; elements are ints reduced to [0, p)."""

    def __init__(self, p: int):
        if not isinstance(p, int) or p >= 1 << 40 or not _is_prime(p):
            raise ValueError(f"not a (supported) prime: {p}")
        self.p = p
        self.tag = f"fp:{p}"
        self.zero = 0
        self.one = 1 % p

    def from_int(self, n):
        return n % self.p

    def from_fraction(self, q):
        q = Fraction(q)
        return self.mul(q.numerator % self.p, self.inv(q.denominator % self.p))

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a):
        return a % self.p == 0

    def coeff_str(self, a):
        return str(a % self.p)

    def __repr__(self):
        return f"F_{self.p}"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(self.tag)


QQ = Rationals()


def field_from_tag(tag: str):
    """Parse a field tag: 'q' or 'fp:<p>'."""
    if tag == "q":
        return QQ
    if tag.startswith("fp:"):
        return PrimeField(int(tag[3:]))
    raise ValueError(f"unknown field tag: {tag}")


def check_same_field(f1, f2):
    if f1 != f2:
        raise FieldMismatchError(f"field mismatch: {f1!r} vs {f2!r}")
