"""Exact coefficient fields: the rationals and prime fields F_p with p odd.

Field elements are plain Python values (``Fraction`` for Q, ``int`` in
``range(p)`` for F_p). Arithmetic on raw values uses the ordinary operators
followed by :meth:`Field.norm`; only inversion needs the field object.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import isqrt

DEFAULT_PRIME = 10007


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


class Field:
    """Common interface of :class:`Rationals` and :class:`PrimeField`."""

    characteristic: int

    def norm(self, x):
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def div(self, x, y):
        return self.norm(x * self.inv(y))

    def is_zero(self, x) -> bool:
        return self.norm(x) == 0

    @property
    def zero(self):
        return self.norm(0)

    @property
    def one(self):
        return self.norm(1)

    def random_element(self, rng: random.Random, nonzero: bool = False):
        raise NotImplementedError

    def format(self, x) -> str:
        raise NotImplementedError

    def parse_scalar(self, text: str):
        """Parse ``"3"`` or ``"-3/4"``."""
        text = text.strip()
        if "/" in text:
            num, den = text.split("/")
            return self.div(int(num), int(den))
        return self.norm(int(text))


class Rationals(Field):
    characteristic = 0

    def norm(self, x):
        return x if isinstance(x, Fraction) else Fraction(x)

    def inv(self, x):
        x = Fraction(x)
        if x == 0:
            raise ZeroDivisionError("division by zero in Q")
        return 1 / x

    def random_element(self, rng, nonzero=False, bound=9):
        while True:
            v = Fraction(rng.randint(-bound, bound))
            if v or not nonzero:
                return v

    def format(self, x) -> str:
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    def is_square(self, x) -> bool:
        x = Fraction(x)
        if x < 0:
            return False
        return isqrt(x.numerator) ** 2 == x.numerator and isqrt(x.denominator) ** 2 == x.denominator

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Q"


class PrimeField(Field):
    def __init__(self, p: int):
        if p == 2 or not is_prime(p):
            raise ValueError(f"F_p needs an odd prime, got {p}")
        self.p = p
        self.characteristic = p

    def norm(self, x):
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return x % self.p

    def inv(self, x):
        x = self.norm(x)
        if x == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return pow(x, -1, self.p)

    def random_element(self, rng, nonzero=False):
        return rng.randrange(1 if nonzero else 0, self.p)

    def format(self, x) -> str:
        x = self.norm(x)
        # symmetric representative keeps dumps short and readable
        return str(x - self.p if x > self.p // 2 else x)

    def is_square(self, x) -> bool:
        x = self.norm(x)
        return x == 0 or pow(x, (self.p - 1) // 2, self.p) == 1

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"Fp:{self.p}"


QQ = Rationals()


def GF(p: int = DEFAULT_PRIME) -> PrimeField:
    return PrimeField(p)


def parse_field(text: str) -> Field:
    """``"Q"`` or ``"Fp:<p>"``."""
    text = text.strip()
    if text == "Q":
        return QQ
    if text.startswith("Fp:"):
        return PrimeField(int(text[3:]))
    if text == "Fp":
        return PrimeField(DEFAULT_PRIME)
    raise ValueError(f"unknown field {text!r}; expected 'Q' or 'Fp:<p>'")
