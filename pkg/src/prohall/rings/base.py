"""Integers, rationals and the shared three-valued equality."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from gmpy2 import mpq

from ..errors import IntegralityFailure

MPQ = type(mpq(0))


class Equality(enum.Enum):
    EQUAL = "equal"          # equal at the available precision
    DISTINCT = "distinct"    # certified different
    UNKNOWN = "unknown"      # no digits left to decide


def is_rational(x) -> bool:
    return isinstance(x, (int, MPQ, Fraction))


def as_mpq(x):
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


def valuation(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def factorial_valuation(n: int, p: int) -> int:
    """Legendre: v_p(n!)."""
    v, q = 0, p
    while q <= n:
        v += n // q
        q *= p
    return v


def int_binomial(lam: int, n: int) -> int:
    if n < 0:
        raise ValueError("n must be non-negative")
    if lam >= 0:
        return math.comb(lam, n)
    # C(-m, n) = (-1)^n C(m + n - 1, n)
    return (-1) ** n * math.comb(n - lam - 1, n)


def rational_binomial(lam, n: int):
    if n < 0:
        raise ValueError("n must be non-negative")
    if isinstance(lam, int):
        return int_binomial(lam, n)
    lam = as_mpq(lam)
    if lam.denominator == 1:
        return int_binomial(int(lam), n)
    acc = mpq(1)
    for k in range(n):
        acc *= lam - k
    return acc / math.factorial(n)


@dataclass(frozen=True)
class IntegerRing:
    """The ring Z; its fraction field is handled with gmpy2 rationals."""

    kind = "z"

    def __call__(self, x):
        return self.coerce(x)

    def coerce(self, x) -> int:
        if isinstance(x, bool):
            raise TypeError("bool is not a ring element")
        if isinstance(x, int):
            return x
        if is_rational(x):
            return self.to_ring(x)
        raise TypeError(f"cannot read {x!r} as an integer")

    def zero(self) -> int:
        return 0

    def one(self) -> int:
        return 1

    def to_ring(self, x) -> int:
        if isinstance(x, int):
            return x
        q = as_mpq(x)
        if q.denominator != 1:
            raise IntegralityFailure(f"{q} is not an integer")
        return int(q.numerator)

    def binomial(self, lam: int, n: int) -> int:
        return int_binomial(lam, n)

    def compare(self, x, y) -> Equality:
        return Equality.EQUAL if x == y else Equality.DISTINCT

    def random_element(self, rng, bound: int = 20) -> int:
        return rng.randint(-bound, bound)

    def format(self, x) -> str:
        return str(x)

    def describe(self) -> dict:
        return {"ring": "z"}

    def __str__(self):
        return "Z"


INTEGERS = IntegerRing()
