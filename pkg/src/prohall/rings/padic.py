"""Truncated p-adic numbers with explicit precision bookkeeping.

A :class:`Padic` stores ``num / p**shift`` where ``num`` is only known modulo
``p**prec``.  Elements of Z_p have ``shift == 0``; a positive shift appears
only after dividing by multiples of p, which is allowed in tracked mode.
Absolute precision is ``prec - shift`` digits.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from sympy import isprime

from ..errors import ContextMismatch, InsufficientPrecision, IntegralityFailure, StrictModeViolation
from .base import Equality, as_mpq, factorial_valuation, is_rational, valuation

_PADIC_TEXT = re.compile(r"^\s*(-?\d+)\s*mod\s*(\d+)\s*\^\s*(\d+)\s*$")


@dataclass(frozen=True)
class PadicRing:
    """Z_p known to at most ``precision`` digits."""

    p: int
    precision: int = 20
    mode: str = "strict"

    kind = "zp"

    def __post_init__(self):
        if not isprime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.precision < 1:
            raise ValueError("precision must be at least 1")
        if self.mode not in ("strict", "tracked"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.mode == "strict" and self.p <= 3:
            raise ValueError("p = 2 and p = 3 are only allowed in tracked mode")

    @property
    def strict(self) -> bool:
        return self.mode == "strict"

    def __call__(self, x):
        return self.coerce(x)

    def element(self, residue: int, precision: int | None = None) -> "Padic":
        return Padic(self, residue, precision)

    def coerce(self, x) -> "Padic":
        if isinstance(x, Padic):
            if x.ring != self:
                raise ContextMismatch(f"{x} does not belong to {self}")
            return self.to_ring(x)
        if isinstance(x, bool):
            raise TypeError("bool is not a ring element")
        if isinstance(x, int):
            return Padic(self, x)
        if is_rational(x):
            return self.to_ring(x)
        if isinstance(x, str):
            return self.parse(x)
        raise TypeError(f"cannot read {x!r} as a {self.p}-adic integer")

    def zero(self) -> "Padic":
        return Padic(self, 0)

    def one(self) -> "Padic":
        return Padic(self, 1)

    def to_ring(self, x) -> "Padic":
        if isinstance(x, int):
            return Padic(self, x)
        if is_rational(x):
            q = as_mpq(x)
            x = Padic(self, int(q.numerator)) / int(q.denominator)
        if x.shift == 0:
            return x
        if x.prec == 0:
            raise InsufficientPrecision(f"cannot decide integrality of {x}")
        raise IntegralityFailure(f"{x} is not a {self.p}-adic integer")

    def binomial(self, x, n: int) -> "Padic":
        """C(x, n); costs v_p(n!) digits of precision."""
        x = self.coerce(x)
        if n < 0:
            raise ValueError("n must be non-negative")
        p = self.p
        v = factorial_valuation(n, p)
        if v and self.strict:
            raise StrictModeViolation(f"C(., {n}) loses {v} digit(s) of {p}-adic precision")
        k = x.prec
        if k - v <= 0:
            raise InsufficientPrecision(f"C({x}, {n}) has no digits left")
        modulus = p ** k
        prod = 1
        for i in range(n):
            prod = prod * (x.num - i) % modulus
        fact = 1
        for i in range(2, n + 1):
            fact *= i
        unit = fact // p ** v
        target = p ** (k - v)
        return Padic(self, (prod // p ** v) * pow(unit, -1, target), k - v)

    def compare(self, x, y) -> Equality:
        return self.coerce(x).compare(y)

    def random_element(self, rng, bound=None) -> "Padic":
        return Padic(self, rng.randrange(self.p ** self.precision))

    def random_unit(self, rng) -> int:
        while True:
            r = rng.randrange(1, self.p ** self.precision)
            if r % self.p:
                return r

    def parse(self, text: str) -> "Padic":
        m = _PADIC_TEXT.match(text)
        if m:
            r, p, k = (int(g) for g in m.groups())
            if p != self.p:
                raise ContextMismatch(f"{text!r} is not {self.p}-adic")
            return Padic(self, r, k)
        return Padic(self, int(text))

    def format(self, x) -> str:
        return str(self.coerce(x))

    def describe(self) -> dict:
        return {"ring": "zp", "p": self.p, "precision": self.precision, "mode": self.mode}

    def __str__(self):
        return f"Z_{self.p} (N={self.precision}, {self.mode})"


class Padic:
    __slots__ = ("ring", "num", "prec", "shift")

    def __init__(self, ring: PadicRing, num: int, prec: int | None = None, shift: int = 0):
        p = ring.p
        cap = ring.precision + shift
        prec = cap if prec is None else min(prec, cap)
        if prec <= 0:
            prec, num = 0, 0
        else:
            num %= p ** prec
        while shift > 0 and prec > 0 and num % p == 0:
            num //= p
            shift -= 1
            prec -= 1
        self.ring = ring
        self.num = num
        self.prec = prec
        self.shift = shift

    @property
    def p(self) -> int:
        return self.ring.p

    @property
    def precision(self) -> int:
        """Absolute precision: the value is known modulo p**precision."""
        return self.prec - self.shift

    @property
    def residue(self) -> int:
        if self.shift:
            raise IntegralityFailure(f"{self} is not integral")
        return self.num

    def is_integral(self) -> bool:
        return self.shift == 0

    def is_exact_zero(self) -> bool:
        return self.num == 0 and self.shift == 0 and self.prec >= self.ring.precision

    def with_precision(self, k: int) -> "Padic":
        """Forget digits beyond absolute precision ``k``."""
        return Padic(self.ring, self.num, min(self.prec, k + self.shift), self.shift)

    def _lift(self, other):
        if isinstance(other, Padic):
            if other.ring is not self.ring and other.ring != self.ring:
                raise ContextMismatch(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, bool):
            return None
        if isinstance(other, int):
            return Padic(self.ring, other)
        if is_rational(other):
            q = as_mpq(other)
            return Padic(self.ring, int(q.numerator)) / int(q.denominator)
        return None

    def __add__(self, other):
        b = self._lift(other)
        if b is None:
            return NotImplemented
        p = self.ring.p
        e = max(self.shift, b.shift)
        da, db = e - self.shift, e - b.shift
        num = self.num * p ** da + b.num * p ** db
        return Padic(self.ring, num, min(self.prec + da, b.prec + db), e)

    __radd__ = __add__

    def __neg__(self):
        return Padic(self.ring, -self.num, self.prec, self.shift)

    def __sub__(self, other):
        b = self._lift(other)
        if b is None:
            return NotImplemented
        return self + (-b)

    def __rsub__(self, other):
        b = self._lift(other)
        if b is None:
            return NotImplemented
        return b + (-self)

    def __mul__(self, other):
        b = self._lift(other)
        if b is None:
            return NotImplemented
        return Padic(self.ring, self.num * b.num, min(self.prec, b.prec), self.shift + b.shift)

    __rmul__ = __mul__

    def __truediv__(self, k):
        if isinstance(k, Padic):
            return NotImplemented
        if not isinstance(k, int):
            q = as_mpq(k)
            return self * int(q.denominator) / int(q.numerator)
        if k == 0:
            raise ZeroDivisionError("division by zero")
        p = self.ring.p
        v = valuation(k, p)
        if v and self.ring.strict:
            raise StrictModeViolation(f"division by {k} loses {v} digit(s) of {p}-adic precision")
        unit = k // p ** v
        inv = pow(unit, -1, p ** max(self.prec, 1))
        return Padic(self.ring, self.num * inv, self.prec, self.shift + v)

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        out = Padic(self.ring, 1)
        for _ in range(e):
            out = out * self
        return out

    def compare(self, other) -> Equality:
        b = self._lift(other)
        if b is None:
            raise TypeError(f"cannot compare {self!r} with {other!r}")
        d = self - b
        if d.prec == 0:
            return Equality.UNKNOWN
        return Equality.EQUAL if d.num == 0 and d.shift == 0 else Equality.DISTINCT

    def __eq__(self, other):
        if self._lift(other) is None:
            return NotImplemented
        return self.compare(other) is Equality.EQUAL

    __hash__ = None

    def __str__(self):
        p = self.ring.p
        if self.shift:
            return f"{self.num}/{p}^{self.shift} mod {p}^{self.precision}"
        return f"{self.num} mod {p}^{self.prec}"

    def __repr__(self):
        return f"Padic({self})"
