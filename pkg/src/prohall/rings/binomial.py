"""Integer-valued polynomials in the binomial basis C(t,0), C(t,1), ...

The binomial-basis span over Z (or Z_p) is used as the concrete model of the
binomial closure of Z[t] (or Z_p[t]).  A :class:`BinomialPoly` also represents
elements of the fraction field Q[t] (Q_p[t]) while group arithmetic runs through
Lie coordinates: over Z it keeps a common integer denominator, over Z_p a
common power of p.  ``is_integral()`` is the membership test for the closure.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from gmpy2 import mpq

from ..errors import ContextMismatch, InsufficientPrecision, IntegralityFailure, StrictModeViolation
from .base import INTEGERS, Equality, IntegerRing, as_mpq, factorial_valuation, int_binomial, is_rational, rational_binomial, valuation
from .padic import Padic, PadicRing


def finite_differences(values: Sequence) -> list:
    """Forward differences at 0: returns [Δ^0 f(0), Δ^1 f(0), ...].

    For values f(0), ..., f(d) these are the binomial-basis coefficients of
    the interpolating polynomial of degree <= d.
    """
    vals = list(values)
    if not vals:
        raise ValueError("need at least one value")
    out = []
    while vals:
        out.append(vals[0])
        vals = [b - a for a, b in zip(vals, vals[1:])]
    return out


def evaluate_grid(coeffs: Sequence, npoints: int, zero=0) -> list:
    """Values at 0, 1, ..., npoints-1 of sum coeffs[k] * C(x, k)."""
    d = list(coeffs)
    out = []
    for _ in range(npoints):
        out.append(d[0] if d else zero)
        for k in range(len(d) - 1):
            d[k] = d[k] + d[k + 1]
    return out


def _product(a: Sequence[int], b: Sequence[int]) -> list:
    if not a or not b:
        return []
    m = len(a) + len(b) - 1
    va = evaluate_grid(a, m)
    vb = evaluate_grid(b, m)
    return finite_differences([x * y for x, y in zip(va, vb)])


def _binomials_at(alpha: int, d: int) -> list:
    out = [1]
    for k in range(d):
        out.append(out[-1] * (alpha - k) // (k + 1))
    return out


@dataclass(frozen=True)
class PolyRing:
    """Binomial closure of base[t], modelled by the binomial-basis span."""

    base: IntegerRing | PadicRing = INTEGERS
    var: str = "t"

    @property
    def kind(self) -> str:
        return "zt" if isinstance(self.base, IntegerRing) else "zpt"

    @property
    def padic(self) -> bool:
        return isinstance(self.base, PadicRing)

    def __call__(self, x):
        return self.coerce(x)

    def coerce(self, x) -> "BinomialPoly":
        if isinstance(x, BinomialPoly):
            if x.ring != self:
                raise ContextMismatch(f"{x} does not belong to {self}")
            return self.to_ring(x)
        if isinstance(x, (list, tuple)):
            return self.from_coefficients(x)
        return self.to_ring(self.constant(x))

    def constant(self, x) -> "BinomialPoly":
        if isinstance(x, bool):
            raise TypeError("bool is not a ring element")
        if self.padic:
            if isinstance(x, Padic):
                if x.ring != self.base:
                    raise ContextMismatch(f"{x} is not in {self.base}")
                return BinomialPoly(self, (x.num,), prec=x.prec, shift=x.shift)
            if isinstance(x, int):
                return BinomialPoly(self, (x,))
            if is_rational(x):
                q = as_mpq(x)
                return BinomialPoly(self, (int(q.numerator),)) / int(q.denominator)
        else:
            if isinstance(x, int):
                return BinomialPoly(self, (x,))
            if is_rational(x):
                q = as_mpq(x)
                return BinomialPoly(self, (int(q.numerator),), den=int(q.denominator))
        raise TypeError(f"cannot read {x!r} as an element of {self}")

    def from_coefficients(self, coeffs: Sequence) -> "BinomialPoly":
        """Build sum coeffs[k] * C(t, k) from base-field values."""
        acc = self.zero()
        for k, c in enumerate(coeffs):
            if is_rational(c) and c == 0:
                continue
            acc = acc + self.constant(c) * self.basis(k)
        return acc

    def basis(self, k: int) -> "BinomialPoly":
        return BinomialPoly(self, (0,) * k + (1,))

    def variable(self) -> "BinomialPoly":
        return self.basis(1)

    def zero(self) -> "BinomialPoly":
        return BinomialPoly(self, ())

    def one(self) -> "BinomialPoly":
        return BinomialPoly(self, (1,))

    def to_ring(self, x) -> "BinomialPoly":
        if not isinstance(x, BinomialPoly):
            x = self.constant(x)
        if x.den != 1:
            raise IntegralityFailure(f"{x} is not integer-valued")
        if x.shift:
            if x.prec == 0:
                raise InsufficientPrecision(f"cannot decide integrality of {x}")
            raise IntegralityFailure(f"{x} is not integer-valued over Z_{self.base.p}")
        return x

    def binomial(self, x, n: int) -> "BinomialPoly":
        return self.coerce(x).binomial(n)

    def compare(self, x, y) -> Equality:
        return self.coerce(x).compare(y)

    def random_element(self, rng, bound: int = 3, degree: int = 2) -> "BinomialPoly":
        return BinomialPoly(self, tuple(rng.randint(-bound, bound) for _ in range(degree + 1)))

    def format(self, x) -> str:
        return str(self.coerce(x))

    def describe(self) -> dict:
        d = dict(self.base.describe())
        d["ring"] = self.kind
        d["variable"] = self.var
        return d

    def __str__(self):
        return f"{self.base}[{self.var}]^bin"


class BinomialPoly:
    """sum nums[k] * C(t, k), divided by ``den`` (over Z) or ``p**shift`` (over Z_p).

    Over Z_p the numerators are known modulo ``p**prec``; one precision is
    kept for the whole polynomial.
    """

    __slots__ = ("ring", "nums", "den", "prec", "shift")

    def __init__(self, ring: PolyRing, nums: Sequence[int], den: int = 1, prec: int | None = None, shift: int = 0):
        nums = list(nums)
        base = ring.base
        if isinstance(base, PadicRing):
            p = base.p
            cap = base.precision + shift
            prec = cap if prec is None else min(prec, cap)
            if prec <= 0:
                prec, nums = 0, []
            else:
                m = p ** prec
                nums = [n % m for n in nums]
                while shift > 0 and prec > 0 and all(n % p == 0 for n in nums):
                    nums = [n // p for n in nums]
                    shift -= 1
                    prec -= 1
            den = 1
        else:
            if den < 0:
                den, nums = -den, [-n for n in nums]
            g = math.gcd(den, *nums)
            if g > 1:
                den //= g
                nums = [n // g for n in nums]
            prec, shift = None, 0
        while nums and nums[-1] == 0:
            nums.pop()
        self.ring = ring
        self.nums = tuple(nums)
        self.den = den
        self.prec = prec
        self.shift = shift

    # -- structure ---------------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.nums) - 1

    @property
    def coefficients(self) -> tuple:
        """Binomial-basis coefficients as base-field values."""
        base = self.ring.base
        if isinstance(base, PadicRing):
            return tuple(Padic(base, n, self.prec, self.shift) for n in self.nums)
        if self.den == 1:
            return self.nums
        return tuple(mpq(n, self.den) for n in self.nums)

    @property
    def precision(self) -> int | None:
        return None if self.prec is None else self.prec - self.shift

    def is_integral(self) -> bool:
        return self.den == 1 and self.shift == 0

    def is_exact_zero(self) -> bool:
        if self.nums:
            return False
        return self.prec is None or (self.shift == 0 and self.prec >= self.ring.base.precision)

    def is_constant(self) -> bool:
        return len(self.nums) <= 1

    # -- arithmetic --------------------------------------------------------
    def _lift(self, other):
        if isinstance(other, BinomialPoly):
            if other.ring is not self.ring and other.ring != self.ring:
                raise ContextMismatch(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, bool):
            return None
        if isinstance(other, (int, Padic)) or is_rational(other):
            return self.ring.constant(other)
        return None

    def __add__(self, other):
        b = self._lift(other)
        if b is None:
            return NotImplemented
        a = self
        if a.prec is None:
            if a.den == b.den:
                den, fa, fb = a.den, 1, 1
            else:
                den = a.den * b.den // math.gcd(a.den, b.den)
                fa, fb = den // a.den, den // b.den
            return BinomialPoly(a.ring, _add(a.nums, b.nums, fa, fb), den)
        p = a.ring.base.p
        e = max(a.shift, b.shift)
        da, db = e - a.shift, e - b.shift
        nums = _add(a.nums, b.nums, p ** da, p ** db)
        return BinomialPoly(a.ring, nums, prec=min(a.prec + da, b.prec + db), shift=e)

    __radd__ = __add__

    def __neg__(self):
        return BinomialPoly(self.ring, [-n for n in self.nums], self.den, self.prec, self.shift)

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
        if isinstance(other, int) and not isinstance(other, bool) and self.prec is None:
            return BinomialPoly(self.ring, [n * other for n in self.nums], self.den)
        b = self._lift(other)
        if b is None:
            return NotImplemented
        a = self
        if len(b.nums) <= 1 or len(a.nums) <= 1:
            if len(a.nums) > len(b.nums):
                a, b = b, a
            k = a.nums[0] if a.nums else 0
            nums = [k * n for n in b.nums]
        else:
            nums = _product(a.nums, b.nums)
        if a.prec is None:
            return BinomialPoly(a.ring, nums, a.den * b.den)
        return BinomialPoly(a.ring, nums, prec=min(a.prec, b.prec), shift=a.shift + b.shift)

    __rmul__ = __mul__

    def __truediv__(self, k):
        if isinstance(k, (BinomialPoly, Padic)):
            return NotImplemented
        if not isinstance(k, int):
            q = as_mpq(k)
            return self * int(q.denominator) / int(q.numerator)
        if k == 0:
            raise ZeroDivisionError("division by zero")
        if self.prec is None:
            return BinomialPoly(self.ring, self.nums, self.den * k)
        base = self.ring.base
        p = base.p
        v = valuation(k, p)
        if v and base.strict:
            raise StrictModeViolation(f"division by {k} loses {v} digit(s) of {p}-adic precision")
        inv = pow(k // p ** v, -1, p ** max(self.prec, 1))
        return BinomialPoly(self.ring, [n * inv for n in self.nums], prec=self.prec, shift=self.shift + v)

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        out = self.ring.one()
        for _ in range(e):
            out = out * self
        return out

    # -- binomial structure ------------------------------------------------
    def binomial(self, n: int) -> "BinomialPoly":
        """C(f(t), n) in the binomial basis, via finite differences of its values."""
        if n < 0:
            raise ValueError("n must be non-negative")
        if n == 0:
            return self.ring.one()
        if n == 1:
            return self
        if tuple(self.nums) == (0, 1) and self.den == 1 and self.shift == 0:
            # C(t, n) is a basis element; the grid route would charge v_p(n!) digits
            return BinomialPoly(self.ring, (0,) * n + (1,), prec=self.prec)
        npoints = max(self.degree, 0) * n + 1
        grid = evaluate_grid(self.nums, npoints)
        base = self.ring.base
        if isinstance(base, PadicRing):
            values = [_padic_binomial(Padic(base, v, self.prec, self.shift), n) for v in grid]
        else:
            values = [rational_binomial(mpq(v, self.den) if self.den != 1 else v, n) for v in grid]
        return self.ring.from_coefficients(finite_differences(values))

    def evaluate(self, alpha):
        """Value at t = alpha (an integer or a base-ring element)."""
        base = self.ring.base
        if isinstance(base, PadicRing):
            if isinstance(alpha, Padic):
                if alpha.ring != base:
                    raise ContextMismatch(f"{alpha} is not in {base}")
                r = alpha.residue
                loss = factorial_valuation(max(self.degree, 0), base.p)
                if loss and base.strict:
                    raise StrictModeViolation(f"evaluating a degree-{self.degree} polynomial at a {base.p}-adic point loses {loss} digit(s)")
                prec = self.prec if self.degree <= 0 else min(self.prec, alpha.precision - loss)
                if prec <= 0 and self.degree > 0:
                    raise InsufficientPrecision(f"no digits left evaluating {self} at {alpha}")
            elif isinstance(alpha, int):
                r, prec = alpha, self.prec
            else:
                raise TypeError(f"cannot evaluate at {alpha!r}")
            value = sum(c * b for c, b in zip(self.nums, _binomials_at(r, self.degree)))
            return Padic(base, value, prec, self.shift)
        if not isinstance(alpha, int):
            q = as_mpq(alpha)
            if q.denominator != 1:
                raise TypeError(f"cannot evaluate at non-integer {alpha}")
            alpha = int(q.numerator)
        value = sum(c * b for c, b in zip(self.nums, _binomials_at(alpha, self.degree)))
        return value if self.den == 1 else mpq(value, self.den)

    def values(self, npoints: int) -> list:
        return [self.evaluate(x) for x in range(npoints)]

    # -- comparison --------------------------------------------------------
    def compare(self, other) -> Equality:
        b = self._lift(other)
        if b is None:
            raise TypeError(f"cannot compare {self!r} with {other!r}")
        d = self - b
        if d.prec == 0:
            return Equality.UNKNOWN
        return Equality.DISTINCT if d.nums else Equality.EQUAL

    def __eq__(self, other):
        if self._lift(other) is None:
            return NotImplemented
        return self.compare(other) is Equality.EQUAL

    def __hash__(self):
        if self.prec is not None:
            raise TypeError("p-adic polynomials are unhashable (equality is only known to a precision)")
        return hash((self.nums, self.den))

    def key(self) -> tuple:
        """Canonical tuple for deduplication at the stored precision."""
        return (self.nums, self.den, self.prec, self.shift)

    # -- text --------------------------------------------------------------
    def _terms(self) -> str:
        nums = self.nums
        if self.prec is not None:
            m = self.ring.base.p ** self.prec
            nums = [n - m if 2 * n > m else n for n in nums]
        parts = []
        for k, c in enumerate(nums):
            if c == 0:
                continue
            if k == 0:
                body = str(abs(c))
            else:
                mono = f"C({self.ring.var},{k})"
                body = mono if abs(c) == 1 else f"{abs(c)}*{mono}"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts) or "0"

    def __str__(self):
        s = self._terms()
        if self.den != 1:
            s = f"({s})/{self.den}"
        if self.prec is not None:
            p = self.ring.base.p
            if self.shift:
                s = f"({s})/{p}^{self.shift}"
            if self.precision < self.ring.base.precision:
                s = f"({s}) mod {p}^{self.precision}"
        return s

    def __repr__(self):
        return f"BinomialPoly({self})"


def _add(a, b, fa, fb):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return [x * fa + y * fb for x, y in zip(a, b)]


def _padic_binomial(x: Padic, n: int) -> Padic:
    if x.shift == 0:
        return x.ring.binomial(x, n)
    acc = x.ring.one()
    for k in range(n):
        acc = acc * (x - k)
    return acc / math.factorial(n)


def binomial_poly(coeffs: Sequence, base=INTEGERS) -> BinomialPoly:
    """Convenience constructor: sum coeffs[k] * C(t, k) over ``base``."""
    return PolyRing(base).from_coefficients(coeffs)
