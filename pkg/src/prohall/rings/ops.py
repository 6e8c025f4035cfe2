"""Ring-level operations dispatched over the three exponent-ring instances."""
from __future__ import annotations

from ..errors import ContextMismatch
from .base import INTEGERS, IntegerRing, is_rational, rational_binomial
from .binomial import BinomialPoly, PolyRing
from .padic import Padic, PadicRing

Ring = IntegerRing | PadicRing | PolyRing


def ring_of(x) -> Ring:
    if isinstance(x, (Padic, BinomialPoly)):
        return x.ring
    if isinstance(x, int) and not isinstance(x, bool):
        return INTEGERS
    raise TypeError(f"{x!r} is not a ring element")


def _common_ring(a, b) -> Ring:
    ra, rb = ring_of(a), ring_of(b)
    if ra == rb:
        return ra
    # plain integers embed in every ring
    if ra == INTEGERS:
        return rb
    if rb == INTEGERS:
        return ra
    raise ContextMismatch(f"{ra} vs {rb}")


def ring_arith(a, b, op: str):
    """add / sub / mul of two elements sharing a ring."""
    ring = _common_ring(a, b)
    if ring != INTEGERS:
        a, b = ring.coerce(a), ring.coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def binomial_coeff(lam, n: int):
    """C(lam, n) = lam (lam-1) ... (lam-n+1) / n! in the ring of ``lam``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if isinstance(lam, BinomialPoly):
        return lam.binomial(n)
    if isinstance(lam, Padic):
        return lam.ring.binomial(lam, n)
    if is_rational(lam):
        return rational_binomial(lam, n)
    raise TypeError(f"{lam!r} is not a ring element")


def poly_mul(f: BinomialPoly, g: BinomialPoly) -> BinomialPoly:
    if f.ring != g.ring:
        raise ContextMismatch(f"{f.ring} vs {g.ring}")
    return f * g


def poly_binomial(f: BinomialPoly, n: int) -> BinomialPoly:
    return f.binomial(n)


def is_exact_zero(x) -> bool:
    if is_rational(x):
        return x == 0
    return x.is_exact_zero()
