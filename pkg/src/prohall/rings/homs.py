"""Ring homomorphisms out of the binomial closure and ring-level discrimination."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Sequence

from ..errors import BudgetExceeded, ContextMismatch, NotDistinct
from .base import Equality, is_rational
from .binomial import BinomialPoly, PolyRing
from .padic import Padic, PadicRing


@dataclass(frozen=True)
class Identity:
    def __call__(self, x):
        return x

    def __str__(self):
        return "id"


@dataclass(frozen=True)
class Evaluation:
    """t -> alpha, extended to the binomial closure by C(t,k) -> C(alpha,k)."""

    alpha: object

    def __call__(self, x):
        if isinstance(x, BinomialPoly):
            return x.evaluate(self.alpha)
        if isinstance(x, Padic) or is_rational(x):
            return x
        raise TypeError(f"cannot evaluate {x!r}")

    def __str__(self):
        return f"t -> {self.alpha}"


@dataclass(frozen=True)
class PrecisionReduce:
    precision: int

    def __call__(self, x):
        if isinstance(x, Padic):
            return x.with_precision(self.precision)
        if isinstance(x, BinomialPoly):
            if x.prec is None:
                raise ContextMismatch("precision reduction needs a p-adic base")
            return BinomialPoly(x.ring, x.nums, prec=min(x.prec, self.precision + x.shift), shift=x.shift)
        if isinstance(x, int):
            return x
        raise TypeError(f"cannot reduce {x!r}")

    def __str__(self):
        return f"mod p^{self.precision}"


@dataclass(frozen=True)
class Composite:
    first: object
    second: object

    def __call__(self, x):
        return self.second(self.first(x))

    def __str__(self):
        return f"({self.second}) o ({self.first})"


RingHom = Identity | Evaluation | PrecisionReduce | Composite


def apply_hom(h: RingHom, x):
    return h(x)


def compose(first: RingHom, second: RingHom) -> RingHom:
    if isinstance(first, Identity):
        return second
    if isinstance(second, Identity):
        return first
    return Composite(first, second)


def candidate_alphas(base, seed: int = 0, small: int = 16):
    """Nonzero evaluation points: 1..small, then -1..-small, then seeded random units."""
    yield from range(1, small + 1)
    yield from range(-1, -small - 1, -1)
    rng = random.Random(seed)
    while True:
        if isinstance(base, PadicRing):
            yield base.random_unit(rng)
        else:
            yield rng.choice((-1, 1)) * rng.randrange(small + 1, 10 ** 6)


def pairwise_distinct(values: Sequence) -> Equality:
    """DISTINCT if all pairs are certified distinct, EQUAL if some pair collides."""
    worst = Equality.DISTINCT
    for x, y in itertools.combinations(values, 2):
        c = _compare(x, y)
        if c is Equality.EQUAL:
            return Equality.EQUAL
        if c is Equality.UNKNOWN:
            worst = Equality.UNKNOWN
    return worst


def _compare(x, y) -> Equality:
    if isinstance(x, (Padic, BinomialPoly)):
        return x.compare(y)
    if isinstance(y, (Padic, BinomialPoly)):
        return y.compare(x)
    return Equality.EQUAL if x == y else Equality.DISTINCT


def ring_discriminate(elements: Sequence[BinomialPoly], budget: int = 200, seed: int = 0, small: int = 16,
                      nonzero: Sequence[BinomialPoly] = ()) -> Evaluation:
    """Find t -> alpha (alpha != 0) injective on ``elements``.

    Elements of ``nonzero`` must additionally have certified nonzero images.
    """
    elements = list(elements)
    nonzero = list(nonzero)
    if len(elements) > 1:
        status = pairwise_distinct(elements)
        if status is not Equality.DISTINCT:
            raise NotDistinct(f"inputs are not pairwise distinct ({status.value})")
    for d in nonzero:
        if _compare(d, 0) is not Equality.DISTINCT:
            raise NotDistinct(f"{d} is not certified nonzero")
    sample = elements[0] if elements else (nonzero[0] if nonzero else None)
    base = sample.ring.base if isinstance(sample, BinomialPoly) else None
    for alpha in itertools.islice(candidate_alphas(base, seed, small), budget):
        hom = Evaluation(alpha)
        if len(elements) > 1 and pairwise_distinct([hom(x) for x in elements]) is not Equality.DISTINCT:
            continue
        if all(_compare(hom(d), 0) is Equality.DISTINCT for d in nonzero):
            return hom
    raise BudgetExceeded(f"no separating evaluation among {budget} candidates")
