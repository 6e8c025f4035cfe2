"""Separating finitely many pro-Hall elements by an evaluation t -> alpha.

Pipeline: find the least class K at which the elements differ, harvest the
exponents of their K-truncations together with the pairwise differences at
matching Hall positions, choose alpha so that evaluation is injective on the
exponents and nonzero on the differences, push the truncations through the
induced exponentwise map and verify that the images are pairwise distinct.
"""
from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from typing import Sequence

from .elements import Comm, Gen, Mul, One, Pow, ProHallElement, Term
from .errors import BudgetExceeded, CapExceeded, PrecisionExhausted
from .group import NormalForm, free_hall_group
from .rings import (BinomialPoly, Equality, Evaluation, Identity, PadicRing, PolyRing, apply_hom,
                    pairwise_distinct, ring_discriminate)
from .rings.homs import RingHom


@dataclass
class DiscriminationProblem:
    elements: list
    p: int = 7
    precision: int = 12
    cap: int = 4
    budget: int = 200
    seed: int = 0
    mode: str = "strict"
    retries: int = 3

    def __post_init__(self):
        if len(self.elements) < 2:
            raise ValueError("a discrimination problem needs at least two elements")
        first = self.elements[0]
        for e in self.elements[1:]:
            first._same(e)

    @property
    def ring(self):
        return self.elements[0].ring


CERTIFICATE_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "discrimination certificate",
    "type": "object",
    "required": ["K", "N", "alpha", "p", "precision", "images", "verified", "seed"],
    "properties": {
        "K": {"type": "integer", "minimum": 1},
        "N": {"type": "array", "items": {"type": "string"}},
        "alpha": {"type": "string"},
        "p": {"type": "integer", "minimum": 2},
        "precision": {"type": "integer", "minimum": 1},
        "images": {
            "type": "array",
            "minItems": 2,
            "items": {
                "type": "object",
                "required": ["context", "exponents"],
                "properties": {
                    "context": {"type": "object"},
                    "exponents": {"type": "object", "additionalProperties": {"type": "string"}},
                },
            },
        },
        "verified": {"const": True},
        "seed": {"type": "integer"},
    },
    "additionalProperties": True,
}


@dataclass
class Certificate:
    K: int
    N: list
    hom: RingHom
    images: list
    p: int
    precision: int
    seed: int
    verified: bool = False
    values: list = field(default_factory=list)
    differences: list = field(default_factory=list)

    @property
    def alpha(self):
        return getattr(self.hom, "alpha", None)

    def to_dict(self) -> dict:
        return {
            "K": self.K,
            "N": [str(x) for x in self.N],
            "alpha": str(self.alpha),
            "p": self.p,
            "precision": self.precision,
            "images": [g.to_dict() for g in self.images],
            "verified": self.verified,
            "seed": self.seed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def truncations(M: Sequence[ProHallElement], K: int) -> list:
    return [e.truncate(K) for e in M]


def find_truncation_level(M: Sequence[ProHallElement], cap: int) -> int:
    """Least K <= cap at which all K-truncations are pairwise distinct."""
    if cap < 1:
        raise ValueError("cap must be at least 1")
    pending = set(itertools.combinations(range(len(M)), 2))
    unknown = set()
    for K in range(1, cap + 1):
        tr = truncations(M, K)
        for i, j in list(pending):
            r = tr[i].compare(tr[j])
            if r is Equality.DISTINCT:
                pending.discard((i, j))
                unknown.discard((i, j))
            elif r is Equality.UNKNOWN:
                unknown.add((i, j))
        if not pending:
            return K
    if unknown == pending:
        raise PrecisionExhausted(f"pairs {sorted(unknown)} undecided at the available precision")
    raise CapExceeded(f"pairs {sorted(pending - unknown)} agree up to class {cap}")


@dataclass
class Harvest:
    values: list
    differences: list

    @property
    def N(self) -> list:
        return _dedup(self.values + self.differences)


def _dedup(xs) -> list:
    """Drop values equal (at the available precision) to one already kept."""
    out = []
    for x in xs:
        if not any(_compare(x, y) is Equality.EQUAL for y in out):
            out.append(x)
    return out


def _compare(x, y) -> Equality:
    if isinstance(x, int) and isinstance(y, int):
        return Equality.EQUAL if x == y else Equality.DISTINCT
    return x.compare(y) if not isinstance(x, int) else y.compare(x)


def _nonzero(x) -> bool:
    # only certified-nonzero exponents are harvested; digitless ones carry no information
    return _compare(x, 0) is Equality.DISTINCT


def collect_exponents(M: Sequence[ProHallElement], K: int) -> Harvest:
    """Nonzero exponents of the K-truncations, and their nonzero pairwise differences."""
    tr = truncations(M, K)
    values = _dedup(e for g in tr for e in g.exponents if _nonzero(e))
    diffs = []
    for g, h in itertools.combinations(tr, 2):
        for a, b in zip(g.exponents, h.exponents):
            d = a - b
            if _nonzero(d):
                diffs.append(d)
    return Harvest(values, _dedup(diffs))


def induced_group_hom(hom: RingHom, g: NormalForm) -> NormalForm:
    """b_j^{e_j} -> b_j^{hom(e_j)} into the group over the target ring."""
    if isinstance(hom, Identity):
        return g
    src = g.group
    images = [apply_hom(hom, e) for e in g.exponents]
    target_ring = _target_ring(src.ring, hom)
    target = free_hall_group(src.n, src.c, target_ring, src.names)
    return target.element(images)


def _target_ring(ring, hom):
    if isinstance(hom, Evaluation) and isinstance(ring, PolyRing):
        return ring.base
    if hasattr(hom, "second"):
        return _target_ring(_target_ring(ring, hom.first), hom.second)
    return ring


def verify(images: Sequence[NormalForm]) -> Equality:
    return pairwise_distinct(list(images))


def separate(problem: DiscriminationProblem) -> Certificate:
    """Run the pipeline; retries at doubled precision when comparisons are undecided."""
    current = problem
    last = None
    for _ in range(problem.retries + 1):
        try:
            return _separate_once(current)
        except PrecisionExhausted as exc:
            last = exc
            current = _with_precision(current, 2 * current.precision)
    raise PrecisionExhausted(f"{last}; retried up to precision {current.precision // 2}")


def _separate_once(problem: DiscriminationProblem) -> Certificate:
    M = problem.elements
    K = find_truncation_level(M, problem.cap)
    harvest = collect_exponents(M, K)
    hom = ring_discriminate(harvest.values, budget=problem.budget, seed=problem.seed,
                            nonzero=harvest.differences) if harvest.values else Evaluation(1)
    images = [induced_group_hom(hom, e.truncate(K)) for e in M]
    status = verify(images)
    if status is Equality.UNKNOWN:
        raise PrecisionExhausted("images are equal at the available precision")
    if status is not Equality.DISTINCT:
        raise BudgetExceeded("evaluation did not separate the truncations")
    return Certificate(K, harvest.N, hom, images, problem.p, problem.precision, problem.seed,
                       verified=True, values=harvest.values, differences=harvest.differences)


def lift_term(term: Term, ring) -> Term:
    """Re-read the exponents of ``term`` in ``ring`` (integer lifts of the stored residues)."""
    if isinstance(term, Pow):
        return Pow(lift_term(term.base, ring), _lift_exponent(term.exponent, ring))
    if isinstance(term, (Gen, One)):
        return term
    if isinstance(term, Mul):
        return Mul(lift_term(term.left, ring), lift_term(term.right, ring))
    if isinstance(term, Comm):
        return Comm(lift_term(term.left, ring), lift_term(term.right, ring))
    return type(term)(lift_term(term.arg, ring))


def _lift_exponent(e, ring):
    if isinstance(e, BinomialPoly) and isinstance(ring, PolyRing):
        m = e.ring.base.p ** e.prec
        nums = [n - m if 2 * n > m else n for n in e.nums]
        return BinomialPoly(ring, nums, shift=e.shift)
    if isinstance(e, BinomialPoly):
        return e
    num = getattr(e, "num", e)
    return ring.coerce(num)


def _with_precision(problem: DiscriminationProblem, precision: int) -> DiscriminationProblem:
    ring = PolyRing(PadicRing(problem.p, precision, problem.mode), problem.ring.var)
    elements = [ProHallElement(lift_term(e.term, ring), e.alphabet, ring) for e in problem.elements]
    return DiscriminationProblem(elements, problem.p, precision, problem.cap, problem.budget,
                                 problem.seed, problem.mode, problem.retries)


# -- problem generation ----------------------------------------------------------

def problem_ring(p: int, precision: int, mode: str = "strict") -> PolyRing:
    return PolyRing(PadicRing(p, precision, mode))


def random_term(rng: random.Random, alphabet: Sequence[str], ring: PolyRing, degree: int = 3,
                length: int = 3, bound: int = 3) -> Term:
    """Random product of powers of generators and simple commutators."""
    gens = [Gen(a) for a in alphabet]
    factors = []
    for _ in range(rng.randint(1, length)):
        kind = rng.random()
        if kind < 0.6:
            base = rng.choice(gens)
        elif kind < 0.9:
            x, y = rng.sample(gens, 2) if len(gens) > 1 else (gens[0], gens[0])
            base = Comm(x, y)
        else:
            x, y = rng.sample(gens, 2) if len(gens) > 1 else (gens[0], gens[0])
            base = Comm(Comm(x, y), rng.choice(gens))
        d = rng.randint(0, degree)
        coeffs = [rng.randint(-bound, bound) for _ in range(d + 1)]
        if not any(coeffs):
            coeffs[0] = 1
        factors.append(Pow(base, BinomialPoly(ring, coeffs)))
    out = factors[0]
    for f in factors[1:]:
        out = Mul(out, f)
    return out


def _random_poly(rng: random.Random, ring: PolyRing, degree: int, bound: int = 3) -> BinomialPoly:
    coeffs = [rng.randint(-bound, bound) for _ in range(rng.randint(0, degree) + 1)]
    if not any(coeffs):
        coeffs[-1] = 1
    return BinomialPoly(ring, coeffs)


def _left_normed(rng: random.Random, gens: Sequence[Term], weight: int) -> Term:
    out = rng.choice(gens)
    for _ in range(weight - 1):
        out = Comm(out, rng.choice(gens))
    return out


def random_problem(rng: random.Random, p: int = 7, precision: int = 12, cap: int = 4, n: int = 2,
                   size: int = 4, degree: int = 3, seed: int | None = None) -> DiscriminationProblem:
    """Seeded random problem whose elements are pairwise distinct up to ``cap``.

    Elements share a random prefix and differ by tails of a random weight, so
    the separating class K is spread over 1..cap rather than concentrated at 1.
    """
    ring = problem_ring(p, precision)
    alphabet = [chr(ord("a") + i) for i in range(n)]
    gens = [Gen(a) for a in alphabet]
    while True:
        prefix = random_term(rng, alphabet, ring, degree)
        m = rng.randint(2, size)
        M = []
        for _ in range(m):
            term = prefix
            for _ in range(rng.randint(1, 2)):
                w = rng.randint(1, cap)
                term = Mul(term, Pow(_left_normed(rng, gens, w), _random_poly(rng, ring, degree)))
            M.append(ProHallElement(term, alphabet, ring))
        try:
            find_truncation_level(M, cap)
        except CapExceeded:
            continue
        return DiscriminationProblem(M, p, precision, cap, seed=rng.randrange(2 ** 31) if seed is None else seed)


# -- centralizer-extension demo ---------------------------------------------------

@dataclass
class CentralizerReport:
    alpha: object
    witness_class: int
    generators: list
    images: list
    powers: list
    nontrivial: list

    def to_dict(self) -> dict:
        return {
            "alpha": str(self.alpha),
            "witness_class": self.witness_class,
            "generators": [str(g) for g in self.generators],
            "images": [str(g) for g in self.images],
            "powers": [str(g) for g in self.powers],
            "nontrivial": self.nontrivial,
        }


def centralizer_demo(w: Term, ring: PolyRing, alpha, exponents: Sequence | None = None, cap: int = 4,
                     alphabet: Sequence[str] = ("a", "b")) -> CentralizerReport:
    """Images of a, b and w^e (e in ``exponents``, default [t]) under t -> alpha."""
    alphabet = tuple(alphabet)
    we = ProHallElement(w, alphabet, ring)
    witness = None
    for c in range(1, cap + 1):
        if not we.truncate(c).is_identity():
            witness = c
            break
    if witness is None:
        raise CapExceeded(f"w is trivial up to class {cap}")
    exponents = list(exponents) if exponents is not None else [ring.variable()]
    gens = [ProHallElement(Gen(a), alphabet, ring) for a in alphabet]
    gens += [ProHallElement(Pow(w, ring.coerce(e)), alphabet, ring) for e in exponents]
    hom = Evaluation(alpha)
    truncs = [g.truncate(witness) for g in gens]
    images = [induced_group_hom(hom, g) for g in truncs]
    powers = images[len(alphabet):]
    nontrivial = [not g.is_identity() for g in powers]
    return CentralizerReport(alpha, witness, truncs, images, powers, nontrivial)


__all__ = [
    "DiscriminationProblem", "Certificate", "CERTIFICATE_SCHEMA", "Harvest", "find_truncation_level",
    "collect_exponents", "induced_group_hom", "separate", "verify", "random_problem", "random_term",
    "problem_ring", "centralizer_demo", "CentralizerReport", "lift_term", "truncations",
]
