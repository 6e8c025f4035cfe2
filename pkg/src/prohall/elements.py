"""Elements of the free pro-Hall group as finite terms with lazy truncation.

A term is evaluated into F(A, R, c) for whichever class is asked for; the
results are memoized per element.  Equality in the inverse limit is only
semi-decidable, so comparisons take an explicit class cap.
"""
from __future__ import annotations

import enum
import threading
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import ContextMismatch, UnboundGenerator
from .group import FreeHallGroup, NormalForm, free_hall_group
from .rings import INTEGERS, Equality, IntegerRing, PadicRing


# -- terms --------------------------------------------------------------------

class Term:
    __slots__ = ()

    def __mul__(self, other):
        if not isinstance(other, Term):
            return NotImplemented
        return Mul(self, other)

    def __pow__(self, exponent):
        return Pow(self, exponent)

    def __invert__(self):
        return Inv(self)

    def generators(self) -> set:
        out: set = set()
        stack = [self]
        while stack:
            t = stack.pop()
            if isinstance(t, Gen):
                out.add(t.name)
            else:
                stack.extend(t.children())
        return out

    def children(self) -> tuple:
        return ()

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children())


@dataclass(frozen=True)
class One(Term):
    def __str__(self):
        return "1"


@dataclass(frozen=True)
class Gen(Term):
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Mul(Term):
    left: Term
    right: Term

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class Inv(Term):
    arg: Term

    def children(self):
        return (self.arg,)


@dataclass(frozen=True)
class Pow(Term):
    base: Term
    exponent: object

    def children(self):
        return (self.base,)


@dataclass(frozen=True)
class Comm(Term):
    left: Term
    right: Term

    def children(self):
        return (self.left, self.right)


def product(terms: Sequence[Term]) -> Term:
    terms = list(terms)
    if not terms:
        return One()
    out = terms[0]
    for t in terms[1:]:
        out = Mul(out, t)
    return out


def map_generators(term: Term, fn) -> Term:
    """Rebuild ``term`` with each Gen replaced by fn(name)."""
    if isinstance(term, Gen):
        return fn(term.name)
    if isinstance(term, One):
        return term
    if isinstance(term, Mul):
        return Mul(map_generators(term.left, fn), map_generators(term.right, fn))
    if isinstance(term, Inv):
        return Inv(map_generators(term.arg, fn))
    if isinstance(term, Pow):
        return Pow(map_generators(term.base, fn), term.exponent)
    if isinstance(term, Comm):
        return Comm(map_generators(term.left, fn), map_generators(term.right, fn))
    raise TypeError(f"not a term: {term!r}")


def evaluate(term: Term, group: FreeHallGroup, index: Mapping[str, int]) -> NormalForm:
    """Image of ``term`` in ``group`` (the evaluation homomorphism)."""
    seen: dict = {}

    def ev(t: Term) -> NormalForm:
        hit = seen.get(id(t))
        if hit is not None:
            return hit[1]
        if isinstance(t, Gen):
            try:
                v = group.generator(index[t.name])
            except KeyError:
                raise UnboundGenerator(f"generator {t.name!r} is not in the alphabet") from None
        elif isinstance(t, One):
            v = group.identity()
        elif isinstance(t, Mul):
            v = group.multiply(ev(t.left), ev(t.right))
        elif isinstance(t, Inv):
            v = group.inverse(ev(t.arg))
        elif isinstance(t, Pow):
            v = group.power(ev(t.base), t.exponent)
        elif isinstance(t, Comm):
            v = group.commutator(ev(t.left), ev(t.right))
        else:
            raise TypeError(f"not a term: {t!r}")
        seen[id(t)] = (t, v)
        return v

    return ev(term)


# -- pro-Hall elements ---------------------------------------------------------

class ProHallElement:
    """A term over ``alphabet`` viewed in every truncation F(A, R, c)."""

    def __init__(self, term: Term, alphabet: Sequence[str], ring=INTEGERS):
        self.term = term
        self.alphabet = tuple(alphabet)
        self.ring = ring
        self._index = {name: i for i, name in enumerate(self.alphabet)}
        missing = term.generators() - set(self.alphabet)
        if missing:
            raise UnboundGenerator(f"unbound generator(s): {', '.join(sorted(missing))}")
        self._memo: dict = {}
        self._lock = threading.Lock()

    def group(self, c: int) -> FreeHallGroup:
        return free_hall_group(len(self.alphabet), c, self.ring, self.alphabet)

    def truncate(self, c: int) -> NormalForm:
        """The c-truncation: image of the element in F(A, R, c)."""
        if c < 1:
            raise ValueError("class must be at least 1")
        hit = self._memo.get(c)
        if hit is not None:
            return hit
        value = evaluate(self.term, self.group(c), self._index)
        with self._lock:
            return self._memo.setdefault(c, value)

    def memoized_classes(self) -> list:
        with self._lock:
            return sorted(self._memo)

    def coherence_check(self, c: int) -> bool:
        """psi_c(truncate(c + 1)) == truncate(c)."""
        upper = self.truncate(c + 1)
        return upper.group.class_project(upper, c) == self.truncate(c)

    def _same(self, other: "ProHallElement"):
        if other.alphabet != self.alphabet or other.ring != self.ring:
            raise ContextMismatch("pro-Hall elements over different alphabets or rings")

    def __mul__(self, other):
        if not isinstance(other, ProHallElement):
            return NotImplemented
        self._same(other)
        return ProHallElement(Mul(self.term, other.term), self.alphabet, self.ring)

    def __pow__(self, exponent):
        return ProHallElement(Pow(self.term, self.ring.coerce(exponent)), self.alphabet, self.ring)

    def inverse(self) -> "ProHallElement":
        return ProHallElement(Inv(self.term), self.alphabet, self.ring)

    def commutator(self, other: "ProHallElement") -> "ProHallElement":
        self._same(other)
        return ProHallElement(Comm(self.term, other.term), self.alphabet, self.ring)

    def __repr__(self):
        return f"ProHallElement({self.term!r})"


class Outcome(enum.Enum):
    EQUAL = "equal-up-to-cap"
    DISTINCT = "distinct-at-class"
    UNKNOWN = "unknown-at-class"


@dataclass(frozen=True)
class EqualityResult:
    outcome: Outcome
    cap: int
    witness_class: int | None = None

    def __str__(self):
        if self.outcome is Outcome.EQUAL:
            return self.outcome.value
        return f"{self.outcome.value}-{self.witness_class}"


def element_equal(e1: ProHallElement, e2: ProHallElement, cap: int) -> EqualityResult:
    """Compare truncations for c = 1..cap; report the first class that separates."""
    e1._same(e2)
    unknown = None
    for c in range(1, cap + 1):
        r = e1.truncate(c).compare(e2.truncate(c))
        if r is Equality.DISTINCT:
            return EqualityResult(Outcome.DISTINCT, cap, c)
        if r is Equality.UNKNOWN and unknown is None:
            unknown = c
    if unknown is not None:
        return EqualityResult(Outcome.UNKNOWN, cap, unknown)
    return EqualityResult(Outcome.EQUAL, cap)


# -- substitution ----------------------------------------------------------------

@dataclass(frozen=True)
class SubstitutionMap:
    """x_i -> h_i: a homomorphism from terms over ``source`` to terms over ``target``."""

    source: tuple
    target: tuple
    assignment: Mapping[str, Term] = field(hash=False)
    ring: object = INTEGERS

    def __post_init__(self):
        object.__setattr__(self, "source", tuple(self.source))
        object.__setattr__(self, "target", tuple(self.target))
        missing = set(self.source) - set(self.assignment)
        if missing:
            raise UnboundGenerator(f"no image for {', '.join(sorted(missing))}")
        allowed = set(self.target)
        for name, h in self.assignment.items():
            bad = h.generators() - allowed
            if bad:
                raise UnboundGenerator(f"image of {name} uses {', '.join(sorted(bad))} outside the target alphabet")

    @classmethod
    def identity(cls, alphabet: Sequence[str], ring=INTEGERS) -> "SubstitutionMap":
        return cls(tuple(alphabet), tuple(alphabet), {a: Gen(a) for a in alphabet}, ring)

    def image(self, name: str) -> ProHallElement:
        return ProHallElement(self.assignment[name], self.target, self.ring)


def substitute(theta: SubstitutionMap, w: Term) -> ProHallElement:
    """w(x_1, ..., x_m) -> w(h_1, ..., h_m)."""
    source = set(theta.source)

    def replace(name):
        if name not in source:
            raise UnboundGenerator(f"generator {name!r} is not in the source alphabet")
        return theta.assignment[name]

    return ProHallElement(map_generators(w, replace), theta.target, theta.ring)


@dataclass(frozen=True)
class SubgroupData:
    """Generating data h_1^c, ..., h_m^c of the truncated image subgroup."""

    c: int
    generators: tuple
    ring: object
    zp_exponents: bool
    note: str = ""


def _constant_exponents(nf: NormalForm) -> bool:
    return all(not hasattr(e, "nums") or e.is_constant() for e in nf.exponents)


def subgroup_truncation_gens(theta: SubstitutionMap, c: int) -> SubgroupData:
    if c < 1:
        raise ValueError("class must be at least 1")
    gens = tuple(theta.image(x).truncate(c) for x in theta.source)
    # integer and p-adic exponents are Z_p-exponents; polynomial ones only if constant
    zp = isinstance(theta.ring, (IntegerRing, PadicRing)) or all(_constant_exponents(g) for g in gens)
    note = ""
    if not zp:
        note = (f"image exponents lie in {theta.ring}, not in Z_p; these generate a subgroup of "
                f"F(A, {theta.ring}, {c}) rather than a Z_p-subgroup")
    return SubgroupData(c, gens, theta.ring, zp, note)
