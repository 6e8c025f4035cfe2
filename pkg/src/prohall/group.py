"""Free nilpotent Hall R-groups F(A, R, c) in Hall normal form.

Elements are ordered products b_0^{e_0} b_1^{e_1} ... over the group basic
commutators, where b_j = [b_u, b_v] = b_u^-1 b_v^-1 b_u b_v for a basic pair
(u, v).  Arithmetic goes through Lie coordinates: log of a normal form is a BCH
fold of e_j * L_j with L_j = log(b_j), and the way back peels exponents off in
Hall order.  Exponents live in one of the exponent rings (Z, Z_p, or the
binomial closure of Z[t] / Z_p[t]); conversion back into the ring is an
integrality check, so any denominator that fails to cancel is reported.
"""
from __future__ import annotations

import json
import random
import threading
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .errors import ContextMismatch, StrictModeViolation
from .lie.algebra import LieAlgebra, is_zero, lie_algebra
from .lie.hall import HallBasis
from .rings import INTEGERS, Equality, IntegerRing, PadicRing, PolyRing, binomial_coeff

Ring = IntegerRing | PadicRing | PolyRing


def padic_base(ring) -> PadicRing | None:
    if isinstance(ring, PadicRing):
        return ring
    if isinstance(ring, PolyRing) and isinstance(ring.base, PadicRing):
        return ring.base
    return None


def _compare(x, y) -> Equality:
    if isinstance(x, int) and isinstance(y, int):
        return Equality.EQUAL if x == y else Equality.DISTINCT
    if isinstance(x, int):
        x, y = y, x
    return x.compare(y)


class FreeHallGroup:
    """F(A, R, c) on n generators with exponents in ``ring``."""

    def __init__(self, n: int, c: int, ring: Ring = INTEGERS, algebra: LieAlgebra | None = None,
                 names: Sequence[str] | None = None):
        if c < 1:
            raise ValueError("class must be at least 1")
        base = padic_base(ring)
        if base is not None and base.strict and base.p <= c:
            raise StrictModeViolation(f"strict mode needs p > c (p={base.p}, c={c})")
        self.n = n
        self.c = c
        self.ring = ring
        self.algebra = algebra or lie_algebra(n, c)
        self.basis: HallBasis = self.algebra.basis
        self.dim = self.algebra.dim
        self.weights = self.basis.weights
        self.names = list(names) if names else list(self.basis.names)
        self.logs = self._basis_logs()
        self._identity = None

    def _basis_logs(self) -> list:
        alg = self.algebra
        logs = []
        for e in self.basis.elements:
            if e.is_generator:
                logs.append(alg.basis_vector(e.index))
            else:
                logs.append(_group_commutator_log(alg, logs[e.left], logs[e.right]))
        return logs

    # -- context -----------------------------------------------------------
    def describe(self) -> dict:
        d = {"generators": self.names, "class": self.c}
        d.update(self.ring.describe())
        return d

    def same(self, other: "FreeHallGroup") -> bool:
        return other is self or (other.n == self.n and other.c == self.c and other.ring == self.ring
                                 and other.algebra is self.algebra and other.names == self.names)

    def _check(self, *elems):
        for g in elems:
            if not self.same(g.group):
                raise ContextMismatch("normal forms from different groups")

    def __repr__(self):
        return f"FreeHallGroup(n={self.n}, c={self.c}, ring={self.ring})"

    # -- constructors ------------------------------------------------------
    def element(self, exponents) -> "NormalForm":
        if isinstance(exponents, dict):
            vec = [0] * self.dim
            for i, e in exponents.items():
                vec[int(i)] = e
            exponents = vec
        exponents = list(exponents)
        if len(exponents) != self.dim:
            raise ValueError(f"expected {self.dim} exponents, got {len(exponents)}")
        return NormalForm(self, tuple(self._coerce(e) for e in exponents))

    def _coerce(self, e):
        if isinstance(e, int) and e == 0 and not isinstance(e, bool):
            return 0 if self.ring is INTEGERS or isinstance(self.ring, IntegerRing) else self.ring.zero()
        return self.ring.coerce(e)

    def identity(self) -> "NormalForm":
        if self._identity is None:
            self._identity = self.element([0] * self.dim)
        return self._identity

    def basis_element(self, j: int, exponent=1) -> "NormalForm":
        vec = [0] * self.dim
        vec[j] = exponent
        return self.element(vec)

    def generator(self, i: int, exponent=1) -> "NormalForm":
        if not 0 <= i < self.n:
            raise IndexError(f"generator index {i} out of range")
        return self.basis_element(i, exponent)

    def gens(self) -> list:
        return [self.generator(i) for i in range(self.n)]

    def random_element(self, rng: random.Random, bound: int = 20, degree: int = 2) -> "NormalForm":
        ring = self.ring
        if isinstance(ring, IntegerRing):
            exps = [rng.randint(-bound, bound) for _ in range(self.dim)]
        elif isinstance(ring, PadicRing):
            exps = [ring.random_element(rng) for _ in range(self.dim)]
        else:
            exps = [ring.random_element(rng, bound=min(bound, 3), degree=degree) for _ in range(self.dim)]
        return self.element(exps)

    def random_exponent(self, rng: random.Random, bound: int = 20, degree: int = 2):
        ring = self.ring
        if isinstance(ring, IntegerRing):
            return rng.randint(-bound, bound)
        if isinstance(ring, PadicRing):
            return ring.random_element(rng)
        return ring.random_element(rng, bound=min(bound, 3), degree=degree)

    # -- coordinates -------------------------------------------------------
    def grp_to_lie(self, exponents) -> list:
        """log(b_0^{e_0} ... b_d^{e_d}) as a Hall-basis coefficient vector."""
        alg = self.algebra
        x = None
        for j, e in enumerate(exponents):
            if is_zero(e):
                continue
            term = alg.scale(e, self.logs[j])
            x = term if x is None else alg.bch(x, term)
        return x if x is not None else alg.zero()

    def lie_to_grp(self, x) -> tuple:
        """Second-kind exponents of exp(x), peeled off from the lowest Hall index."""
        alg = self.algebra
        x = list(x)
        out = []
        for j in range(self.dim):
            a = x[j]
            if is_zero(a):
                out.append(self._coerce(0))
                continue
            e = self.ring.to_ring(a)
            out.append(e)
            if j + 1 < self.dim:
                x = alg.bch(alg.scale(-e, self.logs[j]), x)
        return tuple(out)

    def from_lie(self, x) -> "NormalForm":
        nf = NormalForm(self, self.lie_to_grp(x))
        nf._set_log(list(x))
        return nf

    # -- operations --------------------------------------------------------
    def multiply(self, g: "NormalForm", h: "NormalForm") -> "NormalForm":
        self._check(g, h)
        if g.is_identity():
            return h
        if h.is_identity():
            return g
        return self.from_lie(self.algebra.bch(g.log(), h.log()))

    def product(self, elems: Sequence["NormalForm"]) -> "NormalForm":
        out = self.identity()
        for g in elems:
            out = self.multiply(out, g)
        return out

    def inverse(self, g: "NormalForm") -> "NormalForm":
        self._check(g)
        return self.from_lie(self.algebra.neg(g.log()))

    def power(self, g: "NormalForm", lam) -> "NormalForm":
        """g^lam = exp(lam * log g) for lam in the exponent ring."""
        self._check(g)
        lam = self._coerce(lam)
        if is_zero(lam):
            return self.identity()
        return self.from_lie(self.algebra.scale(lam, g.log()))

    def int_power(self, g: "NormalForm", k: int) -> "NormalForm":
        """g^k by repeated multiplication (an independent route for integer k)."""
        base = g if k >= 0 else self.inverse(g)
        out = self.identity()
        for _ in range(abs(k)):
            out = self.multiply(out, base)
        return out

    def commutator(self, g: "NormalForm", h: "NormalForm") -> "NormalForm":
        """[g, h] = g^-1 h^-1 g h."""
        self._check(g, h)
        return self.from_lie(_group_commutator_log(self.algebra, g.log(), h.log()))

    def conjugate(self, g: "NormalForm", y: "NormalForm") -> "NormalForm":
        """g^y = y^-1 g y."""
        self._check(g, y)
        alg = self.algebra
        ly = y.log()
        return self.from_lie(alg.bch(alg.bch(alg.neg(ly), g.log()), ly))

    def class_project(self, g: "NormalForm", c: int) -> "NormalForm":
        """Image under F(A,R,self.c) -> F(A,R,c): drop exponents of weight > c."""
        self._check(g)
        if c > self.c:
            raise ValueError(f"cannot project class {self.c} to class {c}")
        if c == self.c:
            return g
        target = free_hall_group(self.n, c, self.ring, self.names)
        return NormalForm(target, g.exponents[:target.dim])

    # -- Petresco words ----------------------------------------------------
    def petresco_words(self, xs: Sequence["NormalForm"], upto: int | None = None) -> list:
        """[tau_1, ..., tau_upto] for the tuple xs (upto defaults to the class)."""
        self._check(*xs)
        upto = self.c if upto is None else upto
        taus: list = []
        for i in range(1, upto + 1):
            lhs = self.product([self.int_power(x, i) for x in xs])
            prev = self.product([self.int_power(t, binomial_coeff(i, k + 1)) for k, t in enumerate(taus)])
            taus.append(self.multiply(self.inverse(prev), lhs))
        return taus

    def petresco(self, i: int, xs: Sequence["NormalForm"]) -> "NormalForm":
        if i < 1:
            raise ValueError("Petresco words are indexed from 1")
        return self.petresco_words(xs, i)[-1]

    def hall_petresco_sides(self, xs: Sequence["NormalForm"], lam, taus=None) -> tuple:
        """(x_1^lam ... x_n^lam, tau_1^lam tau_2^C(lam,2) ... tau_c^C(lam,c))."""
        lam = self._coerce(lam)
        taus = taus if taus is not None else self.petresco_words(xs)
        lhs = self.product([self.power(x, lam) for x in xs])
        rhs = self.product([self.power(t, binomial_coeff(lam, i + 1)) for i, t in enumerate(taus)])
        return lhs, rhs


def _group_commutator_log(alg: LieAlgebra, x, y) -> list:
    """log(exp(x)^-1 exp(y)^-1 exp(x) exp(y))."""
    return alg.bch(alg.bch(alg.neg(x), alg.neg(y)), alg.bch(x, y))


@dataclass(frozen=True, eq=False)
class NormalForm:
    """b_0^{e_0} b_1^{e_1} ... in a fixed FreeHallGroup."""

    group: FreeHallGroup
    exponents: tuple
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def _set_log(self, x):
        self._cache.setdefault("log", x)

    def log(self) -> list:
        x = self._cache.get("log")
        if x is None:
            x = self.group.grp_to_lie(self.exponents)
            self._cache["log"] = x
        return x

    def is_identity(self) -> bool:
        return all(is_zero(e) for e in self.exponents)

    def __mul__(self, other):
        if not isinstance(other, NormalForm):
            return NotImplemented
        return self.group.multiply(self, other)

    def __pow__(self, lam):
        return self.group.power(self, lam)

    def inverse(self) -> "NormalForm":
        return self.group.inverse(self)

    def compare(self, other: "NormalForm") -> Equality:
        if not self.group.same(other.group):
            raise ContextMismatch("normal forms from different groups")
        worst = Equality.EQUAL
        for a, b in zip(self.exponents, other.exponents):
            r = _compare(a, b)
            if r is Equality.DISTINCT:
                return r
            if r is Equality.UNKNOWN:
                worst = r
        return worst

    def __eq__(self, other):
        if not isinstance(other, NormalForm):
            return NotImplemented
        return self.compare(other) is Equality.EQUAL

    __hash__ = None

    def first_difference(self, other: "NormalForm") -> int | None:
        """Weight of the first basis position where the exponents certifiably differ."""
        for j, (a, b) in enumerate(zip(self.exponents, other.exponents)):
            if _compare(a, b) is Equality.DISTINCT:
                return self.group.weights[j]
        return None

    def weight_support(self) -> set:
        return {self.group.weights[j] for j, e in enumerate(self.exponents) if not _is_zero_value(e)}

    def format(self) -> str:
        g = self.group
        parts = []
        for j, e in enumerate(self.exponents):
            if _is_zero_value(e):
                continue
            label = g.basis.label(j) if g.names == g.basis.names else _relabel(g, j)
            parts.append(f"{label}^{{{g.ring.format(e)}}}")
        return " ".join(parts) or "1"

    __str__ = format

    def __repr__(self):
        return f"NormalForm({self.format()})"

    def to_dict(self) -> dict:
        g = self.group
        return {
            "context": g.describe(),
            "exponents": {str(j): g.ring.format(e) for j, e in enumerate(self.exponents) if not _is_zero_value(e)},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _is_zero_value(e) -> bool:
    if isinstance(e, int):
        return e == 0
    if hasattr(e, "nums"):
        return not e.nums
    return e.num == 0 and e.shift == 0


def _relabel(g: FreeHallGroup, j: int) -> str:
    e = g.basis[j]
    if e.is_generator:
        return g.names[e.generator]
    return f"[{_relabel(g, e.left)},{_relabel(g, e.right)}]"


_GROUP_LOCK = threading.Lock()


@lru_cache(maxsize=None)
def _cached_group(n: int, c: int, ring, names) -> FreeHallGroup:
    return FreeHallGroup(n, c, ring, names=names)


def free_hall_group(n: int, c: int, ring: Ring = INTEGERS, names: Sequence[str] | None = None) -> FreeHallGroup:
    """Shared FreeHallGroup per (n, c, ring, generator names)."""
    with _GROUP_LOCK:
        return _cached_group(n, c, ring, tuple(names) if names else None)


# -- axiom checks -------------------------------------------------------------

@dataclass
class AxiomFailure:
    family: str
    law: str
    witness: dict


@dataclass
class AxiomReport:
    group: str
    trials: int
    seed: int
    counts: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, family: str, law: str, ok: bool, **witness):
        passed, total = self.counts.get(family, (0, 0))
        self.counts[family] = (passed + ok, total + 1)
        if not ok:
            self.failures.append(AxiomFailure(family, law, {k: str(v) for k, v in witness.items()}))

    def to_dict(self) -> dict:
        return {
            "group": self.group,
            "trials": self.trials,
            "seed": self.seed,
            "passed": self.passed,
            "counts": {k: {"passed": p, "total": t} for k, (p, t) in self.counts.items()},
            "failures": [{"family": f.family, "law": f.law, "witness": f.witness} for f in self.failures[:20]],
        }


def axiom_suite(group: FreeHallGroup, trials: int = 100, seed: int = 0, bound: int = 20,
                tuple_size: int = 2) -> AxiomReport:
    """Check the Hall R-group axioms on seeded random elements and exponents.

    exponent:    g^0 = 1, g^1 = g, g^(a+b) = g^a g^b, (g^a)^b = g^(ab)
    conjugation: y^-1 g^l y = (y^-1 g y)^l
    petresco:    x_1^l ... x_k^l = tau_1^l tau_2^C(l,2) ... tau_c^C(l,c)
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    rng = random.Random(seed)
    report = AxiomReport(repr(group), trials, seed)
    G = group
    one = G.identity()

    def check(family, law, thunk, **witness):
        try:
            ok = thunk()
        except ArithmeticError as exc:  # integrality or precision failures count as violations
            ok = False
            witness["error"] = f"{type(exc).__name__}: {exc}"
        report.record(family, law, ok, **witness)

    for _ in range(trials):
        g = G.random_element(rng, bound)
        a = G.random_exponent(rng, bound)
        b = G.random_exponent(rng, bound)
        check("exponent", "g^0 = 1", lambda: G.power(g, 0) == one, g=g)
        check("exponent", "g^1 = g", lambda: G.power(g, 1) == g, g=g)
        check("exponent", "g^(a+b) = g^a g^b",
              lambda: G.power(g, a + b) == G.power(g, a) * G.power(g, b), g=g, a=a, b=b)
        check("exponent", "(g^a)^b = g^(ab)",
              lambda: G.power(G.power(g, a), b) == G.power(g, a * b), g=g, a=a, b=b)
    for _ in range(trials):
        g = G.random_element(rng, bound)
        y = G.random_element(rng, bound)
        lam = G.random_exponent(rng, bound)
        check("conjugation", "y^-1 g^l y = (y^-1 g y)^l",
              lambda: G.conjugate(G.power(g, lam), y) == G.power(G.conjugate(g, y), lam), g=g, y=y, l=lam)
    for _ in range(trials):
        xs = [G.random_element(rng, bound) for _ in range(tuple_size)]
        lam = G.random_exponent(rng, bound)

        def petresco_holds():
            lhs, rhs = G.hall_petresco_sides(xs, lam)
            return lhs == rhs

        check("petresco", "x_1^l ... x_k^l = prod tau_i^C(l,i)", petresco_holds, xs=xs, l=lam)
    return report


def mutated_bch(algebra: LieAlgebra, weight: int = 3) -> LieAlgebra:
    """Copy of ``algebra`` whose BCH table has the first entry of ``weight`` sign-flipped."""
    terms = list(algebra.bch_terms())
    two_weights = lie_algebra(2, algebra.c).weights
    for i, (h, coef) in enumerate(terms):
        if two_weights[h] == weight:
            terms[i] = (h, -coef)
            break
    else:
        raise ValueError(f"no BCH term of weight {weight}")
    return algebra.with_bch_terms(terms)


__all__ = [
    "FreeHallGroup", "NormalForm", "free_hall_group", "axiom_suite", "AxiomReport", "AxiomFailure",
    "mutated_bch", "padic_base",
]
