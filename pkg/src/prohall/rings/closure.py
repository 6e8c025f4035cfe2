"""The recursive tower R_0 < R_1 < ... generating the binomial closure."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from ..errors import BudgetExceeded
from .binomial import BinomialPoly


@dataclass(frozen=True)
class Derivation:
    op: str                  # "gen", "binom", "add", "mul"
    args: tuple = ()
    label: str = ""

    def __str__(self):
        if self.op == "gen":
            return self.label
        if self.op == "binom":
            inner, n = self.args
            return f"C({inner},{n})"
        sym = " + " if self.op == "add" else "*"
        return "(" + sym.join(str(a) for a in self.args) + ")"


@dataclass
class ClosureElement:
    value: BinomialPoly
    derivation: Derivation

    def __str__(self):
        return f"{self.derivation} = {self.value}"


@dataclass
class ClosureTower:
    generators: list
    depth: int
    n_max: int
    levels: list = field(default_factory=list)   # levels[i] = new elements of R_i

    def level(self, i: int) -> list:
        """All elements of R_i (cumulative)."""
        return [e for lvl in self.levels[: i + 1] for e in lvl]

    def __iter__(self):
        for lvl in self.levels:
            yield from lvl

    def __len__(self):
        return sum(len(lvl) for lvl in self.levels)


def closure_generate(gens: Sequence[BinomialPoly], depth: int, n_max: int, *,
                     combine_budget: int = 64, max_elements: int = 5000,
                     names: Sequence[str] | None = None) -> ClosureTower:
    """Levels R_0..R_depth.

    R_0 holds the generators and one round of sums and products of them.
    R_{i+1} adjoins C(alpha, n), 2 <= n <= n_max, for the elements alpha new at
    level i, then up to ``combine_budget`` sums and products involving the new
    elements.  Every element carries its derivation.
    """
    if not gens:
        raise ValueError("need at least one generator")
    names = list(names) if names else [_label(g) for g in gens]
    seen: set = set()
    tower = ClosureTower(list(gens), depth, n_max)

    def admit(bucket, value, deriv):
        k = value.key()
        if k in seen:
            return
        seen.add(k)
        bucket.append(ClosureElement(value, deriv))
        if len(seen) > max_elements:
            raise BudgetExceeded(f"closure exceeded {max_elements} elements")

    level0: list = []
    for g, name in zip(gens, names):
        admit(level0, g, Derivation("gen", label=name))
    _combine(level0, [], level0, admit, combine_budget)
    tower.levels.append(level0)

    for _ in range(depth):
        fresh = tower.levels[-1]
        old = [e for lvl in tower.levels for e in lvl]
        new: list = []
        for e in fresh:
            for n in range(2, n_max + 1):
                admit(new, e.value.binomial(n), Derivation("binom", (e.derivation, n)))
        _combine(new, old, new, admit, combine_budget)
        tower.levels.append(new)
    return tower


def _label(g: BinomialPoly) -> str:
    if g.nums == (0, 1) and g.is_integral():
        return g.ring.var
    return str(g)


def _combine(new, old, bucket, admit, budget):
    start = len(bucket)
    pool = list(new)
    others = list(old) + pool
    for x in pool:
        for y in others:
            if len(bucket) - start >= budget:
                return
            admit(bucket, x.value + y.value, Derivation("add", (x.derivation, y.derivation)))
            if len(bucket) - start >= budget:
                return
            admit(bucket, x.value * y.value, Derivation("mul", (x.derivation, y.derivation)))
