"""Hall basic commutators of a free nilpotent Lie algebra / group.

Order: by weight; within a weight, [u, v] is compared by (index u, index v).
A pair [u, v] is basic when u > v and, if u = [u1, u2], u2 <= v.
"""
from __future__ import annotations

import json
import string
from dataclasses import dataclass
from functools import lru_cache

from sympy import divisors, mobius

from ..errors import SizeCap

MAX_BASIS = 20000


def witt_number(n: int, w: int) -> int:
    """Number of basic commutators of weight w on n generators."""
    total = sum(mobius(d) * n ** (w // d) for d in divisors(w))
    return total // w


def generator_names(n: int) -> list[str]:
    if n <= 26:
        return list(string.ascii_lowercase[:n])
    return [f"x{i + 1}" for i in range(n)]


@dataclass(frozen=True)
class BasicCommutator:
    index: int
    weight: int
    left: int | None = None      # index of u in [u, v]
    right: int | None = None     # index of v
    generator: int | None = None

    @property
    def is_generator(self) -> bool:
        return self.generator is not None


class HallBasis:
    def __init__(self, n: int, c: int, names: list[str] | None = None, max_size: int = MAX_BASIS):
        if n < 1 or c < 1:
            raise ValueError("need n >= 1 and c >= 1")
        self.n = n
        self.c = c
        self.names = list(names) if names else generator_names(n)
        if len(self.names) != n:
            raise ValueError("wrong number of generator names")
        elems = [BasicCommutator(i, 1, generator=i) for i in range(n)]
        by_weight = {1: list(range(n))}
        for w in range(2, c + 1):
            cands = []
            for wu in range(w - 1, 0, -1):
                wv = w - wu
                for u in by_weight[wu]:
                    eu = elems[u]
                    for v in by_weight[wv]:
                        if u <= v:
                            continue
                        if not eu.is_generator and eu.right > v:
                            continue
                        cands.append((u, v))
            cands.sort()
            by_weight[w] = []
            for u, v in cands:
                idx = len(elems)
                elems.append(BasicCommutator(idx, w, u, v))
                by_weight[w].append(idx)
            if len(elems) > max_size:
                raise SizeCap(f"Hall basis for n={n}, c={c} exceeds {max_size} elements")
        self.elements = elems
        self.by_weight = by_weight
        self.weights = [e.weight for e in elems]
        self._pair = {(e.left, e.right): e.index for e in elems if not e.is_generator}

    def __len__(self):
        return len(self.elements)

    def __getitem__(self, i) -> BasicCommutator:
        return self.elements[i]

    def index_of(self, u: int, v: int) -> int | None:
        """Index of the basic commutator [u, v], or None if [u, v] is not basic."""
        return self._pair.get((u, v))

    def weight_counts(self) -> list[int]:
        return [len(self.by_weight[w]) for w in range(1, self.c + 1)]

    def upto(self, c: int) -> int:
        """Number of basis elements of weight <= c."""
        return sum(len(self.by_weight[w]) for w in range(1, min(c, self.c) + 1))

    def tree(self, i: int):
        e = self.elements[i]
        if e.is_generator:
            return e.generator
        return (self.tree(e.left), self.tree(e.right))

    def label(self, i: int) -> str:
        e = self.elements[i]
        if e.is_generator:
            return self.names[e.generator]
        return f"[{self.label(e.left)},{self.label(e.right)}]"

    def dump(self) -> list[str]:
        return [f"{i} {e.weight} {self.label(i)}" for i, e in enumerate(self.elements)]

    def to_json(self) -> str:
        return json.dumps({
            "generators": self.names,
            "class": self.c,
            "basis": [{"index": i, "weight": e.weight, "tree": self.label(i)} for i, e in enumerate(self.elements)],
        })


@lru_cache(maxsize=None)
def build_hall_basis(n: int, c: int) -> HallBasis:
    return HallBasis(n, c)
