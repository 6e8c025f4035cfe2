"""Truncated free associative algebra Q<x_1..x_n> / (words longer than c).

Elements are dicts mapping words (tuples of letter indices) to rationals.
This module is the trusted series arithmetic: the BCH table is derived here
once, and :func:`assoc_oracle` recomputes log(exp x exp y) from scratch as an
independent check on the Lie-side BCH evaluation.
"""
from __future__ import annotations

import math
from functools import lru_cache

from gmpy2 import mpq

from ..errors import SizeCap
from .hall import HallBasis, build_hall_basis

ORACLE_CAP = 5


def _add_into(acc: dict, other: dict, scale=1):
    for w, a in other.items():
        v = acc.get(w, 0) + scale * a
        if v:
            acc[w] = v
        else:
            acc.pop(w, None)


def mul(a: dict, b: dict, c: int) -> dict:
    out: dict = {}
    for wa, ca in a.items():
        room = c - len(wa)
        if room < 0:
            continue
        for wb, cb in b.items():
            if len(wb) > room:
                continue
            w = wa + wb
            v = out.get(w, 0) + ca * cb
            if v:
                out[w] = v
            else:
                out.pop(w, None)
    return out


def exp(x: dict, c: int) -> dict:
    """exp(x) for x without constant term."""
    out = {(): mpq(1)}
    term = {(): mpq(1)}
    for k in range(1, c + 1):
        term = {w: v / k for w, v in mul(term, x, c).items()}
        _add_into(out, term)
    return out


def log(g: dict, c: int) -> dict:
    """log(g) for g with constant term 1."""
    z = {w: v for w, v in g.items() if w}
    if g.get((), 0) != 1:
        raise ValueError("log needs constant term 1")
    out: dict = {}
    power = {(): mpq(1)}
    for k in range(1, c + 1):
        power = mul(power, z, c)
        _add_into(out, power, mpq((-1) ** (k + 1), k))
    return out


def commutator(a: dict, b: dict, c: int) -> dict:
    out = mul(a, b, c)
    _add_into(out, mul(b, a, c), -1)
    return out


def log_exp_product(x: dict, y: dict, c: int) -> dict:
    return log(mul(exp(x, c), exp(y, c), c), c)


class HallEmbedding:
    """Associative expansions of Hall basis elements and the inverse projection."""

    def __init__(self, basis: HallBasis):
        self.basis = basis
        c = basis.c
        self.expansions: list[dict] = []
        for e in basis.elements:
            if e.is_generator:
                self.expansions.append({(e.generator,): 1})
            else:
                self.expansions.append(commutator(self.expansions[e.left], self.expansions[e.right], c))
        self._solvers = {w: _Solver([self.expansions[i] for i in basis.by_weight[w]]) for w in range(1, c + 1)}

    def to_assoc(self, coeffs) -> dict:
        out: dict = {}
        for i, a in enumerate(coeffs):
            if a:
                _add_into(out, self.expansions[i], a)
        return out

    def to_lie(self, element: dict) -> list:
        """Coordinates in the Hall basis; raises ValueError if not a Lie element."""
        if element.get((), 0):
            raise ValueError("element has a constant term")
        coeffs = [0] * len(self.basis)
        for w in range(1, self.basis.c + 1):
            part = {word: v for word, v in element.items() if len(word) == w}
            sol = self._solvers[w].solve(part)
            for idx, v in zip(self.basis.by_weight[w], sol):
                coeffs[idx] = v
        extra = [word for word in element if len(word) > self.basis.c]
        if extra:
            raise ValueError("element exceeds the truncation degree")
        return coeffs


class _Solver:
    """Exact left inverse for a set of linearly independent word-vectors."""

    def __init__(self, columns: list[dict]):
        self.columns = columns
        m = len(columns)
        words = sorted({w for col in columns for w in col})
        # Greedy row selection: keep words whose rows are independent.
        echelon: list[tuple[int, list]] = []
        chosen: list = []
        for word in words:
            row = [mpq(col.get(word, 0)) for col in columns]
            for piv, erow in echelon:
                if row[piv]:
                    f = row[piv] / erow[piv]
                    row = [a - f * b for a, b in zip(row, erow)]
            piv = next((k for k, a in enumerate(row) if a), None)
            if piv is None:
                continue
            echelon.append((piv, row))
            chosen.append(word)
            if len(chosen) == m:
                break
        if len(chosen) != m:
            raise ValueError("columns are linearly dependent")
        self.words = chosen
        self.inverse = _invert([[mpq(col.get(w, 0)) for col in columns] for w in chosen])

    def solve(self, element: dict) -> list:
        rhs = [element.get(w, 0) for w in self.words]
        sol = [sum((a * b for a, b in zip(row, rhs)), mpq(0)) for row in self.inverse]
        residual = dict(element)
        for col, s in zip(self.columns, sol):
            if s:
                _add_into(residual, col, -s)
        if residual:
            raise ValueError("not in the span of the Hall basis (not a Lie element)")
        return sol


def _invert(mat: list[list]) -> list[list]:
    n = len(mat)
    aug = [row[:] + [mpq(int(i == j)) for j in range(n)] for i, row in enumerate(mat)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col])
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [a * inv for a in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


@lru_cache(maxsize=None)
def hall_embedding(n: int, c: int) -> HallEmbedding:
    return HallEmbedding(build_hall_basis(n, c))


def assoc_oracle(x, y, n: int, c: int, cap: int = ORACLE_CAP) -> list:
    """log(exp x exp y) by direct series arithmetic, rewritten in the Hall basis.

    ``x`` and ``y`` are rational coordinate vectors over the Hall basis (n, c).
    """
    if c > cap:
        raise SizeCap(f"oracle limited to class <= {cap}")
    emb = hall_embedding(n, c)
    ax = emb.to_assoc([mpq(a) for a in x])
    ay = emb.to_assoc([mpq(a) for a in y])
    return emb.to_lie(log_exp_product(ax, ay, c))


def dynkin_bch_words(c: int) -> dict:
    """Two-letter BCH series with each degree-d part written as (1/d) * sum over words.

    Returns {word: coefficient} so that log(e^X e^Y) = sum coeff * [..[w1, w2], .., wd].
    """
    series = log_exp_product({(0,): mpq(1)}, {(1,): mpq(1)}, c)
    return {w: v / len(w) for w, v in series.items()}


def factorial_denominators(c: int) -> int:
    return math.lcm(*range(1, c + 1))
