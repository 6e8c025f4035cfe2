"""Collection from the left in the free nilpotent group, integer exponents only.

This is the independent oracle for the Lie-coordinate group arithmetic: it
never touches BCH and works purely with the rewriting

    b_j^e b_k = b_k (b_j^{b_k})^e,   b_j^{b_k} = b_j [b_j, b_k]   (j > k),

where [b_j, b_k] is either a basic commutator letter or is expanded through
[u, v]^x = [u^x, v^x].  Letters of weight above the class are dropped.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from .errors import SizeCap
from .lie.hall import HallBasis, build_hall_basis

COLLECT_CAP = 4
MAX_STEPS = 2_000_000

Word = tuple  # of (basis index, integer exponent) syllables


def _inverse(word: Word) -> Word:
    return tuple((j, -e) for j, e in reversed(word))


def _power(word: Word, e: int) -> Word:
    if e == 0 or not word:
        return ()
    if len(word) == 1:
        j, f = word[0]
        return ((j, f * e),)
    base = word if e > 0 else _inverse(word)
    return base * abs(e)


class Collector:
    def __init__(self, n: int, c: int, basis: HallBasis | None = None):
        self.n = n
        self.c = c
        self.basis = basis or build_hall_basis(n, c)
        self.dim = len(self.basis)
        self.weights = self.basis.weights
        self._conj: dict = {}
        self.steps = 0

    def collect(self, word: Sequence) -> list:
        """Exponent vector of the collected form of a word of basis letters."""
        w, c = self.weights, self.c
        exps = [0] * self.dim
        stack = [s for s in reversed(tuple(word))]
        while stack:
            k, s = stack.pop()
            if s == 0 or w[k] > c:
                continue
            self.steps += 1
            if self.steps > MAX_STEPS:
                raise SizeCap("collection exceeded the step budget")
            tail = [(j, exps[j]) for j in range(k + 1, self.dim) if exps[j]]
            exps[k] += s
            if not tail:
                continue
            for j, _ in tail:
                exps[j] = 0
            sign = 1 if s > 0 else -1
            moved = tuple(tail)
            for _ in range(abs(s)):
                moved = self._conj_word(moved, k, sign)
            stack.extend(reversed(moved))
        return exps

    def _syllables(self, exps) -> Word:
        return tuple((j, e) for j, e in enumerate(exps) if e)

    def _conj_word(self, word: Word, k: int, sign: int) -> Word:
        out = []
        for j, e in word:
            out.extend(_power(self.conj_letter(j, k, sign), e))
        return tuple(out)

    def conj_letter(self, j: int, k: int, sign: int) -> Word:
        """Collected form of b_j^(b_k^sign) for j > k."""
        key = (j, k, sign)
        hit = self._conj.get(key)
        if hit is not None:
            return hit
        w = self.weights
        if w[j] + w[k] > self.c:
            out = ((j, 1),)
        elif sign > 0:
            idx = self.basis.index_of(j, k)
            if idx is not None:
                out = ((j, 1), (idx, 1))
            else:
                # b_j = [u, v] with v > k; conjugation is an automorphism
                e = self.basis[j]
                u = self.conj_letter(e.left, k, 1)
                v = self.conj_letter(e.right, k, 1)
                out = self._syllables(self.collect(_inverse(u) + _inverse(v) + u + v))
        else:
            # y^x = y e  =>  y^(x^-1) = y (e^-1)^(x^-1)
            forward = self.conj_letter(j, k, 1)
            rest = forward[1:]
            tail = self._conj_word(_inverse(rest), k, -1)
            out = self._syllables(self.collect(((j, 1),) + tail))
        self._conj[key] = out
        return out


@lru_cache(maxsize=None)
def collector(n: int, c: int) -> Collector:
    return Collector(n, c)


def naive_collect(word: Sequence, n: int, c: int, cap: int = COLLECT_CAP) -> list:
    """Collected exponent vector of a word [(generator index, integer exponent), ...]."""
    if c > cap:
        raise SizeCap(f"collection oracle is capped at class {cap}")
    for i, e in word:
        if not 0 <= i < n:
            raise IndexError(f"generator index {i} out of range")
        if not isinstance(e, int):
            raise TypeError("the collection oracle takes integer exponents only")
    return collector(n, c).collect(tuple(word))
