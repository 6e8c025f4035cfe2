"""Free nilpotent Lie algebra on a Hall basis, with truncated BCH.

Lie elements are dense coefficient lists indexed by the Hall basis.  An exact
zero is the integer 0; other coefficients may be rationals, p-adic numbers or
binomial polynomials, which is how one engine serves every exponent ring.
"""
from __future__ import annotations

import itertools
from functools import lru_cache

from gmpy2 import mpq

from ..errors import ContextMismatch
from .assoc import dynkin_bch_words
from .hall import HallBasis, build_hall_basis

_MPQ = type(mpq(0))


def is_zero(x) -> bool:
    cls = x.__class__
    if cls is int or cls is _MPQ:
        return x == 0
    return x.is_exact_zero()


def _scale(coef, x):
    if coef == 1:
        return x
    if coef == -1:
        return -x
    return x * coef


class LieAlgebra:
    """Free nilpotent Lie algebra of class c on n generators."""

    def __init__(self, n: int, c: int, basis: HallBasis | None = None):
        self.n = n
        self.c = c
        self.basis = basis or build_hall_basis(n, c)
        self.dim = len(self.basis)
        self.weights = self.basis.weights
        self._memo: dict = {}
        self._active: set = set()
        self.table: list[dict] = [dict() for _ in range(self.dim)]
        for i in range(self.dim):
            for j in range(self.dim):
                if self.weights[i] + self.weights[j] > c:
                    continue
                vec = self._rewrite(i, j)
                if vec:
                    self.table[i][j] = tuple(sorted(vec.items()))
        del self._memo, self._active
        self._bch_terms = None

    # -- structure constants ----------------------------------------------
    def _rewrite(self, i: int, j: int) -> dict:
        """[b_i, b_j] in the Hall basis, by antisymmetry and Jacobi."""
        key = (i, j)
        if key in self._memo:
            return self._memo[key]
        if i == j or self.weights[i] + self.weights[j] > self.c:
            return {}
        if i < j:
            out = {k: -v for k, v in self._rewrite(j, i).items()}
            self._memo[key] = out
            return out
        k = self.basis.index_of(i, j)
        if k is not None:
            out = {k: 1}
        else:
            if key in self._active:
                raise RuntimeError(f"non-terminating rewrite of [{i},{j}]")
            self._active.add(key)
            # [[u1,u2],v] = [[u1,v],u2] + [u1,[u2,v]]
            u1, u2 = self.basis[i].left, self.basis[i].right
            out = {}
            for k1, a in self._rewrite(u1, j).items():
                for k2, b in self._rewrite(k1, u2).items():
                    out[k2] = out.get(k2, 0) + a * b
            for k1, a in self._rewrite(u2, j).items():
                for k2, b in self._rewrite(u1, k1).items():
                    out[k2] = out.get(k2, 0) + a * b
            out = {k: v for k, v in out.items() if v}
            self._active.discard(key)
        self._memo[key] = out
        return out

    def structure_constant(self, i: int, j: int) -> dict:
        return dict(self.table[i].get(j, ()))

    def check_jacobi(self) -> list:
        """All basis triples violating Jacobi (should be empty)."""
        bad = []
        e = self.basis_vector
        for i, j, k in itertools.combinations(range(self.dim), 3):
            if self.weights[i] + self.weights[j] + self.weights[k] > self.c:
                continue
            x, y, z = e(i), e(j), e(k)
            s = self.add(self.add(self.bracket(self.bracket(x, y), z),
                                  self.bracket(self.bracket(y, z), x)),
                         self.bracket(self.bracket(z, x), y))
            if any(not is_zero(v) for v in s):
                bad.append((i, j, k))
        return bad

    def check_antisymmetry(self) -> list:
        bad = []
        for i in range(self.dim):
            for j in range(self.dim):
                a = dict(self.table[i].get(j, ()))
                b = {k: -v for k, v in self.table[j].get(i, ())}
                if a != b:
                    bad.append((i, j))
        return bad

    # -- vector arithmetic ------------------------------------------------
    def zero(self) -> list:
        return [0] * self.dim

    def basis_vector(self, i: int, coef=1) -> list:
        v = [0] * self.dim
        v[i] = coef
        return v

    def add(self, x, y) -> list:
        return [b if is_zero(a) else (a if is_zero(b) else a + b) for a, b in zip(x, y)]

    def sub(self, x, y) -> list:
        return self.add(x, self.neg(y))

    def neg(self, x) -> list:
        return [a if is_zero(a) else -a for a in x]

    def scale(self, coef, x) -> list:
        if is_zero(coef):
            return self.zero()
        return [a if is_zero(a) else coef * a for a in x]

    def truncate(self, x, c: int) -> list:
        return [a if self.weights[i] <= c else 0 for i, a in enumerate(x)]

    def bracket(self, x, y) -> list:
        """Bilinear extension of the structure constants; weights above c vanish."""
        w = self.weights
        c = self.c
        nzx = [(i, a) for i, a in enumerate(x) if not is_zero(a)]
        nzy = [(j, b) for j, b in enumerate(y) if not is_zero(b)]
        out = [0] * self.dim
        if not nzx or not nzy:
            return out
        wmin = w[nzy[0][0]]
        for i, a in nzx:
            wi = w[i]
            if wi + wmin > c:
                break
            row = self.table[i]
            for j, b in nzy:
                if wi + w[j] > c:
                    break
                entries = row.get(j)
                if entries is None:
                    continue
                prod = a * b
                for k, coef in entries:
                    term = _scale(coef, prod)
                    cur = out[k]
                    out[k] = term if cur.__class__ is int and cur == 0 else cur + term
        return out

    # -- BCH ---------------------------------------------------------------
    def bch_terms(self) -> list:
        """[(tree over {X, Y}, coefficient)]: the BCH series on the two-letter Hall basis."""
        if self._bch_terms is None:
            self._bch_terms = bch_table(self.c)
        return self._bch_terms

    def bch(self, x, y) -> list:
        """log(exp x exp y), truncated at weight c."""
        if all(is_zero(a) for a in x):
            return list(y)
        if all(is_zero(b) for b in y):
            return list(x)
        two = build_hall_basis(2, self.c)
        vals: dict = {0: x, 1: y}

        def val(h):
            v = vals.get(h)
            if v is None:
                e = two[h]
                v = self.bracket(val(e.left), val(e.right))
                vals[h] = v
            return v

        out = self.add(x, y)
        for h, coef in self.bch_terms():
            if h < 2:
                continue
            v = val(h)
            if any(not is_zero(a) for a in v):
                out = self.add(out, self.scale(coef, v))
        return out

    def with_bch_terms(self, terms) -> "LieAlgebra":
        """Copy sharing structure constants but using a different BCH table."""
        clone = object.__new__(LieAlgebra)
        clone.__dict__.update(self.__dict__)
        clone._bch_terms = list(terms)
        return clone


@lru_cache(maxsize=None)
def bch_table(c: int) -> tuple:
    """BCH coefficients over the Hall basis of the free Lie algebra on {X, Y}.

    Derived from the associative series log(e^X e^Y) by the Dynkin map: each
    degree-d word w contributes coeff(w)/d times its left-normed bracket,
    evaluated in the free nilpotent Lie algebra on two generators.
    """
    two = lie_algebra(2, c)
    acc = two.zero()
    prefix: dict = {}

    def left_normed(word):
        v = prefix.get(word)
        if v is None:
            if len(word) == 1:
                v = two.basis_vector(word[0])
            else:
                v = two.bracket(left_normed(word[:-1]), two.basis_vector(word[-1]))
            prefix[word] = v
        return v

    for word, coef in sorted(dynkin_bch_words(c).items(), key=lambda kv: (len(kv[0]), kv[0])):
        acc = two.add(acc, two.scale(coef, left_normed(word)))
    return tuple((h, a) for h, a in enumerate(acc) if not is_zero(a))


@lru_cache(maxsize=None)
def lie_algebra(n: int, c: int) -> LieAlgebra:
    return LieAlgebra(n, c)


class LieElement:
    """Coordinate vector over the Hall basis of a free nilpotent Lie algebra."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: LieAlgebra, coeffs):
        coeffs = list(coeffs)
        if len(coeffs) != algebra.dim:
            raise ValueError("coordinate vector has the wrong length")
        self.algebra = algebra
        self.coeffs = coeffs

    @classmethod
    def generator(cls, algebra: LieAlgebra, i: int, coef=1) -> "LieElement":
        return cls(algebra, algebra.basis_vector(i, coef))

    def _check(self, other):
        if not isinstance(other, LieElement):
            return False
        if other.algebra is not self.algebra and (other.algebra.n, other.algebra.c) != (self.algebra.n, self.algebra.c):
            raise ContextMismatch("Lie elements from different algebras")
        return True

    def __add__(self, other):
        if not self._check(other):
            return NotImplemented
        return LieElement(self.algebra, self.algebra.add(self.coeffs, other.coeffs))

    def __sub__(self, other):
        if not self._check(other):
            return NotImplemented
        return LieElement(self.algebra, self.algebra.sub(self.coeffs, other.coeffs))

    def __neg__(self):
        return LieElement(self.algebra, self.algebra.neg(self.coeffs))

    def __rmul__(self, coef):
        return LieElement(self.algebra, self.algebra.scale(coef, self.coeffs))

    def __eq__(self, other):
        if not isinstance(other, LieElement):
            return NotImplemented
        self._check(other)
        return all(is_zero(a - b) if not (is_zero(a) and is_zero(b)) else True
                   for a, b in zip(self.coeffs, other.coeffs))

    __hash__ = None

    def is_zero(self) -> bool:
        return all(is_zero(a) for a in self.coeffs)

    def component(self, w: int) -> dict:
        return {i: a for i, a in enumerate(self.coeffs) if self.algebra.weights[i] == w and not is_zero(a)}

    def __str__(self):
        terms = [f"({a})*{self.algebra.basis.label(i)}" for i, a in enumerate(self.coeffs) if not is_zero(a)]
        return " + ".join(terms) or "0"

    __repr__ = __str__


def lie_bracket(x: LieElement, y: LieElement) -> LieElement:
    x._check(y)
    return LieElement(x.algebra, x.algebra.bracket(x.coeffs, y.coeffs))


def bch(x: LieElement, y: LieElement) -> LieElement:
    x._check(y)
    return LieElement(x.algebra, x.algebra.bch(x.coeffs, y.coeffs))
