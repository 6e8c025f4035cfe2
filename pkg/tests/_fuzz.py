"""Seeded generators of random syntax trees, shared by the syntax and acceptance tests."""
import random

from prohall.syntax import AComm, AGen, AOne, APow, AWord, RBin, RBinom, RInt, RNeg, RVar

GENS = ("a", "b", "c", "x1", "y2")


def random_rexpr(rng: random.Random, depth: int = 3, var: str = "t"):
    if depth == 0 or rng.random() < 0.35:
        k = rng.random()
        return RInt(rng.randint(0, 30)) if k < 0.6 else RVar(var)
    k = rng.randrange(4)
    if k == 0:
        return RBinom(random_rexpr(rng, depth - 1, var), rng.randint(0, 5))
    if k == 1:
        return RNeg(random_rexpr(rng, depth - 1, var))
    return RBin(rng.choice("+-*"), random_rexpr(rng, depth - 1, var), random_rexpr(rng, depth - 1, var))


def random_ast(rng: random.Random, depth: int = 3, var: str = "t"):
    if depth == 0 or rng.random() < 0.3:
        return AOne() if rng.random() < 0.05 else AGen(rng.choice(GENS))
    k = rng.randrange(3)
    if k == 0:
        return AWord(tuple(random_ast(rng, depth - 1, var) for _ in range(rng.randint(2, 3))))
    if k == 1:
        return AComm(random_ast(rng, depth - 1, var), random_ast(rng, depth - 1, var))
    return APow(random_ast(rng, depth - 1, var), random_rexpr(rng, 2, var))

