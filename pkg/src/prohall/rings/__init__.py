from .base import INTEGERS, Equality, IntegerRing, factorial_valuation, int_binomial
from .binomial import BinomialPoly, PolyRing, binomial_poly, evaluate_grid, finite_differences
from .closure import ClosureTower, Derivation, closure_generate
from .homs import Composite, Evaluation, Identity, PrecisionReduce, apply_hom, compose, pairwise_distinct, ring_discriminate
from .ops import binomial_coeff, is_exact_zero, poly_binomial, poly_mul, ring_arith, ring_of
from .padic import Padic, PadicRing

__all__ = [
    "INTEGERS", "Equality", "IntegerRing", "factorial_valuation", "int_binomial",
    "BinomialPoly", "PolyRing", "binomial_poly", "evaluate_grid", "finite_differences",
    "ClosureTower", "Derivation", "closure_generate",
    "Composite", "Evaluation", "Identity", "PrecisionReduce", "apply_hom", "compose",
    "pairwise_distinct", "ring_discriminate",
    "binomial_coeff", "is_exact_zero", "poly_binomial", "poly_mul", "ring_arith", "ring_of",
    "Padic", "PadicRing",
]
