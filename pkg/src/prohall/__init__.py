"""Free nilpotent Hall groups over binomial exponent rings."""
from .collect import naive_collect
from .discriminate import Certificate, DiscriminationProblem, centralizer_demo, separate
from .elements import Comm, Gen, Inv, Mul, One, Pow, ProHallElement, SubstitutionMap, element_equal, substitute
from .group import FreeHallGroup, NormalForm, axiom_suite, free_hall_group
from .lie import assoc_oracle, build_hall_basis, lie_algebra
from .rings import INTEGERS, PadicRing, PolyRing
from .syntax import parse, parse_term, print_ast, print_term

__version__ = "0.1.0"

__all__ = [
    "naive_collect", "Certificate", "DiscriminationProblem", "centralizer_demo", "separate",
    "Comm", "Gen", "Inv", "Mul", "One", "Pow", "ProHallElement", "SubstitutionMap", "element_equal", "substitute",
    "FreeHallGroup", "NormalForm", "axiom_suite", "free_hall_group",
    "assoc_oracle", "build_hall_basis", "lie_algebra", "INTEGERS", "PadicRing", "PolyRing",
    "parse", "parse_term", "print_ast", "print_term",
]
