from .algebra import LieAlgebra, LieElement, bch, bch_table, is_zero, lie_algebra, lie_bracket
from .assoc import ORACLE_CAP, assoc_oracle, dynkin_bch_words, hall_embedding
from .hall import BasicCommutator, HallBasis, build_hall_basis, generator_names, witt_number

__all__ = [
    "LieAlgebra", "LieElement", "bch", "bch_table", "is_zero", "lie_algebra", "lie_bracket",
    "ORACLE_CAP", "assoc_oracle", "dynkin_bch_words", "hall_embedding",
    "BasicCommutator", "HallBasis", "build_hall_basis", "generator_names", "witt_number",
]
