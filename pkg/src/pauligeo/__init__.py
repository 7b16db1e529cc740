"""Exact Pauli-string algebra, su(4) sub-algebras, finite geometries over
GF(2), block designs, hypercomplex Cayley tables, factorized two-qubit
evolution and X-state correlation measures."""
__version__ = "0.1.0"

from .errors import (  # noqa: F401
    ChartError,
    DimensionError,
    DomainError,
    FormatError,
    InputError,
    NotAStateError,
    ParseError,
    PatternError,
    PauliGeoError,
    SizeError,
    StructureError,
)
from .pauli import GENERATORS, PauliString, commutator, commutes, multiply, parse_label, to_matrix  # noqa: F401
