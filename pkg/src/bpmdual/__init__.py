"""Exact dual polynomial of bipartite perfect matching.

Closed-form coefficients, independent brute-force oracles, monomial and
coefficient-magnitude bounds, approximate degree of the matching function,
and sensitivity lower bounds, all exact at desk scale.
"""

from ._errors import (
    BpmDualError,
    DegenerateSequenceError,
    DimensionMismatchError,
    DomainError,
    EmptyGraphError,
    NotSortedOrderedError,
    NotTotallyOrderedError,
    NumericalFailure,
    PreconditionError,
    SizeLimitError,
)
from .bigraph import BipartiteGraph, parse_graph
from .coeff import dual_coefficient
from .ordered import Block, PermittedEdgeSet, RepresentingSequence
from .polyspace import DualPolynomial

__all__ = [
    "BipartiteGraph",
    "Block",
    "BpmDualError",
    "DegenerateSequenceError",
    "DimensionMismatchError",
    "DomainError",
    "DualPolynomial",
    "EmptyGraphError",
    "NotSortedOrderedError",
    "NotTotallyOrderedError",
    "NumericalFailure",
    "PermittedEdgeSet",
    "PreconditionError",
    "RepresentingSequence",
    "SizeLimitError",
    "dual_coefficient",
    "parse_graph",
]
__version__ = "0.1.0"
