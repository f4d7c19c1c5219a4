"""Power digraphs G(n, k): the functional graph of x -> x**k on a cyclic group of order n.

Vertices are the residues 0..n-1 with the group written additively, so the
map is ``a -> k*a mod n`` and the identity is 0.
"""

from .aut import AutReport, aut_order
from .canon import CanonicalCert, certificate, is_isomorphic
from .digraph import PowerDigraph, build
from .errors import CapExceededError, DomainError, InvariantViolation
from .report import AnalysisReport, analyze
from .spectral import FactoredPoly, char_poly, min_poly
from .structure import GraphFacts, graph_facts

__all__ = [
    "AnalysisReport",
    "AutReport",
    "CanonicalCert",
    "CapExceededError",
    "DomainError",
    "FactoredPoly",
    "GraphFacts",
    "InvariantViolation",
    "PowerDigraph",
    "analyze",
    "aut_order",
    "build",
    "certificate",
    "char_poly",
    "graph_facts",
    "is_isomorphic",
    "min_poly",
]

__version__ = "0.1.0"
