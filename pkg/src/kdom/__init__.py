"""Exact k-domination invariants, (gamma, gamma_k)-graph recognition and the
3-SAT hardness gadget for small graphs and hypergraphs."""

from .graphcore import (
    CapExceeded,
    FormatError,
    Graph,
    GraphError,
    Hypergraph,
    parse_graph,
    parse_hypergraph,
)
from .solvers import (
    SolveResult,
    edge_cover_number,
    gamma,
    gamma_k,
    tc_number,
    transversal_number,
    weak_independence_number,
)

__version__ = "0.1.0"

__all__ = [
    "CapExceeded",
    "FormatError",
    "Graph",
    "GraphError",
    "Hypergraph",
    "SolveResult",
    "edge_cover_number",
    "gamma",
    "gamma_k",
    "parse_graph",
    "parse_hypergraph",
    "tc_number",
    "transversal_number",
    "weak_independence_number",
]
