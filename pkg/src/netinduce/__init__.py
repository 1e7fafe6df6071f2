"""Induced copies of the net graph: counting, extremal constructions and certificates.

The net is a triangle with one pendant edge at each triangle vertex.  The
package counts induced nets, builds the iterated blow-up of the net and its
recurrence, searches small graphs exhaustively, decomposes near-extremal
graphs into blobs, re-derives the funky-pair case bounds, solves the
symmetric quadratic programs on blob sizes and certifies the upper bound on
nets through a trash vertex.
"""

__version__ = "0.1.0"

from ._jit import backend
from .graph import Graph, GraphError, Graph6Error, emit_graph6, make_net, parse_graph6
from .canon import canonical_form, is_isomorphic
from .counting import induced_count, net_count, pair_net_count, per_vertex_net_counts
from .constructions import (balanced_iterated_blowup, best_composition, limit_density, pendant_k4,
                            recurrence_value)

__all__ = [
    "__version__", "backend", "Graph", "GraphError", "Graph6Error", "emit_graph6", "make_net",
    "parse_graph6", "canonical_form", "is_isomorphic", "induced_count", "net_count",
    "pair_net_count", "per_vertex_net_counts", "balanced_iterated_blowup", "best_composition",
    "limit_density", "pendant_k4", "recurrence_value",
]
