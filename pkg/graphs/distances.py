"""Hop-count distance matrices."""

from __future__ import annotations

import logging

import networkx as nx
import numpy as np

from graphs.builders import symmetrized
from graphs.models import Graph, GraphError

log = logging.getLogger(__name__)


def graph_distance_matrix(g: Graph) -> np.ndarray:
    """Shortest-path hop counts on the symmetrised graph, as an (n, n) int matrix."""
    und = symmetrized(g).to_networkx()
    if len(g) > 1 and not nx.is_connected(und):
        components = sorted(
            (sorted(g.nodes[i] for i in comp) for comp in nx.connected_components(und)),
            key=lambda c: (-len(c), c),
        )
        shown = "; ".join("{" + ", ".join(c[:5]) + (", ..." if len(c) > 5 else "") + "}" for c in components[:5])
        raise GraphError(f"graph is disconnected ({len(components)} components): {shown}")

    n = len(g)
    out = np.zeros((n, n), dtype=np.int64)
    for source, lengths in nx.all_pairs_shortest_path_length(und):
        for target, hops in lengths.items():
            out[source, target] = hops
    return out
