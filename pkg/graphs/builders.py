"""Complete binary trees, transitive closure and symmetrisation."""

from __future__ import annotations

import logging

import networkx as nx

from graphs.models import Graph, GraphError, TreeMode

log = logging.getLogger(__name__)

MAX_TREE_DEPTH = 20


def _parents(count: int) -> list[tuple[int, int]]:
    # level order: node i > 0 has parent (i - 1) // 2
    return [(i, (i - 1) // 2) for i in range(1, count)]


def complete_binary_tree(depth: int, mode: TreeMode | str = TreeMode.UNDIRECTED) -> Graph:
    """Tree with 2^(depth+1) - 1 nodes labelled n0.. in level order.

    undirected: every parent-child pair in both orientations.
    directed_closure: an edge from every node to each of its ancestors.
    """
    if not 1 <= depth <= MAX_TREE_DEPTH:
        raise GraphError(f"tree depth must lie in 1..{MAX_TREE_DEPTH}, got {depth}")
    mode = TreeMode(mode)
    count = 2 ** (depth + 1) - 1
    labels = tuple(f"n{i}" for i in range(count))
    child_parent = _parents(count)

    if mode is TreeMode.UNDIRECTED:
        edges = {e for u, v in child_parent for e in ((u, v), (v, u))}
        return Graph(labels, frozenset(edges), directed=False)

    edges = set()
    for i in range(1, count):
        j = i
        while j > 0:
            j = (j - 1) // 2
            edges.add((i, j))
    return Graph(labels, frozenset(edges), directed=True)


def transitive_closure(g: Graph) -> Graph:
    """Reachability closure of a directed graph, without self-pairs."""
    if not g.directed:
        raise GraphError("transitive closure needs a directed graph")
    closed = nx.transitive_closure(g.to_networkx(), reflexive=None)
    edges = frozenset((u, v) for u, v in closed.edges() if u != v)
    log.debug("closure: %d -> %d edges", len(g.edges), len(edges))
    return Graph(g.nodes, edges, directed=True)


def reindexed(g: Graph, nodes: tuple[str, ...]) -> Graph:
    """The same graph with its nodes listed in the order of `nodes`."""
    if tuple(nodes) == g.nodes:
        return g
    if sorted(nodes) != sorted(g.nodes):
        raise GraphError("graphs have different node sets")
    pos = {label: i for i, label in enumerate(nodes)}
    edges = frozenset((pos[g.nodes[u]], pos[g.nodes[v]]) for u, v in g.edges)
    return Graph(tuple(nodes), edges, directed=g.directed)


def symmetrized(g: Graph) -> Graph:
    if not g.directed:
        return g
    edges = frozenset(g.edges | {(v, u) for u, v in g.edges})
    return Graph(g.nodes, edges, directed=False)
