"""Graphs to embed: binary trees, closures, edge-list files and hop distances."""

from graphs.builders import MAX_TREE_DEPTH, complete_binary_tree, reindexed, symmetrized, transitive_closure
from graphs.distances import graph_distance_matrix
from graphs.models import EdgeListError, Graph, GraphError, TreeMode
from graphs.parser import format_edge_list, load_edge_list, parse_edge_lines, write_edge_list

__all__ = [
    "MAX_TREE_DEPTH",
    "EdgeListError",
    "Graph",
    "GraphError",
    "TreeMode",
    "complete_binary_tree",
    "format_edge_list",
    "graph_distance_matrix",
    "load_edge_list",
    "parse_edge_lines",
    "reindexed",
    "symmetrized",
    "transitive_closure",
    "write_edge_list",
]
