"""Graph value type shared by the builders, the edge-list parser and the embedding."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from pathlib import Path

import networkx as nx
import numpy as np


class GraphError(ValueError):
    pass


class EdgeListError(GraphError):
    """Malformed edge-list file; carries the path and 1-based line number."""

    def __init__(self, path: str | Path, lineno: int | None, message: str):
        self.path = str(path)
        self.lineno = lineno
        where = f"{self.path}:{lineno}" if lineno is not None else self.path
        super().__init__(f"{where}: {message}")


class TreeMode(str, Enum):
    UNDIRECTED = "undirected"
    DIRECTED_CLOSURE = "directed_closure"


@dataclass(frozen=True)
class Graph:
    """Nodes are labels; edges are (u, v) index pairs read as u -> v.

    Undirected graphs hold both orientations of every pair.
    """

    nodes: tuple[str, ...]
    edges: frozenset[tuple[int, int]]
    directed: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "edges", frozenset((int(u), int(v)) for u, v in self.edges))
        if len(set(self.nodes)) != len(self.nodes):
            raise GraphError("node labels must be unique")
        n = len(self.nodes)
        for u, v in self.edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
            if u == v:
                raise GraphError(f"self-loop on {self.nodes[u]!r}")
        if not self.directed:
            missing = [(u, v) for u, v in self.edges if (v, u) not in self.edges]
            if missing:
                raise GraphError(f"undirected graph lacks reverse orientation of {missing[:3]}")

    def __len__(self) -> int:
        return len(self.nodes)

    @cached_property
    def index(self) -> dict[str, int]:
        return {label: i for i, label in enumerate(self.nodes)}

    @cached_property
    def edge_array(self) -> np.ndarray:
        """Edges sorted by (u, v), shape (|E|, 2)."""
        if not self.edges:
            return np.empty((0, 2), dtype=np.int64)
        return np.array(sorted(self.edges), dtype=np.int64)

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        """N(u) for every node u."""
        out: list[set[int]] = [set() for _ in self.nodes]
        for u, v in self.edges:
            out[u].add(v)
        return tuple(frozenset(s) for s in out)

    @cached_property
    def non_neighbors(self) -> tuple[np.ndarray, ...]:
        """N'(u) = V minus N(u) minus u, sorted, for every node u."""
        everything = np.arange(len(self.nodes))
        out = []
        for u, nbrs in enumerate(self.adjacency):
            mask = np.ones(len(self.nodes), dtype=bool)
            mask[list(nbrs)] = False
            mask[u] = False
            pool = everything[mask]
            pool.setflags(write=False)
            out.append(pool)
        return tuple(out)

    def to_networkx(self) -> nx.Graph:
        g = nx.DiGraph() if self.directed else nx.Graph()
        g.add_nodes_from(range(len(self.nodes)))
        g.add_edges_from(self.edges)
        return g
