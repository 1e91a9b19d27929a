"""Read and write TSV edge lists.

One edge per line, "child<TAB>parent". Lines starting with '#' are comments, except the
header "# directed: false", which marks the file as an undirected graph stored one line
per pair.
"""

from __future__ import annotations

import logging
import re
from pathlib import Path

from graphs.models import EdgeListError, Graph

log = logging.getLogger(__name__)

_DIRECTED_HEADER = re.compile(r"^#\s*directed\s*:\s*(true|false)\s*$", re.IGNORECASE)


def parse_edge_lines(lines, source: str | Path = "<edges>") -> Graph:
    labels: dict[str, int] = {}
    edges: set[tuple[int, int]] = set()
    directed = True

    def node(label: str) -> int:
        if label not in labels:
            labels[label] = len(labels)
        return labels[label]

    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\r\n")
        if not line.strip():
            continue
        if line.lstrip().startswith("#"):
            m = _DIRECTED_HEADER.match(line.strip())
            if m:
                directed = m.group(1).lower() == "true"
            continue
        fields = line.split("\t")
        if len(fields) != 2 or not all(f.strip() for f in fields):
            raise EdgeListError(source, lineno, f"expected 'child<TAB>parent', got {line!r}")
        child, parent = (f.strip() for f in fields)
        if child == parent:
            raise EdgeListError(source, lineno, f"self-loop on {child!r}")
        u, v = node(child), node(parent)
        edges.add((u, v))

    if not labels:
        raise EdgeListError(source, None, "no edges found")
    if not directed:
        edges |= {(v, u) for u, v in edges}
    return Graph(tuple(labels), frozenset(edges), directed=directed)


def load_edge_list(path: str | Path) -> Graph:
    path = Path(path)
    try:
        with open(path, encoding="utf-8") as f:
            graph = parse_edge_lines(f, source=path)
    except UnicodeDecodeError as e:
        raise EdgeListError(path, None, f"not UTF-8 text ({e.reason})") from e
    log.info("loaded %s: %d nodes, %d edges%s", path, len(graph), len(graph.edges),
             "" if graph.directed else " (undirected)")
    return graph


def format_edge_list(g: Graph) -> str:
    """Undirected graphs get the header and one line per pair, oriented higher index first."""
    lines = []
    if not g.directed:
        lines.append("# directed: false")
        pairs = sorted((u, v) for u, v in g.edges if u > v)
    else:
        pairs = sorted(g.edges)
    lines.extend(f"{g.nodes[u]}\t{g.nodes[v]}" for u, v in pairs)
    return "\n".join(lines) + "\n"


def write_edge_list(g: Graph, path: str | Path) -> Path:
    path = Path(path)
    path.write_text(format_edge_list(g), encoding="utf-8")
    log.info("wrote %d edges to %s", len(g.edges), path)
    return path
