"""CSV, TSV and JSON artifacts written by the command-line tool.

Floats are written with 17 significant digits so that every value reads back to the
same float64. JSON files are flat key -> value maps; non-finite floats become null.
"""

from __future__ import annotations

import csv
import json
import logging
import math
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence

import numpy as np

from barycenter.models import CellResult
from disk.models import DiskDomainError, DiskModel
from embedding.models import EmbeddingState, EmbeddingTrace
from graphs.models import Graph
from optim.models import Trace

log = logging.getLogger(__name__)


class ArtifactError(ValueError):
    """Unreadable artifact; carries the path and 1-based line number when known."""

    def __init__(self, path: str | Path, lineno: int | None, message: str):
        self.path = str(path)
        self.lineno = lineno
        where = f"{self.path}:{lineno}" if lineno is not None else self.path
        super().__init__(f"{where}: {message}")


def fmt(x: Any) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if x is None:
        return ""
    return format(float(x), ".17g")


def write_csv(path: str | Path, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([fmt(x) for x in row])
    return path


def _json_value(x: Any) -> Any:
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if math.isfinite(x) else None
    if x is None or isinstance(x, str):
        return x
    raise TypeError(f"flat JSON values must be scalars, got {type(x).__name__}")


def write_json(path: str | Path, data: Mapping[str, Any]) -> Path:
    path = Path(path)
    flat = {str(k): _json_value(v) for k, v in data.items()}
    path.write_text(json.dumps(flat, indent=2, sort_keys=True, allow_nan=False) + "\n", encoding="utf-8")
    return path


def write_run_trace(path: str | Path, trace: Trace) -> Path:
    """iteration, loss, log10 loss, then one column per coordinate."""
    dim = trace.iterates.shape[1]
    header = ["iteration", "loss", "log10_loss", *(f"x{i + 1}" for i in range(dim))]
    with np.errstate(divide="ignore", invalid="ignore"):
        logs = np.log10(trace.loss_values)
    rows = (
        (t, loss, lg, *coords)
        for t, (loss, lg, coords) in enumerate(zip(trace.loss_values, logs, trace.iterates))
    )
    return write_csv(path, header, rows)


def write_histogram(path: str | Path, cell: CellResult) -> Path:
    edges = cell.bin_edges
    rows = ((i, edges[i], edges[i + 1], int(c)) for i, c in enumerate(cell.histogram))
    return write_csv(path, ["bin", "left", "right", "count"], rows)


def cell_stem(cell: CellResult) -> str:
    return f"{cell.rule.value}_lr{format(cell.lr, 'g')}"


def write_embedding_trace(path: str | Path, trace: EmbeddingTrace) -> Path:
    """step, surrogate loss, and the full loss on the steps where it was evaluated."""
    full = dict(trace.full_losses)
    surrogate = dict(enumerate(trace.surrogate_losses.tolist(), start=1))
    steps = sorted(set(surrogate) | set(full))
    rows = ((step, surrogate.get(step), full.get(step)) for step in steps)
    return write_csv(path, ["step", "surrogate_loss", "full_loss"], rows)


def write_embedding(path: str | Path, state: EmbeddingState, graph: Graph) -> Path:
    """label<TAB>x1<TAB>...<TAB>xn, one node per line in graph order."""
    if len(state) != len(graph):
        raise ValueError(f"embedding has {len(state)} rows, graph has {len(graph)} nodes")
    path = Path(path)
    lines = [
        "\t".join([label, *(fmt(x) for x in row)])
        for label, row in zip(graph.nodes, state.coords)
    ]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    log.info("wrote %d positions to %s", len(lines), path)
    return path


def read_embedding(path: str | Path, graph: Graph, radius: float = 1.0) -> EmbeddingState:
    """Load a label-keyed TSV embedding and order its rows like `graph.nodes`."""
    path = Path(path)
    rows: dict[str, np.ndarray] = {}
    dim = None
    with open(path, encoding="utf-8") as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.rstrip("\r\n")
            if not line.strip() or line.startswith("#"):
                continue
            label, *values = line.split("\t")
            try:
                coords = np.array([float(v) for v in values])
            except ValueError:
                raise ArtifactError(path, lineno, f"non-numeric coordinate in {line!r}") from None
            if not values or (dim is not None and len(values) != dim):
                raise ArtifactError(path, lineno, f"expected {dim or 'at least 1'} coordinates, got {len(values)}")
            if label in rows:
                raise ArtifactError(path, lineno, f"duplicate label {label!r}")
            dim = len(values)
            rows[label] = coords

    missing = [label for label in graph.nodes if label not in rows]
    if missing:
        raise ArtifactError(path, None, f"no position for {len(missing)} nodes, e.g. {missing[:3]}")
    extra = set(rows) - set(graph.nodes)
    if extra:
        log.warning("%s: ignoring %d labels not in the graph", path, len(extra))
    try:
        return EmbeddingState(DiskModel(radius=radius, dim=dim), np.stack([rows[n] for n in graph.nodes]))
    except DiskDomainError as e:
        raise ArtifactError(path, None, str(e)) from e
