"""Embedding quality: full loss and Kendall's tau-b against graph hop distances."""

from __future__ import annotations

import logging
from typing import Optional

import numpy as np
from scipy.stats import kendalltau

from disk.geometry import pairwise_distances
from embedding.loss import loss_full
from embedding.models import EmbeddingState, EvalReport
from graphs.builders import reindexed
from graphs.distances import graph_distance_matrix
from graphs.models import Graph

log = logging.getLogger(__name__)


def pairwise_distance_matrix(state: EmbeddingState) -> np.ndarray:
    return pairwise_distances(state.coords, state.model.radius)


def _pairs(m) -> np.ndarray:
    m = np.asarray(m, dtype=np.float64)
    if m.ndim == 1:
        return m
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix or a condensed vector, got shape {m.shape}")
    return m[np.triu_indices(m.shape[0], k=1)]


def kendall_tau(a, b) -> float:
    """Tau-b over the upper-triangle entries of two distance matrices (or two 1-D vectors)."""
    x, y = _pairs(a), _pairs(b)
    if x.shape != y.shape:
        raise ValueError(f"inputs differ in shape: {np.shape(a)} vs {np.shape(b)}")
    if x.size < 2:
        raise ValueError("tau needs at least two pairs")
    if np.all(x == x[0]) or np.all(y == y[0]):
        raise ValueError("tau is undefined for a constant input")
    tau, _ = kendalltau(x, y, variant="b")
    return float(tau)


def evaluate(state: EmbeddingState, graph: Graph, base: Optional[Graph] = None) -> EvalReport:
    """Full loss and tau against the symmetrised graph, plus tau against `base` when given."""
    embedded = pairwise_distance_matrix(state)
    tau = kendall_tau(graph_distance_matrix(graph), embedded)
    tau_base = None
    if base is not None:
        base = reindexed(base, graph.nodes)
        tau_base = kendall_tau(graph_distance_matrix(base), embedded)
    report = EvalReport(full_loss=loss_full(state, graph), tau=tau, tau_base=tau_base)
    log.info("eval: loss %.6g, tau %.4f%s", report.full_loss, report.tau,
             "" if tau_base is None else f", base tau {tau_base:.4f}")
    return report
