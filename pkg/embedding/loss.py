"""Softmax ranking loss of an embedding and its gradients.

For a positive pair (u, v) the loss term is

    -log( exp(-d(u, v)) / sum_{v' in {v} + N'(u)} exp(-d(u, v')) )
      = d(u, v) + log sum_{v' in {v} + N'(u)} exp(-d(u, v'))

with N'(u) the nodes that are neither u nor a neighbour of u. The positive sits in its own
denominator, so every term is >= 0. The full loss sums one term per edge. The stochastic
variants sum terms over uniformly drawn edges, with the full N'(u) or a uniform sample of
it as negatives.
"""

from __future__ import annotations

import logging
from typing import Iterable, Sequence

import numpy as np
from scipy.special import logsumexp, softmax

from disk.geometry import distance_arrays, distance_gradient_arrays, pairwise_distances
from embedding.models import EmbeddingState, LossTerm, SparseGradient
from graphs.models import Graph

log = logging.getLogger(__name__)


def _check_sizes(state: EmbeddingState, graph: Graph) -> None:
    if len(state) != len(graph):
        raise ValueError(f"embedding has {len(state)} rows but the graph has {len(graph)} nodes")


def term_loss_and_grad(coords: np.ndarray, term: LossTerm, radius: float) -> tuple[float, np.ndarray, np.ndarray]:
    """Loss of one term and its partials for rows [u, v, *negatives]."""
    x_u = coords[term.u]
    d_uv, du, dv = distance_gradient_arrays(x_u, coords[term.v], radius)
    d_un, du_n, dn = distance_gradient_arrays(x_u, coords[term.negatives], radius)
    logits = -np.concatenate(([d_uv], d_un))
    weights = softmax(logits)
    w_v, w_n = weights[0], weights[1:]
    loss = float(d_uv) + float(logsumexp(logits))

    partials = np.empty((2 + len(term.negatives), coords.shape[1]))
    partials[0] = (1.0 - w_v) * du - w_n @ du_n
    partials[1] = (1.0 - w_v) * dv
    partials[2:] = -w_n[:, None] * dn
    indices = np.concatenate(([term.u, term.v], term.negatives)).astype(np.int64)
    return loss, indices, partials


def surrogate_loss_grad(state: EmbeddingState, terms: Sequence[LossTerm]) -> SparseGradient:
    """Sum of the given terms and its sparse gradient; repeated rows are accumulated."""
    dim = state.model.dim
    if not terms:
        return SparseGradient(np.empty(0, dtype=np.int64), np.empty((0, dim)), 0.0, ())
    total = 0.0
    idx_parts, grad_parts = [], []
    for term in terms:
        loss, idx, partials = term_loss_and_grad(state.coords, term, state.model.radius)
        total += loss
        idx_parts.append(idx)
        grad_parts.append(partials)
    all_idx = np.concatenate(idx_parts)
    unique, inverse = np.unique(all_idx, return_inverse=True)
    summed = np.zeros((len(unique), dim))
    np.add.at(summed, inverse, np.concatenate(grad_parts))
    return SparseGradient(unique, summed, total, tuple(terms))


def surrogate_loss(state: EmbeddingState, terms: Iterable[LossTerm]) -> float:
    coords, r = state.coords, state.model.radius
    total = 0.0
    for t in terms:
        d_uv = float(distance_arrays(coords[t.u], coords[t.v], r))
        d_un = distance_arrays(coords[t.u], coords[t.negatives], r)
        total += d_uv + float(logsumexp(-np.concatenate(([d_uv], d_un))))
    return total


def all_terms(graph: Graph) -> tuple[LossTerm, ...]:
    """One term per edge with the full denominator; edges whose N'(u) is empty are dropped."""
    pools = graph.non_neighbors
    terms = tuple(LossTerm(int(u), int(v), pools[u]) for u, v in graph.edge_array if len(pools[u]))
    skipped = len(graph.edges) - len(terms)
    if skipped:
        log.warning("%d edges have no negatives (N'(u) empty) and contribute no loss", skipped)
    return terms


def loss_full(state: EmbeddingState, graph: Graph) -> float:
    _check_sizes(state, graph)
    terms = all_terms(graph)
    if not terms:
        log.warning("graph has no loss terms; loss is 0")
        return 0.0
    dist = pairwise_distances(state.coords, state.model.radius)
    pools = graph.non_neighbors
    total = 0.0
    for t in terms:
        d_uv = dist[t.u, t.v]
        total += d_uv + float(logsumexp(-np.concatenate(([d_uv], dist[t.u, pools[t.u]]))))
    return float(total)


def loss_full_grad(state: EmbeddingState, graph: Graph) -> SparseGradient:
    _check_sizes(state, graph)
    return surrogate_loss_grad(state, all_terms(graph))


def sample_terms(graph: Graph, batch: int, negatives: int, rng: np.random.Generator) -> tuple[LossTerm, ...]:
    """`batch` edges drawn uniformly with replacement.

    negatives = 0 keeps the full N'(u); otherwise `negatives` nodes are drawn from N'(u)
    without replacement, or all of N'(u) when it is smaller.
    """
    if batch < 1:
        raise ValueError(f"batch must be >= 1, got {batch}")
    if negatives < 0:
        raise ValueError(f"negatives must be >= 0, got {negatives}")
    edges = graph.edge_array
    if not len(edges):
        raise ValueError("cannot sample terms from a graph without edges")
    pools = graph.non_neighbors
    picks = rng.integers(len(edges), size=batch)
    terms = []
    for u, v in edges[picks]:
        pool = pools[u]
        if not len(pool):
            log.warning("node %r has no negatives; term skipped", graph.nodes[u])
            continue
        if negatives == 0:
            negs = pool
        elif len(pool) < negatives:
            log.warning(
                "node %r has only %d negatives, wanted %d; using all", graph.nodes[u], len(pool), negatives
            )
            negs = pool
        else:
            negs = rng.choice(pool, size=negatives, replace=False)
        terms.append(LossTerm(int(u), int(v), negs))
    return tuple(terms)


def loss_minibatch_grad(state: EmbeddingState, graph: Graph, batch: int, rng: np.random.Generator) -> SparseGradient:
    """Gradient of the sum of `batch` sampled terms with full denominators.

    Its expectation is batch / |E| times the full-loss gradient.
    """
    _check_sizes(state, graph)
    return surrogate_loss_grad(state, sample_terms(graph, batch, 0, rng))


def loss_negative_sampling_grad(
    state: EmbeddingState, graph: Graph, batch: int, negatives: int, rng: np.random.Generator
) -> SparseGradient:
    if negatives < 1:
        raise ValueError(f"negative sampling needs negatives >= 1, got {negatives}")
    _check_sizes(state, graph)
    return surrogate_loss_grad(state, sample_terms(graph, batch, negatives, rng))
