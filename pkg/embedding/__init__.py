"""Poincaré embeddings of graphs: loss, training and evaluation."""

from embedding.evaluate import evaluate, kendall_tau, pairwise_distance_matrix
from embedding.loss import (
    all_terms,
    loss_full,
    loss_full_grad,
    loss_minibatch_grad,
    loss_negative_sampling_grad,
    sample_terms,
    surrogate_loss,
    surrogate_loss_grad,
)
from embedding.models import EmbeddingState, EmbeddingTrace, EvalReport, LossTerm, SparseGradient, TrainConfig
from embedding.trainer import init_state, train

__all__ = [
    "EmbeddingState",
    "EmbeddingTrace",
    "EvalReport",
    "LossTerm",
    "SparseGradient",
    "TrainConfig",
    "all_terms",
    "evaluate",
    "init_state",
    "kendall_tau",
    "loss_full",
    "loss_full_grad",
    "loss_minibatch_grad",
    "loss_negative_sampling_grad",
    "pairwise_distance_matrix",
    "sample_terms",
    "surrogate_loss",
    "surrogate_loss_grad",
    "train",
]
