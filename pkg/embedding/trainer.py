"""Training loop: sample terms, take one update-rule step on every touched row."""

from __future__ import annotations

import logging
import math
import time

import numpy as np

import settings
from disk.models import DiskModel, NumericalFailure
from embedding.loss import loss_full, sample_terms, surrogate_loss_grad
from embedding.models import EmbeddingState, EmbeddingTrace, TrainConfig
from graphs.models import Graph
from optim.models import UpdateRule
from optim.rules import apply_rule
from optim.runner import on_clip_sphere, stream_rng

log = logging.getLogger(__name__)

INIT_STREAM = 0
SAMPLER_STREAM = 1


def init_state(graph: Graph, cfg: TrainConfig) -> EmbeddingState:
    """Every coordinate uniform in cfg.init_range, drawn from the init stream of cfg.seed."""
    rng = stream_rng(cfg.seed, INIT_STREAM)
    lo, hi = cfg.init_range
    coords = rng.uniform(lo, hi, size=(len(graph), cfg.dim))
    return EmbeddingState(DiskModel(radius=cfg.radius, dim=cfg.dim), coords, seed=cfg.seed)


def train(graph: Graph, cfg: TrainConfig, state: EmbeddingState | None = None) -> tuple[EmbeddingState, EmbeddingTrace]:
    """Run cfg.steps updates from `state` (or a fresh init_state).

    All rows touched by a step move together, using gradients taken before the step.
    NaN/Inf stops the run and returns the last finite state with `failed` set; ending
    with at least half the points on the clip sphere is reported as clip-lock.
    """
    state = state.copy() if state is not None else init_state(graph, cfg)
    if len(state) != len(graph):
        raise ValueError(f"state has {len(state)} rows, graph has {len(graph)} nodes")
    rng = stream_rng(cfg.seed, SAMPLER_STREAM)
    radius = state.model.radius
    surrogate: list[float] = []
    full: list[tuple[int, float]] = []
    clip_events = 0
    failure: str | None = None

    log.info(
        "training %d nodes / %d edges: rule=%s lr=%g dim=%d negatives=%d steps=%d",
        len(graph), len(graph.edges), cfg.rule.value, cfg.lr, cfg.dim, cfg.negatives, cfg.steps,
    )
    started = time.monotonic()
    for step in range(1, cfg.steps + 1):
        terms = sample_terms(graph, cfg.batch, cfg.negatives, rng)
        grad = surrogate_loss_grad(state, terms)
        if not math.isfinite(grad.loss):
            failure = f"step {step}: surrogate loss is {grad.loss}"
            break
        try:
            rows, clipped = apply_rule(
                cfg.rule, state.coords[grad.indices], grad.partials, cfg.lr, radius, cfg.clip_eps
            )
        except NumericalFailure as e:
            failure = f"step {step}: {e}"
            break
        state.coords[grad.indices] = rows
        clip_events += int(clipped.sum())
        surrogate.append(grad.loss)
        if cfg.eval_every and step % cfg.eval_every == 0:
            full.append((step, loss_full(state, graph)))
            log.debug("step %d: full loss %.6g", step, full[-1][1])

    if failure is None and (not full or full[-1][0] != cfg.steps):
        full.append((cfg.steps, loss_full(state, graph)))

    locked_fraction = float(on_clip_sphere(state.coords, radius, cfg.clip_eps).mean()) if len(state) else 0.0
    clip_locked = locked_fraction >= settings.CLIP_LOCK_FRACTION
    if failure is None and clip_locked:
        failure = f"clip-lock: {locked_fraction:.0%} of points on the clip sphere"

    trace = EmbeddingTrace(
        surrogate_losses=np.array(surrogate),
        full_losses=tuple(full),
        failed=failure is not None,
        failure_reason=failure,
        clip_events=clip_events,
        clip_locked=clip_locked,
    )
    if failure is not None:
        log.warning("training failed (rule=%s lr=%g): %s", cfg.rule.value, cfg.lr, failure)
    if clip_events and cfg.rule is UpdateRule.GEODESIC:
        log.warning("geodesic training clipped %d rows", clip_events)
    log.info(
        "done in %.1fs: mean loss over last %d steps %.6g",
        time.monotonic() - started, trace.tail, trace.mean_last,
    )
    return state, trace
