"""Driver loop for the update rules."""

from __future__ import annotations

import logging
import math

import numpy as np

from disk.models import DiskDomainError, NumericalFailure, Point
from optim.models import Objective, RunConfig, Trace, UpdateRule
from optim.rules import apply_rule

log = logging.getLogger(__name__)

# relative slack below the clip sphere that still counts as sitting on it
_BOUNDARY_SLACK = 1e-12


def stream_rng(seed: int, *stream: int) -> np.random.Generator:
    """Independent PCG64 generator for one run; `stream` is the spawn key."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=tuple(stream)))


def on_clip_sphere(coords: np.ndarray, radius: float, clip_eps: float) -> np.ndarray:
    norms = np.linalg.norm(np.atleast_2d(coords), axis=-1)
    return norms >= radius * (1.0 - clip_eps) * (1.0 - _BOUNDARY_SLACK)


def run(objective: Objective, p0: Point, cfg: RunConfig) -> Trace:
    """Iterate `cfg.rule` from p0 for `cfg.steps` steps.

    A NaN/Inf anywhere truncates the trace at the last good iterate and sets `failed`;
    a run that ends on the clip sphere is flagged as failed with reason "boundary" but
    keeps its full trace.
    """
    rng = stream_rng(cfg.seed, *cfg.stream)
    model = p0.model
    p = p0
    iterates = [p0.coords]
    losses = [float(objective.value(p0))]
    clip_events = 0
    failure: str | None = None

    for step in range(cfg.steps):
        try:
            if cfg.stochastic:
                grad = objective.stochastic_gradient(p, rng)
            else:
                grad = objective.eucl_gradient(p)
            coords, clipped = apply_rule(
                cfg.rule, p.coords, grad.partials, cfg.learning_rate, model.radius, cfg.clip_eps
            )
            p = Point(coords, model)
            loss = float(objective.value(p))
            if not math.isfinite(loss):
                raise NumericalFailure(f"loss is {loss}")
        except (NumericalFailure, DiskDomainError) as e:
            failure = f"step {step + 1}: {e}"
            break
        clip_events += int(np.sum(clipped))
        iterates.append(p.coords)
        losses.append(loss)

    if failure is None and on_clip_sphere(p.coords, model.radius, cfg.clip_eps).all():
        failure = "boundary"

    if clip_events and cfg.rule is UpdateRule.GEODESIC:
        log.warning("geodesic run clipped %d times (lr=%g)", clip_events, cfg.learning_rate)
    if failure is not None:
        log.warning(
            "%s run failed at lr=%g after %d steps: %s",
            cfg.rule.value, cfg.learning_rate, len(iterates) - 1, failure,
        )
    else:
        log.debug("%s run finished: %d steps, final loss %.6g", cfg.rule.value, cfg.steps, losses[-1])

    return Trace(
        iterates=np.array(iterates),
        loss_values=np.array(losses),
        failed=failure is not None,
        failure_reason=failure,
        clip_events=clip_events,
        config=cfg,
    )
