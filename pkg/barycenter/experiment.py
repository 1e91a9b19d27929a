"""Stochastic two-anchor experiment: every update rule at every learning rate.

Anchors (0, 0) and (1 - eps, 0) in the unit disk, one uniformly drawn anchor per step,
start at the origin. Each (rule, lr) cell runs on its own random stream and the cells
run in a thread pool.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Iterable, Optional, Sequence

import numpy as np

import settings
from barycenter.bias import one_dim_optimum
from barycenter.models import BarycenterProblem, CellResult
from barycenter.objective import objective
from disk.geometry import distance_arrays
from disk.models import Point
from optim.models import RunConfig, Trace, UpdateRule
from optim.runner import run

log = logging.getLogger(__name__)


def two_anchor_problem(eps: float = settings.ANCHOR_EPS) -> BarycenterProblem:
    return BarycenterProblem.from_coords([[0.0, 0.0], [1.0 - eps, 0.0]], radius=1.0)


def summarise_cell(
    rule: UpdateRule,
    lr: float,
    trace: Trace,
    p_opt: Point,
    tail: int = settings.BARYCENTER_TAIL,
    bins: int = settings.OFFSET_BINS,
    clip_eps: float = settings.CLIP_EPS,
) -> CellResult:
    r = p_opt.model.radius
    origin = np.zeros(p_opt.model.dim)
    d_opt = float(distance_arrays(origin, p_opt.coords, r))
    offsets = distance_arrays(origin, trace.iterates[-tail:], r) - d_opt
    to_opt = distance_arrays(trace.iterates, p_opt.coords, r)

    clip_point = np.zeros(p_opt.model.dim)
    clip_point[0] = r * (1.0 - clip_eps)
    d_clip = float(distance_arrays(origin, clip_point, r))
    counts, edges = np.histogram(offsets, bins=bins, range=(-d_opt, d_clip - d_opt))

    return CellResult(
        rule=rule,
        lr=lr,
        trace=trace,
        offsets=offsets,
        mean_offset=float(offsets.mean()),
        mean_abs_offset=float(np.abs(offsets).mean()),
        min_distance_to_opt=float(to_opt.min()),
        reached=bool(to_opt.min() <= settings.NEAR_OPTIMUM),
        histogram=counts,
        bin_edges=edges,
        failure_reason=trace.failure_reason,
    )


def run_two_anchor_experiment(
    learning_rates: Sequence[float] = settings.BARYCENTER_RATES,
    iterations: int = settings.BARYCENTER_ITERATIONS,
    seed: int = 0,
    rules: Iterable[UpdateRule] = tuple(UpdateRule),
    eps: float = settings.ANCHOR_EPS,
    workers: Optional[int] = None,
) -> list[CellResult]:
    """One CellResult per (rule, lr), rules outermost; cell i draws from stream (i,)."""
    if any(not lr > 0 for lr in learning_rates):
        raise ValueError(f"learning rates must be positive, got {list(learning_rates)}")
    problem = two_anchor_problem(eps)
    f = objective(problem)
    p_opt = Point([one_dim_optimum(eps), 0.0], problem.model)
    p0 = problem.model.origin()
    cells = [(UpdateRule(rule), float(lr)) for rule in rules for lr in learning_rates]

    def run_cell(index: int) -> CellResult:
        rule, lr = cells[index]
        cfg = RunConfig(
            rule=rule, learning_rate=lr, steps=iterations, seed=seed, stream=(index,), stochastic=True
        )
        result = summarise_cell(rule, lr, run(f, p0, cfg), p_opt)
        log.info(
            "%s lr=%g: mean offset %.4g, min distance to optimum %.4g%s",
            rule.value, lr, result.mean_offset, result.min_distance_to_opt,
            " (failed)" if result.failed else "",
        )
        return result

    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(run_cell, range(len(cells))))
    return results
