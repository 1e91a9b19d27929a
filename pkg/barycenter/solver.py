"""Deterministic barycenter solver, its convergence constants and a brute-force reference."""

from __future__ import annotations

import logging
import math
from typing import Optional

import numpy as np
from scipy.optimize import minimize

import settings
from barycenter.models import BarycenterAnalysis, BarycenterProblem
from barycenter.objective import BarycenterObjective
from disk.geometry import distance_arrays, sqdist_gradient_arrays, x_coth_x
from disk.models import Point
from optim.models import RunConfig, Trace, UpdateRule
from optim.runner import run

log = logging.getLogger(__name__)

# objective normalisation under which the analysis constants hold
ANALYSIS_SCALE = 0.5


def analysis(problem: BarycenterProblem, p0: Optional[Point] = None) -> BarycenterAnalysis:
    model = problem.model
    p0 = p0 if p0 is not None else model.origin()
    origin = np.zeros(model.dim)
    k2 = float(distance_arrays(origin, problem.anchor_coords, model.radius).max())
    D = max(float(distance_arrays(origin, p0.coords, model.radius)), k2)
    k1 = D
    return BarycenterAnalysis(
        D=D,
        k1=k1,
        k2=k2,
        step_size=1.0 / (2.0 * D + 1.0),
        eps_rate=min(1.0 / x_coth_x(D), 1.0 / (2.0 * D + 1.0)),
        smoothness=k1 + k2 + 1.0,
    )


def gap_bound(a: BarycenterAnalysis, t: int) -> float:
    """Upper bound on f(p_t) - f(p_opt) after t geodesic steps, for t >= 2."""
    if t < 2:
        raise ValueError(f"the bound starts at t = 2, got {t}")
    return (1.0 - a.eps_rate) ** (t - 2) * a.D**3


def solve_deterministic(
    problem: BarycenterProblem,
    p0: Optional[Point] = None,
    steps: int = settings.SOLVE_STEPS,
) -> Trace:
    """Full-gradient geodesic descent on the half-squared-distance objective.

    The step size is the one from `analysis`; iterates leaving the ball of radius D
    around the origin are logged.
    """
    p0 = p0 if p0 is not None else problem.model.origin()
    a = analysis(problem, p0)
    cfg = RunConfig(rule=UpdateRule.GEODESIC, learning_rate=a.step_size, steps=steps)
    trace = run(BarycenterObjective(problem, scale=ANALYSIS_SCALE), p0, cfg)

    radii = distance_arrays(np.zeros(problem.model.dim), trace.iterates, problem.model.radius)
    outside = radii > a.D * (1.0 + 1e-9) + 1e-12
    if outside.any():
        log.warning(
            "%d iterates left the ball d(0, .) <= D = %.6g (max %.6g)",
            int(outside.sum()), a.D, float(radii.max()),
        )
    log.info("solved %d-anchor problem: D=%.4g lr=%.4g final f=%.6g",
             len(problem), a.D, a.step_size, trace.loss_values[-1])
    return trace


def _tangent_chart(w: np.ndarray, radius: float) -> tuple[np.ndarray, np.ndarray]:
    """Point at hyperbolic distance |w| from the origin in direction w, and d(point)/dw."""
    rho = float(np.linalg.norm(w))
    dim = w.size
    if rho < 1e-12:
        return 0.5 * radius * w, 0.5 * radius * np.eye(dim)
    w_hat = w / rho
    along = radius * math.tanh(0.5 * rho) / rho
    radial = 0.5 * radius / math.cosh(0.5 * rho) ** 2
    jac = along * np.eye(dim) + (radial - along) * np.outer(w_hat, w_hat)
    return along * w, jac


def brute_force_minimum(problem: BarycenterProblem, scale: float = ANALYSIS_SCALE) -> tuple[Point, float]:
    """Global minimum of scale * mean d^2 by grid search plus BFGS refinement.

    The search runs in geodesic polar coordinates around the origin, where the objective
    is smooth and unconstrained.
    """
    model = problem.model
    r = model.radius
    anchors = problem.anchor_coords

    def value_and_grad(w: np.ndarray) -> tuple[float, np.ndarray]:
        x, jac = _tangent_chart(w, r)
        values, grads = sqdist_gradient_arrays(x, anchors, r)
        return scale * float(values.mean()), scale * (jac.T @ grads.mean(axis=0))

    norms = np.linalg.norm(anchors, axis=1)
    rho = 2.0 * np.arctanh(norms / r)
    charts = np.divide(anchors * rho[:, None], norms[:, None], out=np.zeros_like(anchors), where=norms[:, None] > 0)
    starts = [np.zeros(model.dim), charts.mean(axis=0), *charts]
    if model.dim == 2:
        reach = float(rho.max()) + 1.0
        axis = np.linspace(-reach, reach, 41)
        grid = np.array(np.meshgrid(axis, axis)).reshape(2, -1).T
        starts.extend(grid)
    ranked = sorted(starts, key=lambda w: value_and_grad(w)[0])[:3]

    best_w, best_f = None, math.inf
    for w0 in ranked:
        result = minimize(fun=value_and_grad, x0=w0, jac=True, method="BFGS", options={"gtol": 1e-12})
        if result.fun < best_f:
            best_w, best_f = result.x, float(result.fun)
    point = Point(_tangent_chart(best_w, r)[0], model)
    log.debug("brute-force minimum %.17g at %s", best_f, point)
    return point, best_f
