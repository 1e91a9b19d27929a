"""The barycenter objective f(p) = scale * mean_i d^2(p, q_i) and its oracles."""

from __future__ import annotations

import logging

import numpy as np

from barycenter.models import BarycenterProblem
from disk.geometry import distance_arrays, sqdist_gradient_arrays
from disk.models import EuclGradient, ModelMismatchError, Point

log = logging.getLogger(__name__)


class BarycenterObjective:
    """Mean squared distance to the anchors, times `scale`.

    scale 1 is the plain Karcher objective; scale 0.5 is the normalisation under which the
    objective is 1-strongly convex and the analysis constants apply.
    """

    def __init__(self, problem: BarycenterProblem, scale: float = 1.0):
        if not scale > 0:
            raise ValueError(f"objective scale must be positive, got {scale}")
        self.problem = problem
        self.scale = float(scale)
        self._anchors = problem.anchor_coords
        self._anchors.setflags(write=False)

    def _check(self, p: Point) -> None:
        if p.model != self.problem.model:
            raise ModelMismatchError(f"{p} is not in {self.problem.model}")

    def value(self, p: Point) -> float:
        self._check(p)
        d = distance_arrays(p.coords, self._anchors, self.problem.model.radius)
        return self.scale * float(np.mean(d * d))

    def eucl_gradient(self, p: Point) -> EuclGradient:
        self._check(p)
        _, grads = sqdist_gradient_arrays(p.coords, self._anchors, self.problem.model.radius)
        return EuclGradient(p, self.scale * grads.mean(axis=0))

    def stochastic_gradient(self, p: Point, rng: np.random.Generator) -> EuclGradient:
        """Gradient of scale * d^2(p, q_i) for one uniformly drawn anchor."""
        self._check(p)
        i = int(rng.integers(len(self._anchors)))
        _, grad = sqdist_gradient_arrays(p.coords, self._anchors[i], self.problem.model.radius)
        return EuclGradient(p, self.scale * grad)


def objective(problem: BarycenterProblem) -> BarycenterObjective:
    return BarycenterObjective(problem, scale=1.0)


def squared_distance_objective(anchor: Point, scale: float = 0.5) -> BarycenterObjective:
    """scale * d^2(., anchor) as a one-anchor problem."""
    return BarycenterObjective(BarycenterProblem((anchor,), anchor.model), scale=scale)
