"""Euclidean, natural and geodesic gradient updates and their driver loop."""

from optim.models import Objective, RunConfig, Trace, UpdateRule
from optim.rules import apply_rule, euclidean_step, geodesic_step, natural_step
from optim.runner import run, stream_rng

__all__ = [
    "Objective",
    "RunConfig",
    "Trace",
    "UpdateRule",
    "apply_rule",
    "euclidean_step",
    "geodesic_step",
    "natural_step",
    "run",
    "stream_rng",
]
