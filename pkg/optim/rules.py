"""The three update rules.

euclidean: p - lr g, clipped back into the disk.
natural:   p - lr g / lambda(p), clipped.
geodesic:  Exp_p(-lr g / lambda(p)); the arrival is interior in exact arithmetic, so a
           clip here is reported as an anomaly.

`apply_rule` works on rows of coordinates and is what the driver loops call; the
Point-level wrappers are for single steps.
"""

from __future__ import annotations

import logging

import numpy as np

import settings
from disk.geometry import conformal_factor_arrays, exp_map_arrays, project_arrays
from disk.models import ModelMismatchError, NumericalFailure, Point
from optim.models import UpdateRule

log = logging.getLogger(__name__)


def _check_inputs(partials: np.ndarray, lr: float) -> None:
    if not lr > 0:
        raise ValueError(f"learning rate must be positive, got {lr}")
    if not np.all(np.isfinite(partials)):
        raise NumericalFailure("gradient has non-finite components")


def apply_rule(
    rule: UpdateRule,
    coords,
    partials,
    lr: float,
    radius: float,
    clip_eps: float = settings.CLIP_EPS,
) -> tuple[np.ndarray, np.ndarray]:
    """One step of `rule` for every row; returns the new rows and the mask of clipped rows."""
    coords = np.asarray(coords, dtype=np.float64)
    partials = np.asarray(partials, dtype=np.float64)
    _check_inputs(partials, lr)
    rule = UpdateRule(rule)

    if rule is UpdateRule.EUCLIDEAN:
        return project_arrays(coords - lr * partials, radius, clip_eps)

    scale = conformal_factor_arrays(coords, radius)[..., None]
    riemannian = partials / scale
    if rule is UpdateRule.NATURAL:
        return project_arrays(coords - lr * riemannian, radius, clip_eps)

    arrival, clamped = exp_map_arrays(coords, -lr * riemannian, radius)
    arrival, clipped = project_arrays(arrival, radius, clip_eps)
    return arrival, clamped | clipped


def _step(rule: UpdateRule, p: Point, g, lr: float, clip_eps: float) -> Point:
    if g.base.model != p.model:
        raise ModelMismatchError(f"gradient belongs to {g.base.model}, point to {p.model}")
    if not np.any(g.partials):
        _check_inputs(g.partials, lr)
        return p
    coords, clipped = apply_rule(rule, p.coords, g.partials, lr, p.model.radius, clip_eps)
    if rule is UpdateRule.GEODESIC and clipped:
        log.warning("geodesic step from |p|=%.17g was clipped to the disk", p.norm)
    elif clipped:
        log.debug("%s step clipped at |p|=%.17g", rule.value, p.norm)
    return Point(coords, p.model)


def euclidean_step(p: Point, g, lr: float, clip_eps: float = settings.CLIP_EPS) -> Point:
    return _step(UpdateRule.EUCLIDEAN, p, g, lr, clip_eps)


def natural_step(p: Point, g, lr: float, clip_eps: float = settings.CLIP_EPS) -> Point:
    return _step(UpdateRule.NATURAL, p, g, lr, clip_eps)


def geodesic_step(p: Point, g, lr: float, clip_eps: float = settings.CLIP_EPS) -> Point:
    """Exp_p(-lr H^{-1} g): moves exactly lr * ||H^{-1} g|| along the geodesic."""
    return _step(UpdateRule.GEODESIC, p, g, lr, clip_eps)


STEP_FUNCTIONS = {
    UpdateRule.EUCLIDEAN: euclidean_step,
    UpdateRule.NATURAL: natural_step,
    UpdateRule.GEODESIC: geodesic_step,
}
