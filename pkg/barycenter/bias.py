"""One-dimensional two-anchor problem: the exact optimum and the step-bias probe.

With anchors 0 and 1 - eps on the unit interval, the optimum p_opt is the hyperbolic
midpoint. From p_opt, a geodesic step toward either anchor covers the same hyperbolic
distance, while a natural step covers the same Euclidean distance and so travels further
outward than inward.
"""

from __future__ import annotations

import logging
import math

import settings
from barycenter.models import BiasProbe
from barycenter.objective import squared_distance_objective
from disk.geometry import distance, euclidean_tangent_length
from disk.models import DiskDomainError, DiskModel, Point
from optim.rules import geodesic_step, natural_step

log = logging.getLogger(__name__)


def _effective_eps(eps: float) -> float:
    """eps as seen through the representable anchor coordinate 1 - eps."""
    if not 0.0 < eps < 1.0:
        raise DiskDomainError(f"eps must lie in (0, 1), got {eps}")
    return 1.0 - (1.0 - eps)


def one_dim_optimum(eps: float) -> float:
    """Minimiser of d^2(p, 0) + d^2(p, 1 - eps) on the unit interval."""
    e = _effective_eps(eps)
    return (1.0 - math.sqrt((2.0 - e) * e)) / (1.0 - e)


def natural_closed_forms(eps: float, lr: float) -> tuple[float, float]:
    """Coordinates reached by natural steps from p_opt on f0 = d^2(., 0)/2 and f1 = d^2(., 1 - eps)/2.

    A tangent vector of Riemannian length d at p has Euclidean length d (1 - p^2) / 2, so
    the steps are p_opt -/+ lr * d * (1 - p_opt^2) / 2 with d the distance to each anchor.
    """
    p = one_dim_optimum(eps)
    at = Point([p], DiskModel(radius=1.0, dim=1))
    d_opt = 2.0 * math.atanh(p)
    d_far = 2.0 * math.atanh(1.0 - _effective_eps(eps))
    return p - lr * euclidean_tangent_length(at, d_opt), p + lr * euclidean_tangent_length(at, d_far - d_opt)


def bias_probe(eps: float, lr: float, clip_eps: float = settings.CLIP_EPS) -> BiasProbe:
    if not lr > 0:
        raise ValueError(f"learning rate must be positive, got {lr}")
    model = DiskModel(radius=1.0, dim=1)
    p_opt = Point([one_dim_optimum(eps)], model)
    f0 = squared_distance_objective(model.origin(), scale=0.5)
    f1 = squared_distance_objective(Point([1.0 - eps], model), scale=0.5)
    g0 = f0.eucl_gradient(p_opt)
    g1 = f1.eucl_gradient(p_opt)

    geo_l = geodesic_step(p_opt, g0, lr, clip_eps)
    geo_r = geodesic_step(p_opt, g1, lr, clip_eps)
    nat_l = natural_step(p_opt, g0, lr, clip_eps)
    nat_r = natural_step(p_opt, g1, lr, clip_eps)
    closed_l, closed_r = natural_closed_forms(eps, lr)
    right_clipped = closed_r >= 1.0 - clip_eps
    if right_clipped:
        log.info("outward natural step at eps=%g lr=%g leaves the disk; clipped", eps, lr)

    return BiasProbe(
        eps=eps,
        lr=lr,
        p_opt=float(p_opt.coords[0]),
        geo_left=distance(p_opt, geo_l),
        geo_right=distance(p_opt, geo_r),
        nat_left=distance(p_opt, nat_l),
        nat_right=distance(p_opt, nat_r),
        nat_left_coord=float(nat_l.coords[0]),
        nat_right_coord=float(nat_r.coords[0]),
        closed_left=closed_l,
        closed_right=closed_r,
        right_clipped=bool(right_clipped),
    )
