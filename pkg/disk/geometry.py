"""Metric, distance, gradient conversion and the closed-form exponential map.

Every public function has an array counterpart (``*_arrays``) working on rows of
coordinates; the Point-level functions validate and delegate to them. The arrival point
of the exponential map is computed in a grouping where every subtraction is either exact
or between quantities of different scale, so it stays accurate when p and v are
(anti)parallel, when v is tiny, and close to the boundary.
"""

from __future__ import annotations

import logging

import numpy as np

import settings
from disk.models import (
    DiskDomainError,
    DiskModel,
    EuclGradient,
    ExpMapIntermediates,
    ModelMismatchError,
    NumericalFailure,
    Point,
    Tangent,
)

log = logging.getLogger(__name__)


def sinhc(x):
    """sinh(x)/x for x >= 0; Taylor polynomial below the switch threshold."""
    x = np.asarray(x, dtype=np.float64)
    if np.any(x < 0):
        raise DiskDomainError("sinhc takes non-negative arguments")
    small = x < settings.SINHC_SWITCH
    safe = np.where(small, 1.0, x)
    x2 = x * x
    with np.errstate(over="ignore"):
        out = np.where(small, 1.0 + x2 / 6.0 + x2 * x2 / 120.0, np.sinh(safe) / safe)
    return float(out) if out.ndim == 0 else out


def asinhc(x):
    """asinh(x)/x for x >= 0."""
    x = np.asarray(x, dtype=np.float64)
    small = x < settings.SINHC_SWITCH
    safe = np.where(small, 1.0, x)
    x2 = x * x
    out = np.where(small, 1.0 - x2 / 6.0 + 3.0 * x2 * x2 / 40.0, np.arcsinh(safe) / safe)
    return float(out) if out.ndim == 0 else out


def x_coth_x(x):
    """x * coth(x) with its limit 1 at x = 0."""
    x = np.asarray(x, dtype=np.float64)
    small = np.abs(x) < settings.SINHC_SWITCH
    safe = np.where(small, 1.0, x)
    x2 = x * x
    out = np.where(small, 1.0 + x2 / 3.0 - x2 * x2 / 45.0, safe / np.tanh(safe))
    return float(out) if out.ndim == 0 else out


def _check_same_model(a: Point, b: Point) -> None:
    if a.model != b.model:
        raise ModelMismatchError(f"points live in different disks: {a.model} vs {b.model}")


def h_sq_arrays(coords, radius: float) -> np.ndarray:
    """r^2 - |p|^2 per row, as (r - |p|)(r + |p|)."""
    norms = np.linalg.norm(np.asarray(coords, dtype=np.float64), axis=-1)
    return (radius - norms) * (radius + norms)


def conformal_factor_arrays(coords, radius: float) -> np.ndarray:
    return (2.0 * radius / h_sq_arrays(coords, radius)) ** 2


def conformal_factor(p: Point) -> float:
    """lambda(p) = (2r / (r^2 - |p|^2))^2; the metric at p is lambda(p) times the identity."""
    return float(conformal_factor_arrays(p.coords, p.model.radius))


def distance_arrays(x, y, radius: float) -> np.ndarray:
    """Hyperbolic distance between broadcast rows of x and y.

    Uses d = 2 asinh(r |x - y| / sqrt(h_x h_y)), equal to the arcosh form but without
    the cancellation of arcosh near 1.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    gap = np.linalg.norm(x - y, axis=-1)
    return 2.0 * np.arcsinh(radius * gap / np.sqrt(h_sq_arrays(x, radius) * h_sq_arrays(y, radius)))


def distance(p: Point, q: Point) -> float:
    _check_same_model(p, q)
    return float(distance_arrays(p.coords, q.coords, p.model.radius))


def pairwise_distances(coords, radius: float) -> np.ndarray:
    coords = np.asarray(coords, dtype=np.float64)
    return distance_arrays(coords[:, None, :], coords[None, :, :], radius)


def riemannian_norm(v: Tangent) -> float:
    r = v.base.model.radius
    return float(2.0 * r * np.linalg.norm(v.components) / h_sq_arrays(v.base.coords, r))


def egrad_to_rgrad(g: EuclGradient) -> Tangent:
    """Riemannian gradient H_p^{-1} g; the metric is scalar so this is g / lambda(p)."""
    return Tangent(g.base, g.partials / conformal_factor(g.base))


def euclidean_tangent_length(p: Point, d: float) -> float:
    """Euclidean length of a tangent vector at p whose Riemannian norm is d."""
    r = p.model.radius
    return float(d * h_sq_arrays(p.coords, r) / (2.0 * r))


def project_arrays(coords, radius: float, eps: float = settings.CLIP_EPS) -> tuple[np.ndarray, np.ndarray]:
    """Rescale rows whose norm exceeds r(1 - eps) onto that sphere.

    Returns the projected rows and a boolean mask of the rows that moved.
    """
    coords = np.array(coords, dtype=np.float64)
    if not np.all(np.isfinite(coords)):
        raise NumericalFailure("cannot project non-finite coordinates")
    limit = radius * (1.0 - eps)
    norms = np.linalg.norm(coords, axis=-1, keepdims=True)
    clipped = norms > limit
    coords = np.where(clipped, coords * (limit / np.where(clipped, norms, 1.0)), coords)
    return coords, clipped[..., 0]


def project_into_ball(model: DiskModel, p_raw, eps: float = settings.CLIP_EPS) -> Point:
    if not 0.0 < eps < 1.0:
        raise DiskDomainError(f"clip eps must lie in (0, 1), got {eps}")
    coords, _ = project_arrays(np.asarray(p_raw, dtype=np.float64).reshape(model.dim), model.radius, eps)
    return Point(coords, model)


def exp_map_arrays(coords, steps, radius: float) -> tuple[np.ndarray, np.ndarray]:
    """Move each row of `coords` along the geodesic with initial velocity the row of `steps`.

    Returns (arrival, clamped). `clamped` marks rows whose arrival rounded onto or past
    the boundary and was pulled back to r(1 - clip_eps).
    """
    coords, steps = np.broadcast_arrays(
        np.asarray(coords, dtype=np.float64), np.asarray(steps, dtype=np.float64)
    )
    norms = np.linalg.norm(coords, axis=-1, keepdims=True)
    h_sq = (radius - norms) * (radius + norms)
    step_len = np.linalg.norm(steps, axis=-1, keepdims=True)
    moving = step_len > 0.0
    d = 2.0 * radius * step_len / h_sq

    direction = np.divide(steps, step_len, out=np.zeros_like(steps), where=moving)
    scaled = coords / radius
    # s = P.g_hat with g_hat = -direction
    s = -np.sum(scaled * direction, axis=-1, keepdims=True)
    t = np.tanh(0.5 * d)
    decay = np.exp(-d)
    one_minus_t = 2.0 * decay / (1.0 + decay)
    toward = scaled + direction
    one_minus_s = 0.5 * (np.sum(toward * toward, axis=-1, keepdims=True) + h_sq / radius**2)
    one_minus_beta = one_minus_t + t * one_minus_s
    perp = scaled + s * direction
    den = one_minus_beta**2 + t**2 * np.sum(perp * perp, axis=-1, keepdims=True)

    shift = (h_sq / radius) * t * (t * toward + one_minus_t * direction) / den
    arrival = np.where(moving, coords + shift, coords)
    if not np.all(np.isfinite(arrival)):
        raise NumericalFailure("exponential map produced non-finite coordinates")

    arrival_norms = np.linalg.norm(arrival, axis=-1, keepdims=True)
    clamped = arrival_norms >= radius
    if np.any(clamped):
        pulled, _ = project_arrays(arrival, radius)
        arrival = np.where(clamped, pulled, arrival)
    return arrival, clamped[..., 0]


def _check_base(p: Point, v: Tangent) -> None:
    _check_same_model(p, v.base)
    if v.base is not p and not np.array_equal(v.base.coords, p.coords):
        raise DiskDomainError("tangent vector is rooted at a different point")


def exp_map(p: Point, v: Tangent) -> Point:
    """Exp_p(v): the point at hyperbolic distance ||v|| along the geodesic tangent to v."""
    _check_base(p, v)
    if not np.any(v.components):
        return p
    arrival, clamped = exp_map_arrays(p.coords, v.components, p.model.radius)
    if clamped:
        log.warning(
            "exp_map arrival rounded onto the boundary (|p|=%.17g, ||v||=%.6g), clamped",
            p.norm,
            riemannian_norm(v),
        )
    return Point(arrival, p.model)


def exp_map_with_intermediates(p: Point, v: Tangent) -> tuple[Point, ExpMapIntermediates]:
    q = exp_map(p, v)
    r = p.model.radius
    d_sq = float(p.coords @ p.coords)
    h_sq = float(h_sq_arrays(p.coords, r))
    d = riemannian_norm(v)
    c = 2.0 * np.sinh(0.5 * d) ** 2
    sigma = np.sqrt(c + 2.0)
    f = float(-conformal_factor(p) * (v.components @ p.coords))
    t_factor = h_sq * sinhc(d) / (2.0 * r * sigma)
    z_sq = 2.0 * r**2 + c * (r**2 + d_sq) - 2.0 * f**2 * t_factor**2

    step_len = float(np.linalg.norm(v.components))
    direction = v.components / step_len if step_len > 0 else np.zeros_like(v.components)
    scaled = p.coords / r
    s = -float(scaled @ direction)
    t = np.tanh(0.5 * d)
    one_minus_t = 2.0 * np.exp(-d) / (1.0 + np.exp(-d))
    toward = scaled + direction
    one_minus_beta = one_minus_t + t * 0.5 * (float(toward @ toward) + h_sq / r**2)
    perp = scaled + s * direction
    den = one_minus_beta**2 + t**2 * float(perp @ perp)
    xi = -one_minus_beta / (r * sigma * den)

    values = ExpMapIntermediates(
        c=float(c),
        f=f,
        t=float(t_factor),
        h_sq=h_sq,
        z_sq=float(z_sq),
        xi=float(xi),
        arrival_distance=d,
    )
    if not all(np.isfinite(x) for x in vars(values).values()):
        raise NumericalFailure(f"non-finite exponential map intermediates: {values}")
    return q, values


def distance_gradient_arrays(x, y, radius: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """d(x, y) and its partials with respect to x and y, row-wise.

    At coincident rows the distance is not differentiable; the partials are set to 0
    there (a valid subgradient).
    """
    x, y = np.broadcast_arrays(np.asarray(x, dtype=np.float64), np.asarray(y, dtype=np.float64))
    diff = x - y
    gap = np.linalg.norm(diff, axis=-1, keepdims=True)
    hx = h_sq_arrays(x, radius)[..., None]
    hy = h_sq_arrays(y, radius)[..., None]
    root = np.sqrt(hx * hy + (radius * gap) ** 2)
    unit = np.divide(diff, gap, out=np.zeros_like(diff), where=gap > 0)
    dx = 2.0 * radius * (unit + gap * x / hx) / root
    dy = 2.0 * radius * (-unit + gap * y / hy) / root
    dist = 2.0 * np.arcsinh(radius * gap / np.sqrt(hx * hy))
    return dist[..., 0], dx, dy


def sqdist_gradient_arrays(x, anchors, radius: float) -> tuple[np.ndarray, np.ndarray]:
    """d^2(x, q) and its partials with respect to x; smooth through x = q."""
    x, anchors = np.broadcast_arrays(
        np.asarray(x, dtype=np.float64), np.asarray(anchors, dtype=np.float64)
    )
    diff = x - anchors
    gap_sq = np.sum(diff * diff, axis=-1, keepdims=True)
    hx = h_sq_arrays(x, radius)[..., None]
    hq = h_sq_arrays(anchors, radius)[..., None]
    root_h = np.sqrt(hx * hq)
    s = radius * np.sqrt(gap_sq) / root_h
    coef = 8.0 * radius**2 * asinhc(s) / (root_h * np.sqrt(hx * hq + radius**2 * gap_sq))
    grad = coef * (diff + gap_sq * x / hx)
    value = (2.0 * np.arcsinh(s)) ** 2
    return value[..., 0], grad
