"""Circle-geometry construction of geodesics and equidistance curves.

Geodesics of the disk are diameters or circular arcs orthogonal to the ideal boundary,
and the points at a fixed hyperbolic distance from p form a Euclidean circle. Intersecting
the two gives the exponential map by elementary geometry. That construction is unstable
when the geodesic is nearly a diameter, so here it only serves as an independent oracle
on well-conditioned input.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

import settings
from disk.geometry import conformal_factor, h_sq_arrays, riemannian_norm
from disk.models import DegenerateGeodesicError, DiskDomainError, OracleDomainError, Point, Tangent

log = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class GeodesicCircle:
    """Circle carrying the geodesic; `center` is None for a diameter."""

    center: np.ndarray | None
    radius_sq: float
    degenerate: bool
    curvature: float


@dataclass(frozen=True, eq=False)
class EquidistanceCircle:
    center: np.ndarray
    radius_sq: float


def _unit(vec: np.ndarray, what: str) -> np.ndarray:
    norm = float(np.linalg.norm(vec))
    if norm == 0.0 or not math.isfinite(norm):
        raise DiskDomainError(f"{what} has no direction")
    return vec / norm


def _sin_angle(a: np.ndarray, b_unit: np.ndarray) -> float:
    a_norm = float(np.linalg.norm(a))
    if a_norm == 0.0:
        return 0.0
    along = float(a @ b_unit)
    return float(np.linalg.norm(a - along * b_unit)) / a_norm


def north_vertex(p: Point, g_dir) -> np.ndarray:
    """Vertex N = alpha k + beta p of the orthocenter construction, k = r g_dir.

    Solved from (p - k).(N + k) = 0 and (p + k).(N - k) = 0.
    """
    k = p.model.radius * _unit(np.asarray(g_dir, dtype=np.float64), "g_dir")
    if p.norm == 0.0 or _sin_angle(p.coords, k / p.model.radius) <= 1e-8:
        raise DegenerateGeodesicError("g_dir is parallel to p or p is the origin")
    r_sq = p.model.radius**2
    m_sq = float(k @ p.coords)
    d_sq = float(p.coords @ p.coords)
    system = np.array([[m_sq - r_sq, d_sq - m_sq], [m_sq + r_sq, d_sq + m_sq]])
    rhs = np.array([r_sq - m_sq, m_sq + r_sq])
    alpha, beta = np.linalg.solve(system, rhs)
    return alpha * k + beta * p.coords


def geodesic_curvature(p: Point, g) -> float:
    """Euclidean curvature of the geodesic through p tangent to g; 0 for diameters."""
    g = np.asarray(g, dtype=np.float64)
    if not np.all(np.isfinite(g)):
        raise DiskDomainError("direction has non-finite components")
    if not np.any(g) or p.norm == 0.0:
        return 0.0
    g_hat = g / np.linalg.norm(g)
    perp = p.coords - float(p.coords @ g_hat) * g_hat
    return float(2.0 * np.linalg.norm(perp) / h_sq_arrays(p.coords, p.model.radius))


def geodesic_circle(p: Point, v: Tangent) -> GeodesicCircle:
    """Circle through p and the north vertex N, centred at their midpoint."""
    kappa = geodesic_curvature(p, v.components)
    if kappa < settings.DEGENERATE_CURVATURE:
        return GeodesicCircle(center=None, radius_sq=math.inf, degenerate=True, curvature=kappa)
    try:
        n = north_vertex(p, v.components)
    except DegenerateGeodesicError:
        log.debug("curvature %.3g is too small for the vertex solve; treating the geodesic as a diameter", kappa)
        return GeodesicCircle(center=None, radius_sq=math.inf, degenerate=True, curvature=kappa)
    center = 0.5 * (p.coords + n)
    chord = n - p.coords
    return GeodesicCircle(center=center, radius_sq=0.25 * float(chord @ chord), degenerate=False, curvature=kappa)


def equidistance_circle(p: Point, d: float) -> EquidistanceCircle:
    """Euclidean circle of points at hyperbolic distance d from p."""
    if d < 0 or not math.isfinite(d):
        raise DiskDomainError(f"distance must be finite and non-negative, got {d}")
    r_sq = p.model.radius**2
    h_sq = float(h_sq_arrays(p.coords, p.model.radius))
    c = 2.0 * math.sinh(0.5 * d) ** 2
    denom = 2.0 * r_sq + c * h_sq
    center = 2.0 * r_sq * p.coords / denom
    radius_sq = c * (c + 2.0) * r_sq * h_sq**2 / denom**2
    return EquidistanceCircle(center=center, radius_sq=radius_sq)


@dataclass(frozen=True, eq=False)
class OracleFrame:
    """Orthonormal frame at p: e_x along the Euclidean gradient -lambda v, e_y toward p."""

    e_x: np.ndarray
    e_y: np.ndarray
    rho: float


def oracle_frame(p: Point, v: Tangent) -> OracleFrame:
    e_x = _unit(-conformal_factor(p) * v.components, "gradient")
    perp = p.coords - float(p.coords @ e_x) * e_x
    e_y = _unit(perp, "p component orthogonal to the gradient")
    rho = float(h_sq_arrays(p.coords, p.model.radius)) / (2.0 * float(np.linalg.norm(perp)))
    return OracleFrame(e_x=e_x, e_y=e_y, rho=rho)


def reference_exp_map(p: Point, v: Tangent) -> Point:
    """Exp_p(v) as the forward intersection of the geodesic and equidistance circles."""
    if p.norm == 0.0:
        raise OracleDomainError("p is the origin; the geodesic is a diameter")
    d = riemannian_norm(v)
    if d <= settings.ORACLE_MIN_NORM:
        raise OracleDomainError(f"step norm {d:.3g} is below the oracle threshold")
    sin_angle = _sin_angle(p.coords, v.components / np.linalg.norm(v.components))
    if math.asin(min(1.0, sin_angle)) <= settings.ORACLE_MIN_ANGLE:
        raise OracleDomainError("p and v are too close to parallel for the circle construction")

    frame = oracle_frame(p, v)
    rho = frame.rho
    equi = equidistance_circle(p, d)
    offset = equi.center - p.coords
    k_x = float(offset @ frame.e_x)
    k_y = float(offset @ frame.e_y)
    power = equi.radius_sq - (k_x**2 + k_y**2)

    # chord through both intersections: y = alpha + beta x
    alpha = power / (2.0 * (rho - k_y))
    beta = k_x / (rho - k_y)
    a = 1.0 + beta**2
    b_half = beta * (alpha - rho)
    c = alpha * (alpha - 2.0 * rho)
    disc = b_half**2 - a * c
    if disc < 0.0:
        if disc < -1e-12 * max(1.0, b_half**2):
            raise OracleDomainError(f"circles do not intersect (discriminant {disc:.3g})")
        disc = 0.0
    root = math.sqrt(disc)
    # forward point is the negative root, moving against the gradient direction e_x
    if b_half < 0.0:
        x = c / (-b_half + root)
    else:
        x = (-b_half - root) / a
    y = alpha + beta * x
    return Point(p.coords + x * frame.e_x + y * frame.e_y, p.model)
