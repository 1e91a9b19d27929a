"""Second-order diagnostics on the unit disk.

Christoffel symbols of the conformal metric, the Riemannian Hessian assembled from
finite-difference second partials, the closed-form Euclidean Hessian spectrum of the
squared distance to the origin, and a probe that measures the geodesic
convexity/smoothness ratio along a single step.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Callable

import numpy as np

import settings
from disk.geometry import conformal_factor, exp_map, riemannian_norm
from disk.models import DiskDomainError, DiskModel, NumericalFailure, Point, Tangent, UnsupportedModelError

if TYPE_CHECKING:
    from optim.models import Objective

log = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class HessianReport:
    """Coordinate Hessian tensor and the eigenvalues of H_p^{-1} Hess f, ascending."""

    matrix: np.ndarray
    eigenvalues: np.ndarray


def _require_unit(model: DiskModel) -> None:
    if model.radius != 1.0:
        raise UnsupportedModelError(f"diagnostics are defined on the unit disk, got radius {model.radius}")


def _grad_log_factor(p: Point) -> np.ndarray:
    return 2.0 * p.coords / (1.0 - float(p.coords @ p.coords))


def christoffel(p: Point, i: int, j: int, k: int) -> float:
    """Gamma^k_ij at p (0-based indices)."""
    _require_unit(p.model)
    dphi = _grad_log_factor(p)
    value = 0.0
    if i == k:
        value += dphi[j]
    if j == k:
        value += dphi[i]
    if i == j:
        value -= dphi[k]
    return float(value)


def christoffel_tensor(p: Point) -> np.ndarray:
    """All symbols at once, indexed gamma[k, i, j]."""
    _require_unit(p.model)
    dphi = _grad_log_factor(p)
    eye = np.eye(p.model.dim)
    return (
        np.einsum("ki,j->kij", eye, dphi)
        + np.einsum("kj,i->kij", eye, dphi)
        - np.einsum("ij,k->kij", eye, dphi)
    )


def finite_difference_gradient(func: Callable[[np.ndarray], float], x, h: float = 1e-6) -> np.ndarray:
    """Central-difference gradient of a scalar function of a coordinate vector."""
    x = np.asarray(x, dtype=np.float64)
    grad = np.empty_like(x)
    for j in range(x.size):
        step = np.zeros_like(x)
        step[j] = h
        grad[j] = (func(x + step) - func(x - step)) / (2.0 * h)
    return grad


def riemannian_hessian(f: Objective, p: Point, h: float = settings.FD_STEP) -> HessianReport:
    _require_unit(p.model)
    if not 1e-6 <= h <= 1e-3:
        raise ValueError(f"finite-difference step must lie in [1e-6, 1e-3], got {h}")
    n = p.model.dim
    x = p.coords

    def value(offset: np.ndarray) -> float:
        out = float(f.value(Point(x + offset, p.model)))
        if not math.isfinite(out):
            raise NumericalFailure(f"objective is not finite near {x.tolist()}")
        return out

    centre = value(np.zeros(n))
    second = np.empty((n, n))
    basis = np.eye(n) * h
    for i in range(n):
        second[i, i] = (value(basis[i]) - 2.0 * centre + value(-basis[i])) / h**2
        for j in range(i + 1, n):
            mixed = (
                value(basis[i] + basis[j])
                - value(basis[i] - basis[j])
                - value(-basis[i] + basis[j])
                + value(-basis[i] - basis[j])
            ) / (4.0 * h**2)
            second[i, j] = second[j, i] = mixed

    partials = f.eucl_gradient(p).partials
    matrix = second - np.einsum("kij,k->ij", christoffel_tensor(p), partials)
    matrix = 0.5 * (matrix + matrix.T)
    eigenvalues = np.linalg.eigvalsh(matrix / conformal_factor(p))
    return HessianReport(matrix=matrix, eigenvalues=eigenvalues)


def euclidean_hessian_sqdist_eigs(p: Point) -> tuple[float, float]:
    """Eigenvalues of the coordinate Hessian of d^2(0, .) at p: (tangential, radial).

    tangential = 4d / (s(1 - s^2)) with multiplicity n - 1, radial = 8(1 + ds) / (1 - s^2)^2,
    s = |p|, d = d(0, p). Both tend to 8 at the origin and tangential <= radial.
    """
    _require_unit(p.model)
    s = p.norm
    if s == 0.0:
        raise DiskDomainError("the closed form is singular at the origin")
    d = 2.0 * math.atanh(s)
    h = (1.0 - s) * (1.0 + s)
    return 4.0 * d / (s * h), 8.0 * (1.0 + d * s) / h**2


def convexity_smoothness_probe(f: Objective, p: Point, v: Tangent) -> float:
    """|f(Exp_p v) - f(p) - <grad f, v>_p| / (||v||^2 / 2).

    A geodesically mu-strongly convex, L-smooth f gives mu <= probe <= L.
    """
    norm = riemannian_norm(v)
    if norm == 0.0:
        raise DiskDomainError("probe needs a non-zero step")
    q = exp_map(p, v)
    linear = float(v.components @ f.eucl_gradient(p).partials)
    return abs(f.value(q) - f.value(p) - linear) / (0.5 * norm**2)
