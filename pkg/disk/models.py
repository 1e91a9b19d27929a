"""Value types of the Poincaré disk model."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

import settings


class DiskDomainError(ValueError):
    """Input outside the open disk or outside an operation's domain."""


class ModelMismatchError(ValueError):
    pass


class UnsupportedModelError(ValueError):
    pass


class DegenerateGeodesicError(ValueError):
    """The geodesic through the input is a diameter, so the circle construction has no vertex."""


class OracleDomainError(ValueError):
    """The circle-geometry oracle refuses ill-conditioned input."""


class NumericalFailure(ArithmeticError):
    pass


def frozen_vector(values, dim: int, what: str) -> np.ndarray:
    arr = np.array(values, dtype=np.float64).reshape(-1)
    if arr.shape != (dim,):
        raise DiskDomainError(f"{what}: expected {dim} components, got {arr.size}")
    if not np.all(np.isfinite(arr)):
        raise DiskDomainError(f"{what}: non-finite components {arr!r}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class DiskModel:
    radius: float = settings.DEFAULT_RADIUS
    dim: int = 2

    def __post_init__(self) -> None:
        if not (np.isfinite(self.radius) and self.radius > 0):
            raise DiskDomainError(f"disk radius must be positive, got {self.radius}")
        if int(self.dim) != self.dim or self.dim < 1:
            raise DiskDomainError(f"disk dimension must be an integer >= 1, got {self.dim}")

    def origin(self) -> Point:
        return Point(np.zeros(self.dim), self)


@dataclass(frozen=True, eq=False)
class Point:
    coords: np.ndarray
    model: DiskModel

    def __post_init__(self) -> None:
        coords = frozen_vector(self.coords, self.model.dim, "point")
        object.__setattr__(self, "coords", coords)
        norm = float(np.linalg.norm(coords))
        if norm >= self.model.radius:
            raise DiskDomainError(
                f"point with norm {norm!r} is not inside the open disk of radius {self.model.radius}"
            )

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.coords))

    def __repr__(self) -> str:
        return f"Point({self.coords.tolist()}, r={self.model.radius})"


@dataclass(frozen=True, eq=False)
class Tangent:
    base: Point
    components: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "components", frozen_vector(self.components, self.base.model.dim, "tangent")
        )


@dataclass(frozen=True, eq=False)
class EuclGradient:
    """Partial derivatives of an objective at `base`, in ambient coordinates."""

    base: Point
    partials: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "partials", frozen_vector(self.partials, self.base.model.dim, "gradient")
        )


@dataclass(frozen=True)
class ExpMapIntermediates:
    """Scalars of the closed-form exponential map at one (p, v) pair.

    c = cosh d - 1, f = g.p with g = -lambda(p) v, t = h_sq sinhc(d) / (2 r sqrt(c + 2)),
    h_sq = r^2 - |p|^2, z_sq = 2 r^2 + c (r^2 + |p|^2) - 2 f^2 t^2, xi the weight of the
    arrival point on the step direction, arrival_distance = ||v||.
    """

    c: float
    f: float
    t: float
    h_sq: float
    z_sq: float
    xi: float
    arrival_distance: float
