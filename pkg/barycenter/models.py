"""Data models for barycenter problems and experiment records."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from disk.models import DiskDomainError, DiskModel, ModelMismatchError, Point
from optim.models import Trace, UpdateRule


@dataclass(frozen=True, eq=False)
class BarycenterProblem:
    anchors: tuple[Point, ...]
    model: DiskModel

    def __post_init__(self) -> None:
        anchors = tuple(self.anchors)
        if not anchors:
            raise DiskDomainError("a barycenter problem needs at least one anchor")
        for q in anchors:
            if q.model != self.model:
                raise ModelMismatchError(f"anchor {q} does not belong to {self.model}")
        object.__setattr__(self, "anchors", anchors)

    @classmethod
    def from_coords(cls, coords, radius: float = 1.0) -> BarycenterProblem:
        rows = np.atleast_2d(np.asarray(coords, dtype=np.float64))
        model = DiskModel(radius=radius, dim=rows.shape[1])
        return cls(tuple(Point(row, model) for row in rows), model)

    @property
    def anchor_coords(self) -> np.ndarray:
        return np.stack([q.coords for q in self.anchors])

    def __len__(self) -> int:
        return len(self.anchors)


@dataclass(frozen=True)
class BarycenterAnalysis:
    """Constants of the convergence guarantee for the geodesic rule.

    D bounds d(0, .) over the start point and the anchors; the iterates stay in that
    ball. `smoothness` is k1 + k2 + 1 and `strong_convexity` is 1, both for the
    half-squared-distance objective.
    """

    D: float
    k1: float
    k2: float
    step_size: float
    eps_rate: float
    smoothness: float
    strong_convexity: float = 1.0


@dataclass(frozen=True)
class BiasProbe:
    """One natural-vs-geodesic step from the 1-D optimum toward each of the two anchors.

    geo_* and nat_* are hyperbolic distances from p_opt. nat_*_coord are the coordinates
    reached by the natural steps, closed_* the closed-form values of the same steps.
    `right_clipped` marks an outward natural step that left the disk and was clipped.
    """

    eps: float
    lr: float
    p_opt: float
    geo_left: float
    geo_right: float
    nat_left: float
    nat_right: float
    nat_left_coord: float
    nat_right_coord: float
    closed_left: float
    closed_right: float
    right_clipped: bool

    @property
    def geo_gap(self) -> float:
        return abs(self.geo_left - self.geo_right)

    @property
    def natural_outward(self) -> bool:
        return self.nat_left < self.nat_right


@dataclass(frozen=True, eq=False)
class CellResult:
    """One (rule, learning rate) cell of the two-anchor experiment.

    `offsets` are d(0, p_t) - d(0, p_opt) over the tail of the run; positive is outward.
    """

    rule: UpdateRule
    lr: float
    trace: Trace
    offsets: np.ndarray
    mean_offset: float
    mean_abs_offset: float
    min_distance_to_opt: float
    reached: bool
    histogram: np.ndarray
    bin_edges: np.ndarray
    failure_reason: Optional[str] = None

    @property
    def failed(self) -> bool:
        return self.trace.failed

    @property
    def log10_loss(self) -> np.ndarray:
        with np.errstate(divide="ignore"):
            return np.log10(self.trace.loss_values)
