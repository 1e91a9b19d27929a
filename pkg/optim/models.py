"""Run configuration, traces and the objective interface for the update rules."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Protocol, runtime_checkable

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

import settings
from disk.models import EuclGradient, Point


class UpdateRule(str, Enum):
    EUCLIDEAN = "euclidean"
    NATURAL = "natural"
    GEODESIC = "geodesic"


@runtime_checkable
class Objective(Protocol):
    """A differentiable function on the disk.

    `stochastic_gradient` draws one oracle sample whose expectation is `eucl_gradient`.
    Implementations are read-only after construction, so one instance can be shared by
    runs in several threads.
    """

    def value(self, p: Point) -> float: ...

    def eucl_gradient(self, p: Point) -> EuclGradient: ...

    def stochastic_gradient(self, p: Point, rng: np.random.Generator) -> EuclGradient: ...


class RunConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    rule: UpdateRule
    learning_rate: float = Field(gt=0)
    steps: int = Field(ge=0)
    seed: int = 0
    stream: tuple[int, ...] = ()
    clip_eps: float = Field(default=settings.CLIP_EPS, gt=0, lt=1)
    stochastic: bool = False


@dataclass(frozen=True, eq=False)
class Trace:
    """Iterates (T+1 rows, or fewer when the run failed) and the loss at each of them."""

    iterates: np.ndarray
    loss_values: np.ndarray
    failed: bool = False
    failure_reason: Optional[str] = None
    clip_events: int = 0
    config: Optional[RunConfig] = field(default=None, repr=False)

    def __post_init__(self) -> None:
        if len(self.iterates) != len(self.loss_values):
            raise ValueError(
                f"trace has {len(self.iterates)} iterates but {len(self.loss_values)} losses"
            )

    @property
    def steps_taken(self) -> int:
        return max(len(self.iterates) - 1, 0)

    @property
    def final(self) -> np.ndarray:
        return self.iterates[-1]

