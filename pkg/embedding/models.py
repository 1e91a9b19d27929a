"""Configuration, state and result records for embedding training."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

import settings
from disk.models import DiskDomainError, DiskModel
from optim.models import UpdateRule


class TrainConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    dim: int = Field(default=settings.EMBED_DIM, ge=1)
    lr: float = Field(default=settings.EMBED_LR, gt=0)
    negatives: int = Field(default=settings.EMBED_NEGATIVES, ge=0)
    steps: int = Field(default=settings.EMBED_STEPS, ge=0)
    batch: int = Field(default=settings.EMBED_BATCH, ge=1)
    init_range: tuple[float, float] = settings.INIT_RANGE
    clip_eps: float = Field(default=settings.CLIP_EPS, gt=0, lt=1)
    seed: int = settings.EMBED_SEED
    rule: UpdateRule = UpdateRule.GEODESIC
    radius: float = Field(default=settings.DEFAULT_RADIUS, gt=0)
    eval_every: int = Field(default=settings.EVAL_EVERY, ge=0)

    @model_validator(mode="after")
    def _init_box_inside_disk(self) -> TrainConfig:
        lo, hi = self.init_range
        if not lo < hi:
            raise ValueError(f"init_range must be increasing, got {self.init_range}")
        corner = max(abs(lo), abs(hi)) * math.sqrt(self.dim)
        if corner >= self.radius * (1.0 - self.clip_eps):
            raise ValueError(
                f"init box reaches norm {corner:.4g}, outside the disk of radius {self.radius}"
            )
        return self


@dataclass(eq=False)
class EmbeddingState:
    """Positions of every node, row i for node i. Owned by one training run."""

    model: DiskModel
    coords: np.ndarray
    seed: int = 0

    def __post_init__(self) -> None:
        self.coords = np.array(self.coords, dtype=np.float64)
        if self.coords.ndim != 2 or self.coords.shape[1] != self.model.dim:
            raise DiskDomainError(f"expected (n, {self.model.dim}) coordinates, got {self.coords.shape}")
        if not np.all(np.isfinite(self.coords)):
            raise DiskDomainError("embedding has non-finite coordinates")
        norms = np.linalg.norm(self.coords, axis=1)
        if norms.size and norms.max() >= self.model.radius:
            raise DiskDomainError(f"node {int(norms.argmax())} lies outside the open disk")

    def __len__(self) -> int:
        return len(self.coords)

    def copy(self) -> EmbeddingState:
        return EmbeddingState(self.model, self.coords.copy(), self.seed)


@dataclass(frozen=True, eq=False)
class LossTerm:
    """One summand: positive pair (u, v) and the negatives sharing its softmax denominator with v."""

    u: int
    v: int
    negatives: np.ndarray


@dataclass(frozen=True, eq=False)
class SparseGradient:
    """Euclidean partials for the rows `indices` only, plus the loss they belong to."""

    indices: np.ndarray
    partials: np.ndarray
    loss: float
    terms: tuple[LossTerm, ...] = ()

    def dense(self, n: int) -> np.ndarray:
        out = np.zeros((n, self.partials.shape[1]))
        out[self.indices] = self.partials
        return out


@dataclass(frozen=True, eq=False)
class EmbeddingTrace:
    surrogate_losses: np.ndarray
    full_losses: tuple[tuple[int, float], ...] = ()
    failed: bool = False
    failure_reason: Optional[str] = None
    clip_events: int = 0
    clip_locked: bool = False
    tail: int = field(default=settings.EMBED_TAIL, repr=False)

    @property
    def steps_taken(self) -> int:
        return len(self.surrogate_losses)

    @property
    def mean_last(self) -> float:
        """Mean surrogate loss over the last `tail` steps."""
        if not len(self.surrogate_losses):
            return math.nan
        return float(np.mean(self.surrogate_losses[-self.tail:]))


@dataclass(frozen=True)
class EvalReport:
    full_loss: float
    tau: float
    tau_base: Optional[float] = None

    def as_flat_dict(self) -> dict:
        out = {"full_loss": self.full_loss, "tau": self.tau}
        if self.tau_base is not None:
            out["tau_base"] = self.tau_base
        return out
