import math

import numpy as np
import pytest

from disk.models import DiskModel, Point, Tangent
from graphs.builders import complete_binary_tree
from graphs.models import TreeMode


@pytest.fixture
def unit_disk():
    return DiskModel(radius=1.0, dim=2)


@pytest.fixture
def rng():
    return np.random.default_rng(42)


def random_point(rng, model, max_distance=3.0):
    """Point whose hyperbolic distance from the origin is uniform in [0, max_distance]."""
    direction = rng.standard_normal(model.dim)
    direction /= np.linalg.norm(direction)
    rho = rng.uniform(0.0, max_distance)
    return Point(model.radius * math.tanh(0.5 * rho) * direction, model)


def tangent_with_norm(p, direction, norm):
    """Tangent at p along `direction` with Riemannian norm `norm`."""
    direction = np.asarray(direction, dtype=np.float64)
    direction = direction / np.linalg.norm(direction)
    h_sq = (p.model.radius - p.norm) * (p.model.radius + p.norm)
    return Tangent(p, direction * norm * h_sq / (2.0 * p.model.radius))


@pytest.fixture
def tree5():
    return complete_binary_tree(5, TreeMode.UNDIRECTED)


@pytest.fixture
def tree2():
    return complete_binary_tree(2, TreeMode.UNDIRECTED)
