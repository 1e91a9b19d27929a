"""Randomised self-test of the exponential map.

Three suites: the distance identity d(p, Exp_p v) = ||v|| on a large random sample
(exactly parallel p and v included, |p| up to r (1 - 1e-8)), agreement with the
circle-geometry oracle on well-conditioned input, and a near-colinear stress grid.

float64 cannot place an arrival q much closer to the boundary than about 1e-7 (relative)
without a rounding error that the distance amplifies past 1e-9. Those arrivals are
counted as unrepresentable and only checked to stay inside the disk.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

import settings
from disk.geometry import distance_arrays, exp_map, exp_map_arrays, h_sq_arrays, riemannian_norm
from disk.models import DiskModel, Point, Tangent
from disk.reference import equidistance_circle, geodesic_circle, reference_exp_map
from optim.runner import stream_rng

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SuiteResult:
    name: str
    checked: int
    failed: int
    max_error: float
    tolerance: float
    unrepresentable: int = 0

    @property
    def passed(self) -> bool:
        return self.failed == 0 and self.checked > 0


@dataclass(frozen=True)
class SelfTestReport:
    samples: int
    seed: int
    suites: tuple[SuiteResult, ...]

    @property
    def ok(self) -> bool:
        return all(s.passed for s in self.suites)

    def as_flat_dict(self) -> dict:
        out: dict = {"samples": self.samples, "seed": self.seed, "ok": self.ok}
        for s in self.suites:
            out[f"{s.name}.checked"] = s.checked
            out[f"{s.name}.failed"] = s.failed
            out[f"{s.name}.max_error"] = s.max_error
            out[f"{s.name}.tolerance"] = s.tolerance
            out[f"{s.name}.unrepresentable"] = s.unrepresentable
            out[f"{s.name}.passed"] = s.passed
        return out


def _random_directions(rng: np.random.Generator, count: int, dim: int) -> np.ndarray:
    raw = rng.standard_normal((count, dim))
    return raw / np.linalg.norm(raw, axis=1, keepdims=True)


def sample_points(rng: np.random.Generator, model: DiskModel, count: int, min_radius: float, max_radius: float) -> np.ndarray:
    """Points with hyperbolic distance from the origin uniform in [min_radius, max_radius]."""
    rho = rng.uniform(min_radius, max_radius, size=(count, 1))
    return model.radius * np.tanh(0.5 * rho) * _random_directions(rng, count, model.dim)


def steps_with_norm(coords: np.ndarray, directions: np.ndarray, norms: np.ndarray, radius: float) -> np.ndarray:
    """Euclidean step vectors along `directions` whose Riemannian norms are `norms`."""
    return directions * (norms * h_sq_arrays(coords, radius) / (2.0 * radius))[:, None]


def boundary_gaps(coords: np.ndarray, radius: float) -> np.ndarray:
    """1 - |x| / r per row."""
    return 1.0 - np.linalg.norm(coords, axis=-1) / radius


def identity_check(coords: np.ndarray, steps: np.ndarray, radius: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Relative distance-identity errors, a failure mask, and the rows whose arrival is unrepresentable.

    An arrival within r * arrival_gap of the boundary carries a coordinate rounding error
    that the distance amplifies by about 1 / (1 - |q|/r); such rows only have to land inside
    the disk with a finite error.
    """
    actual = 2.0 * radius * np.linalg.norm(steps, axis=1) / h_sq_arrays(coords, radius)
    arrival, _ = exp_map_arrays(coords, steps, radius)
    errors = np.abs(distance_arrays(coords, arrival, radius) - actual) / np.maximum(1.0, actual)
    gaps = boundary_gaps(arrival, radius)
    unrepresentable = gaps < settings.SELFTEST_ARRIVAL_GAP
    bad = ~np.isfinite(errors) | (gaps <= 0.0)
    bad |= ~unrepresentable & (errors > settings.SELFTEST_DISTANCE_TOL)
    return errors, bad, unrepresentable


def _max_error(errors: np.ndarray, checked: np.ndarray) -> float:
    kept = errors[checked & np.isfinite(errors)]
    return float(kept.max()) if kept.size else math.inf


def distance_identity_suite(rng: np.random.Generator, model: DiskModel, samples: int) -> SuiteResult:
    """d(p, Exp_p v) = ||v|| for |p| up to r (1 - boundary_gap) and ||v|| from 1e-12 to 10."""
    r = model.radius
    max_rho = 2.0 * math.atanh(1.0 - settings.SELFTEST_BOUNDARY_GAP)
    coords = sample_points(rng, model, samples, 0.0, max_rho)
    norms = 10.0 ** rng.uniform(-12.0, 1.0, size=samples)
    directions = _random_directions(rng, samples, model.dim)
    colinear = rng.random(samples) < 0.1
    signs = np.where(rng.random(samples) < 0.5, -1.0, 1.0)
    p_norms = np.linalg.norm(coords, axis=1, keepdims=True)
    along_p = signs[:, None] * coords / np.where(p_norms > 0, p_norms, 1.0)
    directions = np.where(colinear[:, None] & (p_norms > 0), along_p, directions)

    steps = steps_with_norm(coords, directions, norms, r)
    errors, bad, unrepresentable = identity_check(coords, steps, r)
    if unrepresentable.any():
        log.info(
            "distance_identity: %d of %d arrivals within %.1g of the boundary, checked for containment only",
            int(unrepresentable.sum()), samples, settings.SELFTEST_ARRIVAL_GAP,
        )
    return SuiteResult(
        name="distance_identity",
        checked=samples,
        failed=int(bad.sum()),
        max_error=_max_error(errors, ~unrepresentable),
        tolerance=settings.SELFTEST_DISTANCE_TOL,
        unrepresentable=int(unrepresentable.sum()),
    )


def _well_conditioned(rng: np.random.Generator, model: DiskModel, count: int) -> list[tuple[Point, Tangent]]:
    out: list[tuple[Point, Tangent]] = []
    min_sin = math.sin(0.1)
    while len(out) < count:
        coords = sample_points(rng, model, 1, 0.2, 3.0)[0]
        direction = _random_directions(rng, 1, model.dim)[0]
        p_hat = coords / np.linalg.norm(coords)
        if np.linalg.norm(direction - (direction @ p_hat) * p_hat) < min_sin:
            continue
        norm = rng.uniform(0.05, 3.0)
        step = steps_with_norm(coords[None, :], direction[None, :], np.array([norm]), model.radius)[0]
        p = Point(coords, model)
        out.append((p, Tangent(p, step)))
    return out


def oracle_suites(rng: np.random.Generator, model: DiskModel, samples: int) -> tuple[SuiteResult, ...]:
    cases = _well_conditioned(rng, model, samples)
    oracle_err, circle_err, equi_err = [], [], []
    for p, v in cases:
        q = exp_map(p, v).coords
        oracle_err.append(float(np.linalg.norm(q - reference_exp_map(p, v).coords)))
        circle = geodesic_circle(p, v)
        circle_err.append(abs(float(np.linalg.norm(q - circle.center)) - math.sqrt(circle.radius_sq)))
        equi = equidistance_circle(p, riemannian_norm(v))
        equi_err.append(abs(float(np.linalg.norm(q - equi.center)) - math.sqrt(equi.radius_sq)))

    def summarise(name: str, errors: list[float], tol: float) -> SuiteResult:
        arr = np.asarray(errors)
        return SuiteResult(name, arr.size, int(np.sum(~(arr <= tol))), float(arr.max()), tol)

    return (
        summarise("oracle_equivalence", oracle_err, settings.SELFTEST_ORACLE_TOL),
        summarise("geodesic_circle", circle_err, settings.SELFTEST_CIRCLE_TOL),
        summarise("equidistance_circle", equi_err, settings.SELFTEST_CIRCLE_TOL),
    )


def colinear_suite(model: DiskModel) -> SuiteResult:
    r = model.radius
    rows, dirs, norms = [], [], []
    other = np.zeros(model.dim)
    other[-1 if model.dim > 1 else 0] = 1.0
    for rho in (0.1, 1.0, 3.0, 5.0):
        p = np.zeros(model.dim)
        p[0] = r * math.tanh(0.5 * rho)
        for angle in (0.0, 1e-14, 1e-10, 1e-6, math.pi, math.pi - 1e-10):
            direction = math.cos(angle) * np.eye(model.dim)[0]
            if model.dim > 1:
                direction = direction + math.sin(angle) * other
            for norm in (1e-12, 1e-6, 1e-2, 1.0, 10.0):
                rows.append(p)
                dirs.append(direction)
                norms.append(norm)
    coords = np.array(rows)
    steps = steps_with_norm(coords, np.array(dirs), np.array(norms), r)
    errors, bad, unrepresentable = identity_check(coords, steps, r)
    return SuiteResult(
        "near_colinear", len(rows), int(bad.sum()), _max_error(errors, ~unrepresentable),
        settings.SELFTEST_DISTANCE_TOL, int(unrepresentable.sum()),
    )


def run_selftest(samples: int, seed: int, model: DiskModel | None = None) -> SelfTestReport:
    if samples < 1:
        raise ValueError("self-test needs at least one sample")
    model = model or DiskModel(radius=1.0, dim=2)
    suites = (
        distance_identity_suite(stream_rng(seed, 0), model, samples),
        *oracle_suites(stream_rng(seed, 1), model, min(samples, settings.SELFTEST_ORACLE_SAMPLES)),
        colinear_suite(model),
    )
    for s in suites:
        level = logging.INFO if s.passed else logging.ERROR
        log.log(
            level, "%s: %d checked, %d failed, %d unrepresentable, max error %.3g (tol %.1g)",
            s.name, s.checked, s.failed, s.unrepresentable, s.max_error, s.tolerance,
        )
    return SelfTestReport(samples=samples, seed=seed, suites=suites)
