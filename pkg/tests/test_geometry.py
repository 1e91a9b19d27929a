import math

import numpy as np
import pytest

from disk.geometry import (
    asinhc,
    conformal_factor,
    distance,
    distance_arrays,
    egrad_to_rgrad,
    euclidean_tangent_length,
    exp_map,
    exp_map_with_intermediates,
    pairwise_distances,
    project_arrays,
    project_into_ball,
    riemannian_norm,
    sinhc,
    sqdist_gradient_arrays,
    x_coth_x,
)
from disk.diagnostics import finite_difference_gradient
from disk.models import (
    DiskDomainError,
    DiskModel,
    EuclGradient,
    ModelMismatchError,
    NumericalFailure,
    Point,
    Tangent,
)
from tests.conftest import random_point, tangent_with_norm


class TestModels:
    def test_point_outside_disk_rejected(self, unit_disk):
        with pytest.raises(DiskDomainError):
            Point([1.0, 0.0], unit_disk)
        with pytest.raises(DiskDomainError):
            Point([0.8, 0.8], unit_disk)

    def test_non_finite_coordinates_rejected(self, unit_disk):
        with pytest.raises(DiskDomainError):
            Point([np.nan, 0.0], unit_disk)
        with pytest.raises(DiskDomainError):
            Tangent(unit_disk.origin(), [np.inf, 0.0])

    def test_wrong_dimension_rejected(self, unit_disk):
        with pytest.raises(DiskDomainError):
            Point([0.1, 0.1, 0.1], unit_disk)

    def test_bad_model(self):
        with pytest.raises(DiskDomainError):
            DiskModel(radius=0.0)
        with pytest.raises(DiskDomainError):
            DiskModel(dim=0)

    def test_coordinates_are_read_only(self, unit_disk):
        p = Point([0.1, 0.2], unit_disk)
        with pytest.raises(ValueError):
            p.coords[0] = 0.5


class TestScalarHelpers:
    def test_sinhc_values(self):
        assert sinhc(0.0) == 1.0
        assert sinhc(1.0) == pytest.approx(math.sinh(1.0), rel=1e-15)
        assert sinhc(1.0) == pytest.approx(1.1752012, abs=1e-7)
        assert sinhc(1e-9) == 1.0

    def test_sinhc_continuous_at_switch(self):
        below = sinhc(np.nextafter(1e-4, 0.0))
        above = sinhc(1e-4)
        assert below == pytest.approx(above, rel=1e-15)

    def test_sinhc_rejects_negative(self):
        with pytest.raises(DiskDomainError):
            sinhc(-1.0)

    def test_sinhc_vectorised(self):
        out = sinhc(np.array([0.0, 1e-6, 2.0]))
        np.testing.assert_allclose(out, [1.0, 1.0 + 1e-12 / 6.0, math.sinh(2.0) / 2.0], rtol=1e-15)

    def test_asinhc_and_x_coth_x(self):
        assert asinhc(0.0) == 1.0
        assert asinhc(2.0) == pytest.approx(math.asinh(2.0) / 2.0, rel=1e-15)
        assert x_coth_x(0.0) == 1.0
        assert x_coth_x(2.0) == pytest.approx(2.0 / math.tanh(2.0), rel=1e-15)


class TestConformalFactor:
    def test_origin(self, unit_disk):
        assert conformal_factor(unit_disk.origin()) == 4.0

    def test_radius_two(self):
        assert conformal_factor(DiskModel(radius=2.0).origin()) == 1.0

    def test_near_boundary_is_finite(self, unit_disk):
        value = conformal_factor(Point([1.0 - 1e-8, 0.0], unit_disk))
        assert math.isfinite(value)
        assert 1e15 < value < 1e17


class TestDistance:
    def test_identity(self, unit_disk):
        p = Point([0.3, -0.4], unit_disk)
        assert distance(p, p) == 0.0

    def test_ln3(self, unit_disk):
        assert distance(unit_disk.origin(), Point([0.5, 0.0], unit_disk)) == pytest.approx(math.log(3.0), rel=1e-13)

    def test_radial_formula(self, unit_disk, rng):
        for s in rng.uniform(0.0, 1.0, size=20):
            expected = math.log((1.0 + s) / (1.0 - s))
            assert distance(unit_disk.origin(), Point([s, 0.0], unit_disk)) == pytest.approx(expected, rel=1e-12)

    def test_matches_arcosh_form(self, unit_disk, rng):
        for _ in range(50):
            p = random_point(rng, unit_disk, 4.0)
            q = random_point(rng, unit_disk, 4.0)
            gap_sq = float(np.sum((p.coords - q.coords) ** 2))
            arg = 1.0 + 2.0 * gap_sq / ((1.0 - p.norm**2) * (1.0 - q.norm**2))
            assert distance(p, q) == pytest.approx(math.acosh(arg), rel=1e-9)

    def test_symmetric_and_other_radius(self, rng):
        model = DiskModel(radius=3.0, dim=3)
        p = random_point(rng, model)
        q = random_point(rng, model)
        assert distance(p, q) == distance(q, p)
        assert distance(model.origin(), Point([1.5, 0.0, 0.0], model)) == pytest.approx(math.log(3.0), rel=1e-13)

    def test_model_mismatch(self, unit_disk):
        other = DiskModel(radius=2.0)
        with pytest.raises(ModelMismatchError):
            distance(unit_disk.origin(), other.origin())

    def test_pairwise(self, unit_disk, rng):
        coords = np.stack([random_point(rng, unit_disk).coords for _ in range(5)])
        m = pairwise_distances(coords, 1.0)
        assert m.shape == (5, 5)
        np.testing.assert_allclose(np.diag(m), 0.0)
        np.testing.assert_allclose(m, m.T)
        assert m[1, 3] == pytest.approx(float(distance_arrays(coords[1], coords[3], 1.0)))


class TestTangentSpace:
    def test_riemannian_norm(self, unit_disk):
        o = unit_disk.origin()
        assert riemannian_norm(Tangent(o, [0.0, 0.0])) == 0.0
        assert riemannian_norm(Tangent(o, [0.5, 0.0])) == 1.0

    def test_euclidean_tangent_length(self, unit_disk):
        p = Point([0.6, 0.0], unit_disk)
        assert euclidean_tangent_length(p, 2.0) == pytest.approx(0.64, rel=1e-15)
        length = euclidean_tangent_length(p, 0.3)
        assert riemannian_norm(Tangent(p, [0.0, length])) == pytest.approx(0.3, rel=1e-15)
        model = DiskModel(radius=2.0, dim=2)
        assert euclidean_tangent_length(model.origin(), 1.0) == 1.0

    def test_egrad_to_rgrad(self, unit_disk):
        o = unit_disk.origin()
        np.testing.assert_array_equal(egrad_to_rgrad(EuclGradient(o, [0.0, 0.0])).components, [0.0, 0.0])
        np.testing.assert_allclose(egrad_to_rgrad(EuclGradient(o, [1.0, 0.0])).components, [0.25, 0.0])


class TestExpMap:
    def test_zero_step_returns_p(self, unit_disk):
        p = Point([0.2, 0.3], unit_disk)
        assert exp_map(p, Tangent(p, [0.0, 0.0])) is p

    def test_radial_from_origin(self, unit_disk):
        o = unit_disk.origin()
        q = exp_map(o, tangent_with_norm(o, [1.0, 0.0], math.log(3.0)))
        np.testing.assert_allclose(q.coords, [0.5, 0.0], atol=1e-14)

    def test_tiny_colinear_step(self, unit_disk):
        p = Point([0.9, 0.0], unit_disk)
        q = exp_map(p, tangent_with_norm(p, [1.0, 0.0], 1e-10))
        assert np.all(np.isfinite(q.coords))
        assert distance(p, q) == pytest.approx(1e-10, abs=1e-15)

    @pytest.mark.parametrize("direction", [[1.0, 0.0], [-1.0, 0.0], [0.3, 0.7], [0.0, -1.0]])
    @pytest.mark.parametrize("norm", [1e-12, 1e-6, 0.5, 3.0, 12.0])
    def test_distance_identity(self, unit_disk, direction, norm):
        p = Point([0.6, 0.2], unit_disk)
        q = exp_map(p, tangent_with_norm(p, direction, norm))
        assert distance(p, q) == pytest.approx(norm, rel=1e-9, abs=1e-9)

    def test_distance_identity_random(self, rng):
        for dim in (2, 3, 5):
            model = DiskModel(radius=1.0, dim=dim)
            for _ in range(200):
                p = random_point(rng, model, 6.0)
                norm = float(np.exp(rng.uniform(np.log(1e-8), np.log(10.0))))
                q = exp_map(p, tangent_with_norm(p, rng.standard_normal(dim), norm))
                assert distance(p, q) == pytest.approx(norm, rel=1e-9, abs=1e-9)

    def test_first_order_agrees_with_straight_step(self, rng):
        model = DiskModel(radius=1.0, dim=2)
        for _ in range(50):
            p = random_point(rng, model, 1.4)
            direction = rng.standard_normal(2)
            direction /= np.linalg.norm(direction)
            for n in (1e-3, 1e-4, 1e-5, 1e-6, 1e-7):
                q = exp_map(p, Tangent(p, n * direction))
                assert np.linalg.norm(q.coords - (p.coords + n * direction)) <= 3.0 * n**2 + 1e-15

    def test_second_order_term_is_geodesic_curvature(self, unit_disk):
        # |x - (p + v)| -> |p| / (1 - |p|^2) * |v|^2 for any direction of v
        p = Point([0.3, 0.4], unit_disk)
        direction = np.array([0.6, -0.8])
        for n in (1e-4, 1e-5):
            q = exp_map(p, Tangent(p, n * direction))
            ratio = np.linalg.norm(q.coords - (p.coords + n * direction)) / n**2
            assert ratio == pytest.approx(0.5 / 0.75, rel=1e-2)

    def test_stays_on_geodesic_through_origin(self, unit_disk):
        # a radial step leaves the point on the diameter
        p = Point([0.0, -0.7], unit_disk)
        q = exp_map(p, tangent_with_norm(p, [0.0, 1.0], 2.0))
        assert q.coords[0] == 0.0
        assert distance(p, q) == pytest.approx(2.0, rel=1e-12)

    def test_non_unit_radius(self):
        model = DiskModel(radius=2.5, dim=2)
        p = Point([1.0, 1.2], model)
        q = exp_map(p, tangent_with_norm(p, [-0.4, 1.0], 1.7))
        assert distance(p, q) == pytest.approx(1.7, rel=1e-10)

    def test_huge_step_clamped_inside(self, unit_disk):
        p = Point([0.5, 0.0], unit_disk)
        q = exp_map(p, tangent_with_norm(p, [1.0, 0.0], 60.0))
        assert q.norm < 1.0

    def test_rejects_foreign_tangent(self, unit_disk):
        p = Point([0.1, 0.0], unit_disk)
        v = Tangent(Point([0.2, 0.0], unit_disk), [0.1, 0.0])
        with pytest.raises(DiskDomainError):
            exp_map(p, v)

    def test_intermediates_are_finite(self, unit_disk, rng):
        for _ in range(100):
            p = random_point(rng, unit_disk, 5.0)
            v = tangent_with_norm(p, rng.standard_normal(2), rng.uniform(1e-6, 8.0))
            q, parts = exp_map_with_intermediates(p, v)
            assert parts.arrival_distance == pytest.approx(riemannian_norm(v))
            assert parts.h_sq > 0
            assert distance(p, q) == pytest.approx(parts.arrival_distance, rel=1e-9)


class TestProjection:
    def test_inside_unchanged(self, unit_disk):
        p = project_into_ball(unit_disk, [0.5, 0.0])
        np.testing.assert_array_equal(p.coords, [0.5, 0.0])

    def test_outside_rescaled(self, unit_disk):
        p = project_into_ball(unit_disk, [2.0, 0.0], eps=1e-10)
        np.testing.assert_array_equal(p.coords, [1.0 - 1e-10, 0.0])

    def test_on_boundary(self, unit_disk):
        p = project_into_ball(unit_disk, [0.6, 0.8], eps=1e-10)
        assert p.norm == pytest.approx(1.0 - 1e-10, rel=1e-15)

    def test_non_finite_rejected(self, unit_disk):
        with pytest.raises(NumericalFailure):
            project_into_ball(unit_disk, [np.nan, 0.0])

    def test_bad_eps(self, unit_disk):
        with pytest.raises(DiskDomainError):
            project_into_ball(unit_disk, [0.1, 0.0], eps=0.0)

    def test_mask(self):
        coords, moved = project_arrays([[0.1, 0.0], [3.0, 4.0]], 1.0, 1e-3)
        assert moved.tolist() == [False, True]
        assert np.linalg.norm(coords[1]) == pytest.approx(1.0 - 1e-3)


class TestSquaredDistanceGradient:
    def test_zero_at_anchor(self):
        value, grad = sqdist_gradient_arrays([0.3, -0.2], [0.3, -0.2], 1.0)
        assert value == 0.0
        np.testing.assert_array_equal(grad, [0.0, 0.0])

    def test_matches_finite_differences(self, unit_disk, rng):
        for _ in range(30):
            x = random_point(rng, unit_disk, 3.0).coords
            q = random_point(rng, unit_disk, 3.0).coords
            _, grad = sqdist_gradient_arrays(x, q, 1.0)
            numeric = finite_difference_gradient(lambda y: float(sqdist_gradient_arrays(y, q, 1.0)[0]), x)
            np.testing.assert_allclose(grad, numeric, rtol=1e-6, atol=5e-8)
