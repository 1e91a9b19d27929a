import math

import numpy as np
import pytest

from barycenter.objective import squared_distance_objective
from disk.diagnostics import (
    christoffel,
    christoffel_tensor,
    convexity_smoothness_probe,
    euclidean_hessian_sqdist_eigs,
    finite_difference_gradient,
    riemannian_hessian,
)
from disk.geometry import distance, sqdist_gradient_arrays, x_coth_x
from disk.models import (
    DiskDomainError,
    DiskModel,
    EuclGradient,
    NumericalFailure,
    Point,
    UnsupportedModelError,
)
from tests.conftest import random_point, tangent_with_norm


class ConstantObjective:
    def __init__(self, level=3.0):
        self.level = level

    def value(self, p):
        return self.level

    def eucl_gradient(self, p):
        return EuclGradient(p, np.zeros(p.model.dim))


class NanObjective(ConstantObjective):
    def value(self, p):
        return math.nan


def point_at_distance(theta, dim=2, axis=0):
    coords = np.zeros(dim)
    coords[axis] = math.tanh(theta / 2.0)
    return Point(coords, DiskModel(radius=1.0, dim=dim))


class TestChristoffel:
    def test_vanish_at_origin(self, unit_disk):
        o = unit_disk.origin()
        for i in range(2):
            for j in range(2):
                for k in range(2):
                    assert christoffel(o, i, j, k) == 0.0

    def test_worked_values(self, unit_disk):
        p = Point([0.5, 0.0], unit_disk)
        assert christoffel(p, 0, 0, 0) == pytest.approx(4.0 / 3.0)
        assert christoffel(p, 1, 1, 0) == pytest.approx(-4.0 / 3.0)
        assert christoffel(p, 0, 1, 1) == pytest.approx(4.0 / 3.0)
        assert christoffel(p, 0, 1, 0) == 0.0

    def test_tensor_matches_symbols(self, rng):
        model = DiskModel(radius=1.0, dim=3)
        p = random_point(rng, model, 2.0)
        gamma = christoffel_tensor(p)
        for i in range(3):
            for j in range(3):
                for k in range(3):
                    assert gamma[k, i, j] == pytest.approx(christoffel(p, i, j, k), abs=1e-15)
        np.testing.assert_allclose(gamma, np.swapaxes(gamma, 1, 2))

    def test_unit_disk_only(self):
        with pytest.raises(UnsupportedModelError):
            christoffel(DiskModel(radius=2.0).origin(), 0, 0, 0)


class TestRiemannianHessian:
    @pytest.mark.parametrize("theta", [0.1, 0.5, 1.0, 2.0, 4.0])
    def test_squared_distance_spectrum(self, theta):
        p = point_at_distance(theta)
        f = squared_distance_objective(p.model.origin())
        report = riemannian_hessian(f, p)
        np.testing.assert_allclose(report.eigenvalues, [1.0, x_coth_x(theta)], rtol=1e-4)

    def test_spectrum_in_three_dimensions(self):
        theta = 1.5
        p = point_at_distance(theta, dim=3, axis=1)
        report = riemannian_hessian(squared_distance_objective(p.model.origin()), p)
        np.testing.assert_allclose(report.eigenvalues, [1.0, x_coth_x(theta), x_coth_x(theta)], rtol=1e-4)

    def test_small_theta_limit(self):
        report = riemannian_hessian(squared_distance_objective(DiskModel().origin()), point_at_distance(1e-3))
        np.testing.assert_allclose(report.eigenvalues, [1.0, 1.0], rtol=1e-4)

    def test_constant_objective(self, unit_disk):
        report = riemannian_hessian(ConstantObjective(), Point([0.2, -0.3], unit_disk))
        np.testing.assert_array_equal(report.matrix, np.zeros((2, 2)))

    def test_non_finite_objective(self, unit_disk):
        with pytest.raises(NumericalFailure):
            riemannian_hessian(NanObjective(), Point([0.2, -0.3], unit_disk))

    def test_step_range(self, unit_disk):
        with pytest.raises(ValueError):
            riemannian_hessian(ConstantObjective(), unit_disk.origin(), h=1e-2)


class TestEuclideanHessian:
    @staticmethod
    def numeric_eigs(p, h=1e-6):
        x = p.coords
        columns = []
        for j in range(x.size):
            step = np.zeros_like(x)
            step[j] = h
            plus = sqdist_gradient_arrays(x + step, np.zeros_like(x), 1.0)[1]
            minus = sqdist_gradient_arrays(x - step, np.zeros_like(x), 1.0)[1]
            columns.append((plus - minus) / (2.0 * h))
        matrix = np.column_stack(columns)
        return np.linalg.eigvalsh(0.5 * (matrix + matrix.T))

    def test_matches_numeric_hessian(self, unit_disk, rng):
        for s in rng.uniform(0.1, 0.95, size=10):
            angle = rng.uniform(0.0, 2.0 * math.pi)
            p = Point([s * math.cos(angle), s * math.sin(angle)], unit_disk)
            tangential, radial = euclidean_hessian_sqdist_eigs(p)
            np.testing.assert_allclose(self.numeric_eigs(p), [tangential, radial], rtol=1e-4)

    def test_radial_dominates_and_grows(self, unit_disk):
        previous = (0.0, 0.0)
        for s in (0.5, 0.9, 0.99):
            tangential, radial = euclidean_hessian_sqdist_eigs(Point([s, 0.0], unit_disk))
            assert radial >= tangential
            assert tangential > previous[0] and radial > previous[1]
            previous = (tangential, radial)

    def test_small_norm_limit(self, unit_disk):
        tangential, radial = euclidean_hessian_sqdist_eigs(Point([1e-6, 0.0], unit_disk))
        assert tangential == pytest.approx(8.0, rel=1e-6)
        assert radial == pytest.approx(8.0, rel=1e-6)

    def test_singular_at_origin(self, unit_disk):
        with pytest.raises(DiskDomainError):
            euclidean_hessian_sqdist_eigs(unit_disk.origin())


class TestConvexitySmoothnessProbe:
    def test_squared_distance_is_sandwiched(self, unit_disk, rng):
        f = squared_distance_objective(unit_disk.origin())
        for _ in range(200):
            p = random_point(rng, unit_disk, 3.0)
            norm = rng.uniform(0.05, 1.0)
            v = tangent_with_norm(p, rng.standard_normal(2), norm)
            reach = distance(unit_disk.origin(), p) + norm
            probe = convexity_smoothness_probe(f, p, v)
            assert 1.0 - 1e-4 <= probe <= x_coth_x(reach) * (1.0 + 1e-4)

    def test_tiny_step_recovers_hessian(self, unit_disk):
        theta = 2.0
        p = point_at_distance(theta)
        f = squared_distance_objective(unit_disk.origin())
        radial = convexity_smoothness_probe(f, p, tangent_with_norm(p, [1.0, 0.0], 1e-3))
        tangential = convexity_smoothness_probe(f, p, tangent_with_norm(p, [0.0, 1.0], 1e-3))
        assert radial == pytest.approx(1.0, rel=1e-6)
        assert tangential == pytest.approx(x_coth_x(theta), rel=1e-2)

    def test_constant_objective(self, unit_disk):
        p = Point([0.1, 0.1], unit_disk)
        assert convexity_smoothness_probe(ConstantObjective(), p, tangent_with_norm(p, [1.0, 0.0], 0.5)) == 0.0

    def test_zero_step_rejected(self, unit_disk):
        p = Point([0.1, 0.1], unit_disk)
        with pytest.raises(DiskDomainError):
            convexity_smoothness_probe(ConstantObjective(), p, tangent_with_norm(p, [1.0, 0.0], 0.0))


class TestFiniteDifferences:
    def test_quadratic(self):
        grad = finite_difference_gradient(lambda x: float(x @ x), np.array([1.0, -2.0, 0.5]))
        np.testing.assert_allclose(grad, [2.0, -4.0, 1.0], rtol=1e-9)
