"""Poincaré disk geometry: metric, distance, exponential map and their oracles."""

from disk.diagnostics import (
    HessianReport,
    christoffel,
    christoffel_tensor,
    convexity_smoothness_probe,
    euclidean_hessian_sqdist_eigs,
    finite_difference_gradient,
    riemannian_hessian,
)
from disk.geometry import (
    conformal_factor,
    distance,
    egrad_to_rgrad,
    euclidean_tangent_length,
    exp_map,
    exp_map_with_intermediates,
    pairwise_distances,
    project_into_ball,
    riemannian_norm,
    sinhc,
)
from disk.models import (
    DegenerateGeodesicError,
    DiskDomainError,
    DiskModel,
    EuclGradient,
    ExpMapIntermediates,
    ModelMismatchError,
    NumericalFailure,
    OracleDomainError,
    Point,
    Tangent,
    UnsupportedModelError,
)
from disk.reference import (
    EquidistanceCircle,
    GeodesicCircle,
    equidistance_circle,
    geodesic_circle,
    geodesic_curvature,
    north_vertex,
    reference_exp_map,
)

__all__ = [
    "DegenerateGeodesicError",
    "DiskDomainError",
    "DiskModel",
    "EquidistanceCircle",
    "EuclGradient",
    "ExpMapIntermediates",
    "GeodesicCircle",
    "HessianReport",
    "ModelMismatchError",
    "NumericalFailure",
    "OracleDomainError",
    "Point",
    "Tangent",
    "UnsupportedModelError",
    "christoffel",
    "christoffel_tensor",
    "conformal_factor",
    "convexity_smoothness_probe",
    "distance",
    "egrad_to_rgrad",
    "equidistance_circle",
    "euclidean_hessian_sqdist_eigs",
    "euclidean_tangent_length",
    "exp_map",
    "exp_map_with_intermediates",
    "finite_difference_gradient",
    "geodesic_circle",
    "geodesic_curvature",
    "north_vertex",
    "pairwise_distances",
    "project_into_ball",
    "reference_exp_map",
    "riemannian_hessian",
    "riemannian_norm",
    "sinhc",
]
