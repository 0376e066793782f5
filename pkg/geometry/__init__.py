from geometry.grid import Grid, GridKind
from geometry.fields import FrameTensorField, ScalarField
from geometry.snapshot import BackendKind, GeometrySnapshot, InterpolationRule
from geometry.flow import FlowTrajectory, make_shrinking_sphere, make_torus, snapshot_at
from geometry.operators import (
    covariant_derivative_along,
    flux_operator,
    geodesic_distance,
    gradient_components,
    gradient_sq,
    hessian_frame,
    inner_gradients,
    integrate,
    laplace_beltrami,
    metric_frame,
    outer_gradient,
    rough_laplacian,
    volume_density,
)
from geometry.regions import Ball, Region, WholeManifold
from geometry.curvature import CurvatureData, curvature_bounds, curvature_data, sectional_curvature
from geometry.rotsym import evolve_rotsym_surface, initial_conformal_factor

__all__ = [
    "Ball",
    "BackendKind",
    "CurvatureData",
    "FlowTrajectory",
    "FrameTensorField",
    "GeometrySnapshot",
    "Grid",
    "GridKind",
    "InterpolationRule",
    "Region",
    "ScalarField",
    "WholeManifold",
    "covariant_derivative_along",
    "curvature_bounds",
    "curvature_data",
    "evolve_rotsym_surface",
    "flux_operator",
    "geodesic_distance",
    "gradient_components",
    "gradient_sq",
    "hessian_frame",
    "initial_conformal_factor",
    "inner_gradients",
    "integrate",
    "laplace_beltrami",
    "make_shrinking_sphere",
    "make_torus",
    "metric_frame",
    "outer_gradient",
    "rough_laplacian",
    "sectional_curvature",
    "snapshot_at",
    "volume_density",
]
