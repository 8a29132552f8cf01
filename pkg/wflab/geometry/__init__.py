"""Geometry of S^3, the Clifford torus, the Fermi chart and graph surfaces."""

from .sphere import (
    S3Point,
    TangentVector,
    clifford_point,
    clifford_normal,
    clifford_embedding,
    clifford_normal_field,
    stereographic,
    inverse_stereographic,
    geodesic_distance,
)
from .fermi import (
    CHART_LIMIT,
    TUBE_HALF_WIDTH,
    circle_radii,
    fermi_map,
    fermi_invert,
    fermi_coordinates,
    fermi_embedding,
)
from .surface import (
    GraphGeometry,
    immersion_geometry,
    graph_geometry,
    beltrami_rho,
    willmore_energy,
    tracefree_energy,
    intrinsic_curvature,
    euclidean_willmore_energy,
    area,
)

__all__ = [
    'S3Point',
    'TangentVector',
    'clifford_point',
    'clifford_normal',
    'clifford_embedding',
    'clifford_normal_field',
    'stereographic',
    'inverse_stereographic',
    'geodesic_distance',
    'CHART_LIMIT',
    'TUBE_HALF_WIDTH',
    'circle_radii',
    'fermi_map',
    'fermi_invert',
    'fermi_coordinates',
    'fermi_embedding',
    'GraphGeometry',
    'immersion_geometry',
    'graph_geometry',
    'beltrami_rho',
    'willmore_energy',
    'tracefree_energy',
    'intrinsic_curvature',
    'euclidean_willmore_energy',
    'area',
]
