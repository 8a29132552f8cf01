"""Conformal fields, Moebius flows and the equilibrium family rho_z."""

from .fields import (
    BASIS_LABELS,
    BASIS_SIZE,
    NORMAL_DIRECTIONS,
    ConformalParams,
    basis_field_values,
    conformal_field,
    conformal_generator,
    rotation_generator,
)
from .flow import ConformalFlow, moebius_flow, moebius_transform
from .equilibria import (
    RankReport,
    df0_rank_check,
    equilibrium_distance_function,
    kernel_direction,
    transformed_clifford_geometry,
)

__all__ = [
    'BASIS_LABELS',
    'BASIS_SIZE',
    'NORMAL_DIRECTIONS',
    'ConformalParams',
    'basis_field_values',
    'conformal_field',
    'conformal_generator',
    'rotation_generator',
    'ConformalFlow',
    'moebius_flow',
    'moebius_transform',
    'RankReport',
    'df0_rank_check',
    'equilibrium_distance_function',
    'kernel_direction',
    'transformed_clifford_geometry',
]
