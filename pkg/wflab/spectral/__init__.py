"""Fourier-spectral calculus on the flat Clifford torus."""

from .grid import GridSpec, ScalarField, trig_mode, band_limited_random_field
from .operators import (
    SpectralOperator,
    fourier_diff,
    laplace_cc,
    tcc_apply,
    tcc_spectrum,
    imex_resolvent,
    dealias,
    mode_filter,
    l2_inner,
    l2_norm,
    kernel_dimension,
    smallest_positive_eigenvalue,
)
from .center import CenterBasis, CenterProjection, center_basis, project_center

__all__ = [
    'GridSpec',
    'ScalarField',
    'trig_mode',
    'band_limited_random_field',
    'SpectralOperator',
    'fourier_diff',
    'laplace_cc',
    'tcc_apply',
    'tcc_spectrum',
    'imex_resolvent',
    'dealias',
    'mode_filter',
    'l2_inner',
    'l2_norm',
    'kernel_dimension',
    'smallest_positive_eigenvalue',
    'CenterBasis',
    'CenterProjection',
    'center_basis',
    'project_center',
]
