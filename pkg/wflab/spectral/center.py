"""Kernel of T_CC and the center/stable splitting of L^2(CC)."""

from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple

import numpy as np

from ..errors import InvalidFieldError
from .grid import GridSpec, ScalarField, trig_mode
from .operators import l2_inner, l2_norm

# Real eigenfunctions of Delta_CC with eigenvalue -2 (first four) and -4 (last four).
KERNEL_MODES: Tuple[Tuple[int, int, str], ...] = (
    (1, 0, "cos"), (1, 0, "sin"),
    (0, 1, "cos"), (0, 1, "sin"),
    (1, 1, "cos"), (1, 1, "sin"),
    (1, -1, "cos"), (1, -1, "sin"),
)

KERNEL_LABELS = (
    "cos u", "sin u", "cos v", "sin v",
    "cos(u+v)", "sin(u+v)", "cos(u-v)", "sin(u-v)",
)


@dataclass(frozen=True, eq=False)
class CenterBasis:
    """L^2(CC)-orthonormal basis Y_1..Y_8 of ker T_CC."""

    grid: GridSpec
    fields: Tuple[ScalarField, ...]

    @property
    def matrix(self) -> np.ndarray:
        """Stacked basis values, shape (8, n, n)."""
        return np.stack([y.values for y in self.fields])

    def gram(self) -> np.ndarray:
        return np.array([[l2_inner(a, b) for b in self.fields] for a in self.fields])

    def __len__(self) -> int:
        return len(self.fields)


@lru_cache(maxsize=8)
def center_basis(grid: GridSpec) -> CenterBasis:
    """Normalized trigonometric monomials spanning Eig_-2 + Eig_-4 of Delta_CC."""
    fields = []
    for m, n, kind in KERNEL_MODES:
        mode = trig_mode(grid, m, n, kind)
        fields.append(mode / l2_norm(mode))
    return CenterBasis(grid, tuple(fields))


@dataclass(frozen=True, eq=False)
class CenterProjection:
    coeffs: np.ndarray
    center_part: ScalarField
    stable_part: ScalarField


def center_coefficients(f: ScalarField, basis: CenterBasis = None) -> np.ndarray:
    basis = basis or center_basis(f.grid)
    if basis.grid != f.grid:
        raise InvalidFieldError("field and center basis live on different grids")
    return f.grid.cell_area * np.tensordot(basis.matrix, f.values, axes=([1, 2], [0, 1]))


def project_center(f: ScalarField, basis: CenterBasis = None) -> CenterProjection:
    """pi^c f = sum <f, Y_k> Y_k and pi^s f = f - pi^c f."""
    basis = basis or center_basis(f.grid)
    coeffs = center_coefficients(f, basis)
    center_values = np.tensordot(coeffs, basis.matrix, axes=(0, 0))
    center = f.with_values(center_values)
    return CenterProjection(coeffs=coeffs, center_part=center, stable_part=f - center)
