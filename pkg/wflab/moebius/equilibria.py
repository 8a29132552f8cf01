"""
Equilibrium family rho_z: Moebius images of the Clifford torus written as graphs over CC.

rho_z is read off from a dense sample of T_z(1)(CC). Each source point C(s, t)
lands at Fermi coordinates (s + d_u, t + d_v, r); the displacements d_u, d_v
and the height r are smooth periodic functions of (s, t), so for every target
node x = (u, v) we solve s + d_u(s, t) = u, t + d_v(s, t) = v by fixed-point
iteration on the trigonometric interpolants and set rho_z(x) = r(s, t).
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, List

import numpy as np
from scipy.linalg import svdvals

from ..errors import ChartDomainError, ConfigError, NotAGraphError
from ..geometry.fermi import fermi_coordinates
from ..geometry.sphere import clifford_embedding, clifford_normal_field
from ..geometry.surface import GraphGeometry, immersion_geometry
from ..spectral.center import center_basis, center_coefficients
from ..spectral.grid import GridSpec, ScalarField
from ..spectral.operators import evaluate_at, spectral_derivatives
from ..utils.helpers import parallel_map
from .fields import BASIS_SIZE, NORMAL_DIRECTIONS, ConformalParams, basis_field_values
from .flow import moebius_transform

logger = logging.getLogger(__name__)

MAX_EQUILIBRIUM_NORM = 0.2
FIXED_POINT_TOL = 1e-13
FIXED_POINT_MAX_ITER = 200
FOLD_TOL = 1e-3
RANK_RTOL = 1e-6


def _wrap(angle: np.ndarray) -> np.ndarray:
    """Map angles to (-pi, pi]."""
    return np.angle(np.exp(1j * angle))


def equilibrium_distance_function(z: ConformalParams, grid: GridSpec, oversample: int = 2) -> ScalarField:
    """
    rho_z on the working grid.

    Args:
        z: conformal parameters with |z| <= 0.2
        grid: working grid
        oversample: source grid refinement per axis

    Raises:
        ConfigError: if |z| > 0.2 or oversample < 1
        NotAGraphError: if T_z(1)(CC) leaves the tube or folds over CC
    """
    if z.norm > MAX_EQUILIBRIUM_NORM:
        raise ConfigError(f"|z| = {z.norm:.4g} exceeds {MAX_EQUILIBRIUM_NORM}")
    if oversample < 1:
        raise ConfigError(f"oversample must be >= 1, got {oversample}")
    if z.norm == 0.0:
        return ScalarField.zeros(grid)

    source = GridSpec(grid.n * int(oversample))
    S, T = source.mesh
    moved = moebius_transform(z, clifford_embedding(S, T))
    try:
        u_img, v_img, r_img = fermi_coordinates(moved)
    except ChartDomainError as e:
        raise NotAGraphError(f"T_z(1)(CC) leaves the Fermi tube: {e}") from e

    d_u = _wrap(u_img - S)
    d_v = _wrap(v_img - T)
    if max(np.max(np.abs(d_u)), np.max(np.abs(d_v))) >= 0.5 * np.pi:
        raise NotAGraphError("displacement along CC exceeds pi/2")

    du_s, du_t = spectral_derivatives(d_u, [(1, 0), (0, 1)])
    dv_s, dv_t = spectral_derivatives(d_v, [(1, 0), (0, 1)])
    jacobian = (1.0 + du_s) * (1.0 + dv_t) - du_t * dv_s
    if np.min(jacobian) <= FOLD_TOL:
        raise NotAGraphError(f"fold-over in inverted coordinates: min Jacobian = {np.min(jacobian):.3e}")

    U, V = grid.mesh
    u_target = U.reshape(-1)
    v_target = V.reshape(-1)
    displacement = np.stack([d_u, d_v])
    s, t = u_target.copy(), v_target.copy()
    for iteration in range(FIXED_POINT_MAX_ITER):
        shift_u, shift_v = evaluate_at(displacement, s, t)
        s_next = u_target - shift_u
        t_next = v_target - shift_v
        change = max(np.max(np.abs(s_next - s)), np.max(np.abs(t_next - t)))
        s, t = s_next, t_next
        if change < FIXED_POINT_TOL:
            break
    else:
        raise NotAGraphError(f"source-point iteration did not converge (last change {change:.3e})")

    logger.debug(f"rho_z extracted after {iteration + 1} iterations, |z|={z.norm:.4g}")
    rho = evaluate_at(r_img, s, t).reshape(grid.n, grid.n)
    return ScalarField(grid, rho)


def kernel_direction(k: int, grid: GridSpec) -> ScalarField:
    """v_k(x) = <v_k(C(x)), nu_CC(x)> for k = 1..8."""
    if not 1 <= k <= NORMAL_DIRECTIONS:
        raise ConfigError(f"kernel direction index must lie in 1..{NORMAL_DIRECTIONS}, got {k}")
    U, V = grid.mesh
    values = np.sum(basis_field_values(k, clifford_embedding(U, V)) * clifford_normal_field(U, V), axis=-1)
    return ScalarField(grid, values)


def transformed_clifford_geometry(z: ConformalParams, grid: GridSpec) -> GraphGeometry:
    """Geometry of T_z(1) o C sampled on the grid (an immersion, not a graph)."""
    U, V = grid.mesh
    return immersion_geometry(moebius_transform(z, clifford_embedding(U, V)))


@dataclass
class RankReport:
    """Finite-difference differential of z -> pi^c rho_z at z = 0."""

    rank: int
    singular_values: np.ndarray
    matrix: np.ndarray
    reference: np.ndarray
    eps_fd: float

    @property
    def column_errors(self) -> np.ndarray:
        """Distance of columns 1..8 to the kernel-direction coefficients."""
        return np.linalg.norm(self.matrix[:, :NORMAL_DIRECTIONS] - self.reference, axis=0)

    @property
    def tangential_norms(self) -> np.ndarray:
        """Norms of columns 9 and 10."""
        return np.linalg.norm(self.matrix[:, NORMAL_DIRECTIONS:], axis=0)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "rank": self.rank,
            "singular_values": [float(s) for s in self.singular_values],
            "column_errors": [float(e) for e in self.column_errors],
            "tangential_norms": [float(e) for e in self.tangential_norms],
            "eps_fd": self.eps_fd,
        }


def df0_rank_check(eps_fd: float = 1e-4, grid: GridSpec = None, oversample: int = 2,
                   parallel: bool = False) -> RankReport:
    """
    Central differences D_{z_k} rho_z at z = 0, projected onto ker T_CC.

    The 8 x 10 matrix has at most 8 nonzero singular values; the list is padded
    with zeros to one entry per conformal direction.
    """
    if not 0.0 < eps_fd <= 1e-2:
        raise ConfigError(f"eps_fd must lie in (0, 1e-2], got {eps_fd}")
    grid = grid or GridSpec(32)
    basis = center_basis(grid)

    def column(k: int) -> np.ndarray:
        plus = equilibrium_distance_function(ConformalParams.unit(k, eps_fd), grid, oversample)
        minus = equilibrium_distance_function(ConformalParams.unit(k, -eps_fd), grid, oversample)
        return center_coefficients((plus - minus) / (2.0 * eps_fd), basis)

    columns: List[np.ndarray] = parallel_map(column, range(1, BASIS_SIZE + 1), parallel)
    matrix = np.column_stack(columns)
    reference = np.column_stack([center_coefficients(kernel_direction(k, grid), basis)
                                 for k in range(1, NORMAL_DIRECTIONS + 1)])

    singular = svdvals(matrix)
    rank = int(np.count_nonzero(singular > RANK_RTOL * singular[0])) if singular[0] > 0 else 0
    padded = np.zeros(BASIS_SIZE)
    padded[:len(singular)] = singular
    logger.info(f"DF(0) rank {rank}, singular values {np.array2string(singular, precision=3)}")
    return RankReport(rank=rank, singular_values=padded, matrix=matrix, reference=reference, eps_fd=eps_fd)
