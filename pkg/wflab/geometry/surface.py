"""
Induced differential geometry of doubly periodic surfaces in S^3.

A surface is given by its ambient samples theta[i, j] in R^4 on the parameter
grid. Derivatives of the four ambient components are spectral, so for smooth
input the metric, second fundamental form and curvatures converge spectrally.
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..errors import ImmersionError, InvalidFieldError
from ..spectral.grid import GridSpec, ScalarField
from ..spectral.operators import spectral_derivatives
from .fermi import CHART_LIMIT, check_chart, fermi_embedding, fermi_metric

logger = logging.getLogger(__name__)

# det(sigma) must stay above this fraction of the flat Clifford value 1/4
IMMERSION_THRESHOLD = 1e-8
FLAT_DET = 0.25

FIRST_ORDERS = [(1, 0), (0, 1)]
SECOND_ORDERS = [(2, 0), (1, 1), (0, 2)]


@dataclass(frozen=True, eq=False)
class GraphGeometry:
    """
    Geometric snapshot of a parametrized surface; graph data (rho, L) when available.

    Array conventions: vectors carry R^4 on the last axis; sigma and h have shape
    (2, 2, n, n); christoffels[i, j, k] holds gamma^i_{jk} with shape (2, 2, 2, n, n).
    """

    grid: GridSpec
    theta: np.ndarray
    tangents: np.ndarray
    second_derivatives: np.ndarray
    normal: np.ndarray
    sigma: np.ndarray
    sigma_inv: np.ndarray
    h: np.ndarray
    H: ScalarField
    K: ScalarField
    A0sq: ScalarField
    area_element: ScalarField
    christoffels: np.ndarray
    rho: Optional[ScalarField] = None
    L: Optional[ScalarField] = None

    @property
    def trace_mean_curvature(self) -> ScalarField:
        """Trace of the scalar second fundamental form w.r.t. -nu_theta, i.e. -2H."""
        return self.H * -2.0

    @property
    def det_sigma(self) -> np.ndarray:
        return self.sigma[0, 0] * self.sigma[1, 1] - self.sigma[0, 1] ** 2

    def normal_residual(self) -> float:
        """max over the grid of |<nu, theta>|, |<nu, d_i theta>|, ||nu| - 1|."""
        nu = self.normal
        return float(max(
            np.max(np.abs(np.sum(nu * self.theta, axis=-1))),
            np.max(np.abs(np.sum(nu * self.tangents[0], axis=-1))),
            np.max(np.abs(np.sum(nu * self.tangents[1], axis=-1))),
            np.max(np.abs(np.linalg.norm(nu, axis=-1) - 1.0)),
        ))


def cross4(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> np.ndarray:
    """Generalized cross product X with <X, w> = det[a; b; c; w], vectorized."""
    rows = np.stack([a, b, c], axis=-2)
    out = np.empty(a.shape, dtype=float)
    for i in range(4):
        minor = np.delete(rows, i, axis=-1)
        out[..., i] = (-1.0) ** (i + 1) * np.linalg.det(minor)
    return out


def _grid_of(theta: np.ndarray) -> GridSpec:
    if theta.ndim != 3 or theta.shape[0] != theta.shape[1] or theta.shape[2] != 4:
        raise InvalidFieldError(f"surface samples must have shape (n, n, 4), got {theta.shape}")
    if not np.all(np.isfinite(theta)):
        raise InvalidFieldError("surface samples contain non-finite values")
    return GridSpec(theta.shape[0])


def _ambient_derivatives(theta: np.ndarray):
    comps = np.moveaxis(theta, -1, 0)
    derivs = spectral_derivatives(comps, FIRST_ORDERS + SECOND_ORDERS)
    derivs = [np.moveaxis(d, 0, -1) for d in derivs]
    return np.stack(derivs[:2]), np.stack(derivs[2:])


def _second_index(j: int, k: int) -> int:
    return j + k


def immersion_geometry(theta: np.ndarray, rho: Optional[ScalarField] = None,
                       L: Optional[ScalarField] = None) -> GraphGeometry:
    """
    Metric, normal, curvatures and Christoffel symbols of a periodic surface in S^3.

    Raises:
        ImmersionError: if det(sigma) <= 1e-8 * 1/4 anywhere
    """
    grid = _grid_of(theta)
    tangents, seconds = _ambient_derivatives(theta)

    sigma = np.einsum("ixyc,jxyc->ijxy", tangents, tangents)
    det = sigma[0, 0] * sigma[1, 1] - sigma[0, 1] ** 2
    if np.min(det) <= IMMERSION_THRESHOLD * FLAT_DET:
        raise ImmersionError(f"degenerate induced metric: min det(sigma) = {np.min(det):.3e}")
    sigma_inv = np.array([[sigma[1, 1], -sigma[0, 1]], [-sigma[1, 0], sigma[0, 0]]]) / det

    cross = cross4(theta, tangents[0], tangents[1])
    normal = -cross / np.linalg.norm(cross, axis=-1, keepdims=True)

    h = np.empty_like(sigma)
    for j in range(2):
        for k in range(2):
            h[j, k] = np.sum(seconds[_second_index(j, k)] * normal, axis=-1)

    shape_op = np.einsum("ikxy,kjxy->ijxy", sigma_inv, h)
    mean = 0.5 * (shape_op[0, 0] + shape_op[1, 1])
    gauss_ext = (h[0, 0] * h[1, 1] - h[0, 1] ** 2) / det
    norm_a_sq = (shape_op[0, 0] ** 2 + 2.0 * shape_op[0, 1] * shape_op[1, 0] + shape_op[1, 1] ** 2)

    # gamma^i_{jk} = sigma^{il} <d_jk theta, d_l theta>
    first_kind = np.empty((2, 2, 2) + det.shape)
    for l in range(2):
        for j in range(2):
            for k in range(2):
                first_kind[l, j, k] = np.sum(seconds[_second_index(j, k)] * tangents[l], axis=-1)
    christoffels = np.einsum("ilxy,ljkxy->ijkxy", sigma_inv, first_kind)

    return GraphGeometry(
        grid=grid,
        theta=theta,
        tangents=tangents,
        second_derivatives=seconds,
        normal=normal,
        sigma=sigma,
        sigma_inv=sigma_inv,
        h=h,
        H=ScalarField(grid, mean),
        K=ScalarField(grid, gauss_ext),
        A0sq=ScalarField(grid, norm_a_sq - 2.0 * mean ** 2),
        area_element=ScalarField(grid, np.sqrt(det)),
        christoffels=christoffels,
        rho=rho,
        L=L,
    )


def gradient_factor(rho: ScalarField) -> ScalarField:
    """L_rho = sqrt(1 + w^{jk}(rho) d_j rho d_k rho) with w(r) = diag(a(r)^2, b(r)^2)."""
    rho_u, rho_v = spectral_derivatives(rho.values, FIRST_ORDERS)
    w_uu, w_vv = fermi_metric(rho.values)
    return rho.with_values(np.sqrt(1.0 + rho_u ** 2 / w_uu + rho_v ** 2 / w_vv))


def graph_geometry(rho: ScalarField) -> GraphGeometry:
    """
    Geometry of theta_rho(x) = exp_x(rho(x) nu_CC(x)).

    Raises:
        ChartDomainError: if ||rho||_inf >= pi/4
        ImmersionError: if theta_rho is not an immersion
    """
    if not isinstance(rho, ScalarField):
        raise InvalidFieldError(f"expected ScalarField, got {type(rho).__name__}")
    check_chart(rho.values, CHART_LIMIT)
    U, V = rho.grid.mesh
    theta = fermi_embedding(U, V, rho.values)
    return immersion_geometry(theta, rho=rho, L=gradient_factor(rho))


def beltrami_rho(geometry: GraphGeometry, f: ScalarField) -> ScalarField:
    """Delta_rho f = sigma^{jk} (d_jk f - gamma^i_{jk} d_i f)."""
    if f.grid != geometry.grid:
        raise InvalidFieldError("field and geometry live on different grids")
    f_u, f_v, f_uu, f_uv, f_vv = spectral_derivatives(f.values, FIRST_ORDERS + SECOND_ORDERS)
    firsts = (f_u, f_v)
    seconds = (f_uu, f_uv, f_vv)
    gamma = geometry.christoffels
    total = np.zeros_like(f.values)
    for j in range(2):
        for k in range(2):
            inner = seconds[_second_index(j, k)] - gamma[0, j, k] * firsts[0] - gamma[1, j, k] * firsts[1]
            total += geometry.sigma_inv[j, k] * inner
    return f.with_values(total)


def integrate(geometry: GraphGeometry, density: np.ndarray) -> float:
    """Trapezoidal (spectrally accurate) integral of density dmu."""
    return float(geometry.grid.spacing ** 2 * np.sum(density * geometry.area_element.values))


def area(geometry: GraphGeometry) -> float:
    return integrate(geometry, 1.0)


def willmore_energy(geometry: GraphGeometry) -> float:
    """W = integral of (K^M + 1/4 |H_vec|^2) dmu = integral of (1 + H^2) dmu in S^3."""
    return integrate(geometry, 1.0 + geometry.H.values ** 2)


def tracefree_energy(geometry: GraphGeometry) -> float:
    """1/2 integral of |A0|^2 dmu; equals the Willmore energy for tori."""
    return 0.5 * integrate(geometry, geometry.A0sq.values)


def intrinsic_curvature(geometry: GraphGeometry) -> ScalarField:
    """Gauss curvature of sigma from the Christoffel symbols; equals 1 + K in S^3."""
    gamma = geometry.christoffels
    d_u, d_v = spectral_derivatives(gamma, FIRST_ORDERS)
    # R^p_{212} = d_1 G^p_{22} - d_2 G^p_{12} + G^p_{1l} G^l_{22} - G^p_{2l} G^l_{12}
    riemann = (d_u[:, 1, 1] - d_v[:, 0, 1]
               + np.einsum("plxy,lxy->pxy", gamma[:, 0, :], gamma[:, 1, 1])
               - np.einsum("plxy,lxy->pxy", gamma[:, 1, :], gamma[:, 0, 1]))
    r_1212 = geometry.sigma[0, 0] * riemann[0] + geometry.sigma[0, 1] * riemann[1]
    return ScalarField(geometry.grid, r_1212 / geometry.det_sigma)


def euclidean_willmore_energy(points: np.ndarray) -> float:
    """
    Integral of H^2 dmu for a doubly periodic surface in R^3.

    Args:
        points: array (n, n, 3) of surface samples on the parameter grid

    Returns:
        Willmore energy with H the half trace of the second fundamental form
    """
    if points.ndim != 3 or points.shape[2] != 3:
        raise InvalidFieldError(f"points must have shape (n, n, 3), got {points.shape}")
    grid = GridSpec(points.shape[0])
    comps = np.moveaxis(points, -1, 0)
    x_u, x_v, x_uu, x_uv, x_vv = [np.moveaxis(d, 0, -1) for d in
                                  spectral_derivatives(comps, FIRST_ORDERS + SECOND_ORDERS)]
    E = np.sum(x_u * x_u, axis=-1)
    F = np.sum(x_u * x_v, axis=-1)
    G = np.sum(x_v * x_v, axis=-1)
    det = E * G - F ** 2
    if np.min(det) <= 0.0:
        raise ImmersionError("degenerate metric on projected surface")
    normal = np.cross(x_u, x_v)
    normal /= np.linalg.norm(normal, axis=-1, keepdims=True)
    e = np.sum(x_uu * normal, axis=-1)
    f = np.sum(x_uv * normal, axis=-1)
    g = np.sum(x_vv * normal, axis=-1)
    mean = 0.5 * (e * G - 2.0 * f * F + g * E) / det
    return float(grid.spacing ** 2 * np.sum(mean ** 2 * np.sqrt(det)))
