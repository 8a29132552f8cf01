"""
Graph velocity G(rho) of the Moebius-invariant Willmore flow and its linearization checks.

With H the half trace of the scalar second fundamental form (w.r.t. nu_theta)
and H_tr = -2H its trace normalization against the opposite normal,

    G(rho) = L / |A0|^4 * (Delta_rho H_tr + 2 H_tr (H^2 - K))
           = -2 L / |A0|^4 * (Delta_rho H + 2 H (H^2 - K)),

which vanishes on Willmore graphs and satisfies -DG(0) = T_CC.
"""

import logging

import numpy as np

from ..errors import FlowUndefinedError, InvalidFieldError
from ..geometry.surface import GraphGeometry, beltrami_rho, graph_geometry
from ..spectral.grid import ScalarField
from ..spectral.operators import dealias, dealias_values, laplace_cc, tcc_apply

logger = logging.getLogger(__name__)

DEFAULT_A0_FLOOR = 0.5


def velocity_from_geometry(geometry: GraphGeometry, a0_floor: float = DEFAULT_A0_FLOOR,
                           variant: str = "moebius") -> ScalarField:
    """Evaluate G on an already computed graph geometry."""
    if geometry.L is None:
        raise InvalidFieldError("velocity needs graph geometry (L is undefined for non-graphs)")
    a0sq = geometry.A0sq.values
    min_a0 = float(np.min(a0sq))
    if variant == "moebius" and min_a0 < a0_floor:
        raise FlowUndefinedError(f"umbilic guard: min |A0|^2 = {min_a0:.4g} < floor {a0_floor:.4g}")

    H = dealias(geometry.H)
    K = dealias_values(geometry.K.values)
    lap_H = dealias_values(beltrami_rho(geometry, H).values)
    cubic = dealias_values(2.0 * H.values * (H.values ** 2 - K))
    bracket = lap_H + cubic

    factor = -2.0 * geometry.L.values
    if variant == "moebius":
        factor = factor / a0sq ** 2
    return ScalarField(geometry.grid, dealias_values(factor * bracket))


def velocity(rho: ScalarField, a0_floor: float = DEFAULT_A0_FLOOR, variant: str = "moebius") -> ScalarField:
    """G(rho) pointwise; raises FlowUndefinedError when the umbilic guard fails."""
    return velocity_from_geometry(graph_geometry(rho), a0_floor, variant)


def _check_step(h: float) -> None:
    if not 1e-6 <= abs(h) <= 1e-3:
        raise InvalidFieldError(f"finite-difference step must lie in [1e-6, 1e-3], got {h}")


def velocity_derivative(phi: ScalarField, h: float, central: bool = False) -> ScalarField:
    """Finite-difference directional derivative D_rho G(0).phi."""
    _check_step(h)
    if central:
        return (velocity(phi * h) - velocity(phi * -h)) / (2.0 * h)
    return (velocity(phi * h) - velocity(ScalarField.zeros(phi.grid))) / h


def linearization_residual(phi: ScalarField, h: float, central: bool = False) -> float:
    """|| (G(h phi) - G(0)) / h + T_CC phi ||_inf; O(h) one-sided, O(h^2) central."""
    return (velocity_derivative(phi, h, central) + tcc_apply(phi)).sup_norm()


def mean_curvature_derivative(phi: ScalarField, h: float, central: bool = False) -> ScalarField:
    """Finite-difference derivative of the trace-normalized mean curvature at rho = 0."""
    _check_step(h)
    if central:
        return (graph_geometry(phi * h).trace_mean_curvature
                - graph_geometry(phi * -h).trace_mean_curvature) / (2.0 * h)
    zero = graph_geometry(ScalarField.zeros(phi.grid)).trace_mean_curvature
    return (graph_geometry(phi * h).trace_mean_curvature - zero) / h


def mean_curvature_derivative_check(phi: ScalarField, h: float, central: bool = False) -> float:
    """|| (H_tr(h phi) - H_tr(0)) / h + Delta_CC phi + 4 phi ||_inf; expected O(h)."""
    return (mean_curvature_derivative(phi, h, central) + laplace_cc(phi) + phi * 4.0).sup_norm()
