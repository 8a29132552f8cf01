"""Fermi coordinates (x, r) -> exp_x(r nu_CC(x)) around the Clifford torus."""

import math
from typing import Tuple

import numpy as np

from ..errors import ChartDomainError
from .sphere import INV_SQRT2, S3Point, clifford_embedding, clifford_normal_field

# The u-circle collapses at r = +pi/4, the v-circle at r = -pi/4.
CHART_LIMIT = math.pi / 4.0
TUBE_HALF_WIDTH = math.pi / 8.0
_SEAM_TOL = 1e-12


def circle_radii(r) -> Tuple[np.ndarray, np.ndarray]:
    """Radii (a, b) of the flat torus S^1(a) x S^1(b) at Fermi distance r."""
    r = np.asarray(r, dtype=float)
    return INV_SQRT2 * (np.cos(r) - np.sin(r)), INV_SQRT2 * (np.cos(r) + np.sin(r))


def fermi_metric(r) -> Tuple[np.ndarray, np.ndarray]:
    """Diagonal coefficients (w_uu, w_vv) of the level metric w(r); w_uv = 0."""
    a, b = circle_radii(r)
    return a * a, b * b


def check_chart(r, limit: float = CHART_LIMIT) -> None:
    peak = float(np.max(np.abs(r))) if np.size(r) else 0.0
    if not peak < limit:
        raise ChartDomainError(f"Fermi distance {peak:.6g} outside chart |r| < {limit:.6g}")


def fermi_embedding(u, v, r) -> np.ndarray:
    """cos(r) C(u, v) + sin(r) nu_CC(u, v), vectorized; no chart check."""
    r = np.asarray(r, dtype=float)[..., None]
    return np.cos(r) * clifford_embedding(u, v) + np.sin(r) * clifford_normal_field(u, v)


def fermi_map(u: float, v: float, r: float) -> S3Point:
    """X(x, r) = exp_x(r nu_CC(x)) for |r| < pi/4."""
    check_chart(r)
    return S3Point(fermi_embedding(u, v, r))


def fermi_coordinates(points) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Closed-form inverse of the Fermi chart, vectorized over leading axes.

    Returns:
        (u, v, r) with u, v in (-pi, pi] and r = 1/2 arcsin(1 - 2 (p1^2 + p2^2))

    Raises:
        ChartDomainError: if a point lies outside the open tube |r| < pi/4
    """
    p = np.asarray(points, dtype=float)
    s = p[..., 0] ** 2 + p[..., 1] ** 2
    if np.any(s <= _SEAM_TOL) or np.any(s >= 1.0 - _SEAM_TOL):
        raise ChartDomainError("point outside the Fermi tube (a circle factor has collapsed)")
    r = 0.5 * np.arcsin(np.clip(1.0 - 2.0 * s, -1.0, 1.0))
    u = np.arctan2(p[..., 1], p[..., 0])
    v = np.arctan2(p[..., 3], p[..., 2])
    return u, v, r


def fermi_invert(p) -> Tuple[float, float, float]:
    """(u, v, r) of a single point of the tube."""
    x = p.x if isinstance(p, S3Point) else np.asarray(p, dtype=float)
    u, v, r = fermi_coordinates(x)
    return float(u), float(v), float(r)
