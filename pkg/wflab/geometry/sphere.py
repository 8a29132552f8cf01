"""Points and tangent vectors of S^3, the Clifford torus, stereographic projection."""

import math
from dataclasses import dataclass

import numpy as np

from ..errors import InvalidFieldError, PoleProximityError

INV_SQRT2 = 1.0 / math.sqrt(2.0)
UNIT_TOL = 1e-12
TANGENT_TOL = 1e-10
POLE_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class S3Point:
    """Point of the unit 3-sphere in ambient R^4."""

    x: np.ndarray

    def __post_init__(self):
        x = np.array(self.x, dtype=float, copy=True).reshape(4)
        if abs(np.linalg.norm(x) - 1.0) > UNIT_TOL:
            raise InvalidFieldError(f"point not on S^3: |x| = {np.linalg.norm(x):.16g}")
        x.setflags(write=False)
        object.__setattr__(self, "x", x)

    @classmethod
    def normalized(cls, x) -> "S3Point":
        x = np.asarray(x, dtype=float)
        return cls(x / np.linalg.norm(x))


@dataclass(frozen=True, eq=False)
class TangentVector:
    """Vector v in T_base S^3, i.e. <v, base> = 0."""

    base: S3Point
    v: np.ndarray

    def __post_init__(self):
        v = np.array(self.v, dtype=float, copy=True).reshape(4)
        if abs(float(v @ self.base.x)) > TANGENT_TOL:
            raise InvalidFieldError(f"vector not tangent to S^3: <v, p> = {float(v @ self.base.x):.3e}")
        v.setflags(write=False)
        object.__setattr__(self, "v", v)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.v))


def clifford_embedding(u, v) -> np.ndarray:
    """(1/sqrt2)(cos u, sin u, cos v, sin v), vectorized; last axis holds R^4."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    return INV_SQRT2 * np.stack([np.cos(u), np.sin(u), np.cos(v), np.sin(v)], axis=-1)


def clifford_normal_field(u, v) -> np.ndarray:
    """(1/sqrt2)(-cos u, -sin u, cos v, sin v), vectorized."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    return INV_SQRT2 * np.stack([-np.cos(u), -np.sin(u), np.cos(v), np.sin(v)], axis=-1)


def clifford_point(u: float, v: float) -> S3Point:
    return S3Point(clifford_embedding(u, v))


def clifford_normal(u: float, v: float) -> TangentVector:
    return TangentVector(clifford_point(u, v), clifford_normal_field(u, v))


def _pole_frame(pole: np.ndarray) -> np.ndarray:
    """Orthonormal basis (rows) of the hyperplane orthogonal to pole."""
    # identity columns ordered so that pole = e4 yields the frame e1, e2, e3
    order = np.argsort(-np.abs(pole), kind="stable")
    drop = order[0]
    columns = [pole] + [np.eye(4)[i] for i in range(4) if i != drop]
    Q, R = np.linalg.qr(np.column_stack(columns))
    Q = Q * np.sign(np.diag(R))
    return Q[:, 1:].T


def stereographic(p, pole=(0.0, 0.0, 0.0, 1.0)) -> np.ndarray:
    """
    Stereographic projection of points of S^3 from pole onto R^3.

    Coordinates are taken in the orthonormal frame of pole-perpendicular space
    (for pole = e4 this is the standard x_i / (1 - x_4)). Vectorized over leading axes.
    """
    p = np.asarray(p, dtype=float)
    pole = np.asarray(pole, dtype=float)
    pole = pole / np.linalg.norm(pole)
    height = p @ pole
    if np.any(np.linalg.norm(p - pole, axis=-1) < POLE_TOL):
        raise PoleProximityError("point within 1e-8 of the projection pole")
    frame = _pole_frame(pole)
    return (p @ frame.T) / np.asarray(1.0 - height)[..., None]


def inverse_stereographic(y, pole=(0.0, 0.0, 0.0, 1.0)) -> np.ndarray:
    """Inverse of stereographic(); returns points of S^3 with the same leading shape."""
    y = np.asarray(y, dtype=float)
    pole = np.asarray(pole, dtype=float)
    pole = pole / np.linalg.norm(pole)
    frame = _pole_frame(pole)
    r2 = np.sum(y * y, axis=-1)[..., None]
    return (2.0 * (y @ frame) + (r2 - 1.0) * pole) / (r2 + 1.0)


def geodesic_distance(p, q) -> np.ndarray:
    """Great-circle distance on S^3, vectorized."""
    dots = np.clip(np.sum(np.asarray(p) * np.asarray(q), axis=-1), -1.0, 1.0)
    return np.arccos(dots)
