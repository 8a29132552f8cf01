"""One-parameter groups T_z(t) of conformal transformations, integrated with RK4."""

import logging
import math

import numpy as np

from ..errors import InvalidFieldError
from ..geometry.sphere import S3Point
from .fields import ConformalParams, conformal_generator, field_values

logger = logging.getLogger(__name__)

RK4_STEP = 1e-3


class ConformalFlow:
    """
    Classical RK4 for dp/dt = V_z(p) on S^3.

    Each stage uses the same (A_z, a_z); the state is projected back onto the
    sphere after every step.
    """

    def __init__(self, z: ConformalParams, h: float = RK4_STEP):
        if not 0.0 < h <= RK4_STEP:
            raise InvalidFieldError(f"RK4 step must lie in (0, {RK4_STEP}], got {h}")
        self.z = z
        self.h = h
        self.A, self.a = conformal_generator(z)

    def rhs(self, p: np.ndarray) -> np.ndarray:
        return field_values(self.A, self.a, p)

    def step(self, p: np.ndarray, dt: float) -> np.ndarray:
        k1 = self.rhs(p)
        k2 = self.rhs(p + 0.5 * dt * k1)
        k3 = self.rhs(p + 0.5 * dt * k2)
        k4 = self.rhs(p + dt * k3)
        p = p + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        return p / np.linalg.norm(p, axis=-1, keepdims=True)

    def integrate(self, points: np.ndarray, t: float) -> np.ndarray:
        """Flow every point (last axis R^4) for time t; ceil(|t|/h) equal steps."""
        p = np.array(points, dtype=float, copy=True)
        if t == 0.0:
            return p
        steps = max(1, math.ceil(abs(t) / self.h - 1e-9))
        dt = t / steps
        for _ in range(steps):
            p = self.step(p, dt)
        return p


def moebius_transform(z: ConformalParams, points: np.ndarray, t: float = 1.0) -> np.ndarray:
    """T_z(t) applied to an array of points of S^3."""
    points = np.asarray(points, dtype=float)
    norms = np.linalg.norm(points, axis=-1)
    if np.max(np.abs(norms - 1.0)) > 1e-10:
        raise InvalidFieldError("points must lie on S^3")
    return ConformalFlow(z).integrate(points, t)


def moebius_flow(z: ConformalParams, t: float, p0: S3Point) -> S3Point:
    """T_z(t)(p0)."""
    if not math.isfinite(t):
        raise InvalidFieldError(f"flow time must be finite, got {t}")
    return S3Point.normalized(ConformalFlow(z).integrate(p0.x, t))
