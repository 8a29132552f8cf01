"""Conformal vector fields on S^3: Killing fields A p and projected parallel fields a - <a, p> p."""

from dataclasses import dataclass
from typing import Iterable, Tuple

import numpy as np

from ..errors import ConfigError
from ..geometry.sphere import S3Point, TangentVector

BASIS_SIZE = 10
NORMAL_DIRECTIONS = 8

# (kind, data): "xi" fields carry the index of e_a, "killing" fields the plane (i, j).
# Fields 9 and 10 rotate along the circle factors of CC and have zero normal part there.
BASIS_SPEC: Tuple[Tuple[str, Tuple[int, ...]], ...] = (
    ("xi", (0,)), ("xi", (1,)), ("xi", (2,)), ("xi", (3,)),
    ("killing", (0, 2)), ("killing", (0, 3)), ("killing", (1, 2)), ("killing", (1, 3)),
    ("killing", (0, 1)), ("killing", (2, 3)),
)

BASIS_LABELS = (
    "xi_e1", "xi_e2", "xi_e3", "xi_e4",
    "rot_13", "rot_14", "rot_23", "rot_24",
    "rot_12", "rot_34",
)


def rotation_generator(i: int, j: int) -> np.ndarray:
    """Antisymmetric E_ij - E_ji."""
    A = np.zeros((4, 4))
    A[i, j] = 1.0
    A[j, i] = -1.0
    return A


@dataclass(frozen=True, eq=False)
class ConformalParams:
    """Coefficients z in the open unit ball of R^10."""

    z: np.ndarray

    def __post_init__(self):
        z = np.array(self.z, dtype=float, copy=True).reshape(-1)
        if z.shape != (BASIS_SIZE,):
            raise ConfigError(f"conformal parameters need {BASIS_SIZE} entries, got {z.size}")
        if not np.all(np.isfinite(z)):
            raise ConfigError("conformal parameters must be finite")
        if not np.linalg.norm(z) < 1.0:
            raise ConfigError(f"|z| must be < 1, got {np.linalg.norm(z):.6g}")
        z.setflags(write=False)
        object.__setattr__(self, "z", z)

    @classmethod
    def zero(cls) -> "ConformalParams":
        return cls(np.zeros(BASIS_SIZE))

    @classmethod
    def unit(cls, k: int, scale: float = 1e-4) -> "ConformalParams":
        """scale * e_k for 1-based k."""
        z = np.zeros(BASIS_SIZE)
        z[k - 1] = scale
        return cls(z)

    @classmethod
    def parse(cls, text: str) -> "ConformalParams":
        """Parse ten comma-separated reals."""
        try:
            values = [float(item) for item in str(text).split(",") if item.strip()]
        except ValueError as e:
            raise ConfigError(f"invalid conformal parameters {text!r}: {e}")
        return cls(np.array(values))

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.z))

    def __str__(self) -> str:
        return ",".join(f"{value:.17g}" for value in self.z)


def conformal_generator(z: ConformalParams) -> Tuple[np.ndarray, np.ndarray]:
    """(A_z, a_z) with V_z(p) = A_z p + a_z - <a_z, p> p."""
    A = np.zeros((4, 4))
    a = np.zeros(4)
    for coeff, (kind, data) in zip(z.z, BASIS_SPEC):
        if kind == "xi":
            a[data[0]] += coeff
        else:
            A += coeff * rotation_generator(*data)
    return A, a


def field_values(A: np.ndarray, a: np.ndarray, points: np.ndarray) -> np.ndarray:
    """A p + a - <a, p> p for points on the last axis."""
    return points @ A.T + a - (points @ a)[..., None] * points


def basis_field_values(k: int, points: np.ndarray) -> np.ndarray:
    """Values of the k-th (1-based) basis field."""
    if not 1 <= k <= BASIS_SIZE:
        raise ConfigError(f"basis index must lie in 1..{BASIS_SIZE}, got {k}")
    _, A, a = list(basis_generators())[k - 1]
    return field_values(A, a, points)


def conformal_field(z: ConformalParams, p: S3Point) -> TangentVector:
    """V_z(p) = sum z_k v_k(p), tangent to S^3."""
    A, a = conformal_generator(z)
    return TangentVector(p, field_values(A, a, p.x))


def basis_generators() -> Iterable[Tuple[str, np.ndarray, np.ndarray]]:
    """(label, A, a) for each basis field."""
    for label, (kind, data) in zip(BASIS_LABELS, BASIS_SPEC):
        if kind == "xi":
            a = np.zeros(4)
            a[data[0]] = 1.0
            yield label, np.zeros((4, 4)), a
        else:
            yield label, rotation_generator(*data), np.zeros(4)
