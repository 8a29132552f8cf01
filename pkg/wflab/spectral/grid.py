"""Grid and scalar-field types on the flat parameter torus [0, 2pi)^2."""

import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from ..errors import InvalidFieldError

MIN_GRID_POINTS = 16


@dataclass(frozen=True)
class GridSpec:
    """Uniform periodic n x n grid; u_i = 2*pi*i/n along axis 0, v_j along axis 1."""

    n: int = 64

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or isinstance(self.n, bool):
            raise InvalidFieldError(f"grid size must be an integer, got {self.n!r}")
        if self.n < MIN_GRID_POINTS or self.n % 2:
            raise InvalidFieldError(
                f"grid size must be even and >= {MIN_GRID_POINTS}, got {self.n}")

    @property
    def spacing(self) -> float:
        return 2.0 * math.pi / self.n

    @property
    def nodes(self) -> np.ndarray:
        return self.spacing * np.arange(self.n)

    @property
    def mesh(self):
        """Return (U, V) coordinate arrays with 'ij' indexing."""
        return np.meshgrid(self.nodes, self.nodes, indexing="ij")

    @property
    def cell_area(self) -> float:
        """Flat area weight per node: sqrt(det g_CC) * (2pi/n)^2 with sqrt(det g_CC) = 1/2."""
        return 0.5 * self.spacing ** 2


Number = Union[int, float]


@dataclass(frozen=True, eq=False)
class ScalarField:
    """Real doubly periodic function sampled on a GridSpec (no duplicated seam)."""

    grid: GridSpec
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=float, copy=True)
        if values.shape != (self.grid.n, self.grid.n):
            raise InvalidFieldError(
                f"field shape {values.shape} does not match grid {self.grid.n}x{self.grid.n}")
        if not np.all(np.isfinite(values)):
            raise InvalidFieldError("field contains non-finite values")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_function(cls, grid: GridSpec, fn: Callable[[np.ndarray, np.ndarray], np.ndarray]) -> "ScalarField":
        """Sample fn(u, v) on the grid."""
        U, V = grid.mesh
        return cls(grid, np.broadcast_to(fn(U, V), U.shape))

    @classmethod
    def constant(cls, grid: GridSpec, value: float = 0.0) -> "ScalarField":
        return cls(grid, np.full((grid.n, grid.n), float(value)))

    @classmethod
    def zeros(cls, grid: GridSpec) -> "ScalarField":
        return cls.constant(grid, 0.0)

    def with_values(self, values: np.ndarray) -> "ScalarField":
        return ScalarField(self.grid, values)

    def sup_norm(self) -> float:
        return float(np.max(np.abs(self.values)))

    def _other_values(self, other):
        if isinstance(other, ScalarField):
            if other.grid != self.grid:
                raise InvalidFieldError("fields live on different grids")
            return other.values
        return other

    def __add__(self, other) -> "ScalarField":
        return self.with_values(self.values + self._other_values(other))

    __radd__ = __add__

    def __sub__(self, other) -> "ScalarField":
        return self.with_values(self.values - self._other_values(other))

    def __rsub__(self, other) -> "ScalarField":
        return self.with_values(self._other_values(other) - self.values)

    def __mul__(self, other) -> "ScalarField":
        return self.with_values(self.values * self._other_values(other))

    __rmul__ = __mul__

    def __truediv__(self, other: Number) -> "ScalarField":
        return self.with_values(self.values / self._other_values(other))

    def __neg__(self) -> "ScalarField":
        return self.with_values(-self.values)

    def __repr__(self) -> str:
        return f"ScalarField(n={self.grid.n}, sup={self.sup_norm():.3e})"


def trig_mode(grid: GridSpec, m: int, n: int, kind: str = "cos", amplitude: float = 1.0) -> ScalarField:
    """amplitude * cos(m u + n v) or amplitude * sin(m u + n v)."""
    if kind not in ("cos", "sin"):
        raise InvalidFieldError(f"kind must be 'cos' or 'sin', got {kind!r}")
    fn = np.cos if kind == "cos" else np.sin
    return ScalarField.from_function(grid, lambda U, V: amplitude * fn(m * U + n * V))


def band_limited_random_field(grid: GridSpec, seed: int, max_mode: int = 4,
                              amplitude: float = 1.0) -> ScalarField:
    """
    Seeded random trigonometric polynomial scaled to a given sup-norm.

    Coefficients are drawn uniform in [-1, 1] for cos and sin of every mode with
    max(|m|, |n|) <= max_mode (one representative per +-(m, n) pair, plus the
    constant), then the field is rescaled so that its sup-norm equals amplitude.
    """
    rng = np.random.default_rng(seed)
    U, V = grid.mesh
    values = np.zeros_like(U)
    for m in range(0, max_mode + 1):
        for n in range(-max_mode, max_mode + 1):
            if m == 0 and n < 0:
                continue
            a, b = rng.uniform(-1.0, 1.0, size=2)
            phase = m * U + n * V
            values += a * np.cos(phase)
            if m or n:
                values += b * np.sin(phase)
    peak = np.max(np.abs(values))
    if amplitude == 0.0 or peak == 0.0:
        return ScalarField.zeros(grid)
    return ScalarField(grid, values * (amplitude / peak))
