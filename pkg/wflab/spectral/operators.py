"""
Fourier-multiplier calculus on the Clifford torus.

The Clifford torus is isometric to the flat square torus with metric
g_CC = 1/2 (du^2 + dv^2), so every operator here is diagonal in the Fourier
basis e^{i(m u + n v)}:

    d/du          -> i m
    Laplace_CC    -> -2 (m^2 + n^2)
    T_CC          -> 1/4 (lam + 4)(lam + 2),  lam = -2 (m^2 + n^2)
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, List, Tuple

import numpy as np

from ..errors import InvalidFieldError
from .grid import GridSpec, ScalarField

logger = logging.getLogger(__name__)

MAX_DERIVATIVE_ORDER = 4


@lru_cache(maxsize=16)
def wavenumbers(n: int) -> np.ndarray:
    """Integer frequencies in standard FFT layout."""
    k = np.fft.fftfreq(n, d=1.0 / n).round().astype(int)
    k.setflags(write=False)
    return k


@lru_cache(maxsize=16)
def _frequency_mesh(n: int) -> Tuple[np.ndarray, np.ndarray]:
    k = wavenumbers(n)
    M, N = np.meshgrid(k, k, indexing="ij")
    M.setflags(write=False)
    N.setflags(write=False)
    return M, N


def laplace_symbol(m, n):
    return -2.0 * (np.asarray(m) ** 2 + np.asarray(n) ** 2)


def tcc_symbol(lam, scale: float = 1.0):
    """Symbol of T_CC as a function of the Laplace eigenvalue lam."""
    lam = np.asarray(lam, dtype=float)
    return scale * 0.25 * (lam + 4.0) * (lam + 2.0)


@dataclass(frozen=True, eq=False)
class SpectralOperator:
    """Real Fourier multiplier on an n x n grid (full FFT layout)."""

    multipliers: np.ndarray
    name: str = "operator"

    def __post_init__(self):
        mult = np.array(self.multipliers, dtype=float, copy=True)
        if mult.ndim != 2 or mult.shape[0] != mult.shape[1]:
            raise InvalidFieldError(f"multipliers must be square, got {mult.shape}")
        mult.setflags(write=False)
        object.__setattr__(self, "multipliers", mult)

    @property
    def n(self) -> int:
        return self.multipliers.shape[0]

    def _half(self) -> np.ndarray:
        return self.multipliers[:, : self.n // 2 + 1]

    def apply(self, f: ScalarField) -> ScalarField:
        _check_field(f, self.n)
        f_hat = np.fft.rfft2(f.values)
        return f.with_values(np.fft.irfft2(self._half() * f_hat, s=f.values.shape))

    def solve_shifted(self, f: ScalarField, dt: float) -> ScalarField:
        """(I + dt * op)^{-1} f; requires 1 + dt * multipliers != 0 everywhere."""
        _check_field(f, self.n)
        denom = 1.0 + dt * self._half()
        f_hat = np.fft.rfft2(f.values)
        return f.with_values(np.fft.irfft2(f_hat / denom, s=f.values.shape))

    def __call__(self, f: ScalarField) -> ScalarField:
        return self.apply(f)


@lru_cache(maxsize=16)
def laplace_operator(n: int) -> SpectralOperator:
    M, N = _frequency_mesh(n)
    return SpectralOperator(laplace_symbol(M, N), name="laplace_cc")


@lru_cache(maxsize=32)
def tcc_operator(n: int, scale: float = 1.0) -> SpectralOperator:
    M, N = _frequency_mesh(n)
    return SpectralOperator(tcc_symbol(laplace_symbol(M, N), scale), name="tcc")


def _check_field(f: ScalarField, n: int = None) -> None:
    if not isinstance(f, ScalarField):
        raise InvalidFieldError(f"expected ScalarField, got {type(f).__name__}")
    if n is not None and f.grid.n != n:
        raise InvalidFieldError(f"field on {f.grid.n}-grid, operator on {n}-grid")


def derivative_multiplier(n: int, a: int, b: int) -> np.ndarray:
    """(i m)^a (i n)^b on the rfft half-plane; Nyquist zeroed along odd-order axes."""
    k = wavenumbers(n)
    km = k.astype(complex)
    kn = k[: n // 2 + 1].astype(complex)
    kn[-1] = abs(kn[-1])
    if a % 2:
        km[n // 2] = 0.0
    if b % 2:
        kn[-1] = 0.0
    return np.outer((1j * km) ** a, (1j * kn) ** b)


def fourier_diff(f: ScalarField, orders: Tuple[int, int]) -> ScalarField:
    """d_u^a d_v^b f by Fourier multiplier; exact for band-limited f."""
    _check_field(f)
    a, b = orders
    if a < 0 or b < 0 or a + b > MAX_DERIVATIVE_ORDER:
        raise InvalidFieldError(f"derivative orders {orders} outside a, b >= 0, a + b <= 4")
    return f.with_values(spectral_derivatives(f.values, [(a, b)])[0])


def spectral_derivatives(values: np.ndarray, orders: List[Tuple[int, int]]) -> List[np.ndarray]:
    """
    Several derivatives of stacked periodic arrays with one forward transform.

    Args:
        values: array of shape (..., n, n)
        orders: list of (a, b) derivative orders

    Returns:
        List of arrays shaped like values, one per requested order
    """
    n = values.shape[-1]
    shape = values.shape[-2:]
    v_hat = np.fft.rfft2(values)
    return [np.fft.irfft2(derivative_multiplier(n, a, b) * v_hat, s=shape) for a, b in orders]


def laplace_cc(f: ScalarField) -> ScalarField:
    """Delta_CC f = 2 (f_uu + f_vv)."""
    _check_field(f)
    return laplace_operator(f.grid.n).apply(f)


def tcc_apply(f: ScalarField, scale: float = 1.0) -> ScalarField:
    """T_CC f = 1/4 (Delta_CC + 4)(Delta_CC + 2) f."""
    _check_field(f)
    return tcc_operator(f.grid.n, scale).apply(f)


def imex_resolvent(f: ScalarField, dt: float, scale: float = 1.0) -> ScalarField:
    """(I + dt T_CC)^{-1} f; well defined because every symbol of T_CC is >= 0."""
    _check_field(f)
    if not dt > 0:
        raise InvalidFieldError(f"dt must be positive, got {dt}")
    return tcc_operator(f.grid.n, scale).solve_shifted(f, dt)


def tcc_spectrum(max_freq: int) -> List[Tuple[int, int, float]]:
    """All (m, n, eigenvalue of T_CC) with |m|, |n| <= max_freq."""
    if max_freq < 1:
        raise InvalidFieldError(f"max_freq must be >= 1, got {max_freq}")
    rows = []
    for m in range(-max_freq, max_freq + 1):
        for n in range(-max_freq, max_freq + 1):
            rows.append((m, n, float(tcc_symbol(laplace_symbol(m, n)))))
    return rows


def kernel_dimension(spectrum: List[Tuple[int, int, float]], tol: float = 1e-12) -> int:
    return sum(1 for _, _, value in spectrum if abs(value) <= tol)


def smallest_positive_eigenvalue(spectrum: List[Tuple[int, int, float]], tol: float = 1e-12) -> float:
    return min(value for _, _, value in spectrum if value > tol)


@lru_cache(maxsize=16)
def _dealias_mask(n: int) -> np.ndarray:
    k = np.abs(wavenumbers(n))
    cutoff = n // 3
    keep_m = k <= cutoff
    keep_n = k[: n // 2 + 1] <= cutoff
    mask = np.outer(keep_m, keep_n).astype(float)
    mask.setflags(write=False)
    return mask


def dealias_values(values: np.ndarray) -> np.ndarray:
    """2/3-rule filter: drop every mode with |m| > n/3 or |n| > n/3."""
    n = values.shape[-1]
    return np.fft.irfft2(_dealias_mask(n) * np.fft.rfft2(values), s=values.shape[-2:])


def dealias(f: ScalarField) -> ScalarField:
    _check_field(f)
    return f.with_values(dealias_values(f.values))


def mode_filter(f: ScalarField, modes: Iterable[Tuple[int, int]]) -> ScalarField:
    """Keep the Fourier modes e^{i(mu+nv)} with (|m|, |n|) in modes; zero the rest."""
    _check_field(f)
    n = f.grid.n
    wanted = {(abs(int(a)), abs(int(b))) for a, b in modes}
    M, N = _frequency_mesh(n)
    M, N = np.abs(M[:, : n // 2 + 1]), np.abs(N[:, : n // 2 + 1])
    mask = np.zeros(M.shape)
    for a, b in wanted:
        mask[(M == a) & (N == b)] = 1.0
    return f.with_values(np.fft.irfft2(mask * np.fft.rfft2(f.values), s=f.values.shape))


def l2_inner(f: ScalarField, g: ScalarField) -> float:
    """<f, g>_{L^2(CC)} with the flat area element 1/2 du dv."""
    if f.grid != g.grid:
        raise InvalidFieldError("fields live on different grids")
    return float(f.grid.cell_area * np.sum(f.values * g.values))


def l2_norm(f: ScalarField) -> float:
    return float(np.sqrt(max(l2_inner(f, f), 0.0)))


def evaluate_at(values: np.ndarray, s: np.ndarray, t: np.ndarray) -> np.ndarray:
    """
    Evaluate the trigonometric interpolant of periodic samples at arbitrary points.

    Args:
        values: samples of shape (n, n) or stacked (F, n, n)
        s, t: 1-D arrays of evaluation coordinates (radians), same length P

    Returns:
        Array of shape (P,) or (F, P)
    """
    n = values.shape[-1]
    coeffs = np.fft.fft2(values) / (n * n)
    # Nyquist modes are not resolved by the interpolant
    coeffs[..., n // 2, :] = 0.0
    coeffs[..., :, n // 2] = 0.0
    k = wavenumbers(n)
    E_s = np.exp(1j * np.outer(np.asarray(s, dtype=float), k))
    E_t = np.exp(1j * np.outer(np.asarray(t, dtype=float), k))
    partial = E_s @ coeffs
    return np.real(np.sum(partial * E_t, axis=-1))
