"""Recorded flow trajectories and rate fitting."""

from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Tuple

import numpy as np

from ..errors import InsufficientDataError
from ..spectral.grid import ScalarField
from ..spectral.operators import l2_norm, mode_filter

MIN_FIT_SAMPLES = 5
SLOWEST_STABLE_RATE = 2.0
FLOOR_MARGIN = 100.0
TRAJECTORY_COLUMNS = ("t", "energy", "residual", "center_norm", "stable_norm")


@dataclass
class FlowTrajectory:
    """Time-stamped states with per-record diagnostics."""

    times: List[float] = field(default_factory=list)
    states: List[ScalarField] = field(default_factory=list)
    energies: List[float] = field(default_factory=list)
    residuals: List[float] = field(default_factory=list)
    center_norms: List[float] = field(default_factory=list)
    stable_norms: List[float] = field(default_factory=list)
    converged: bool = False
    steps: int = 0
    wall_time: float = 0.0

    def append(self, t: float, state: ScalarField, energy: float, residual: float,
               center_norm: float, stable_norm: float) -> None:
        if self.times and t <= self.times[-1]:
            raise ValueError(f"trajectory times must increase: {t} after {self.times[-1]}")
        self.times.append(float(t))
        self.states.append(state)
        self.energies.append(float(energy))
        self.residuals.append(float(residual))
        self.center_norms.append(float(center_norm))
        self.stable_norms.append(float(stable_norm))

    def __len__(self) -> int:
        return len(self.times)

    @property
    def terminal_state(self) -> Optional[ScalarField]:
        """rho_infinity: the last recorded state (no extrapolation)."""
        return self.states[-1] if self.states else None

    def distances_to_terminal(self, modes: Optional[Iterable[Tuple[int, int]]] = None) -> np.ndarray:
        """||rho_t - rho_infinity||_{L^2(CC)} at every record, optionally restricted to Fourier modes."""
        terminal = self.terminal_state
        if modes is None:
            return np.array([l2_norm(state - terminal) for state in self.states])
        modes = list(modes)
        return np.array([l2_norm(mode_filter(state - terminal, modes)) for state in self.states])

    def terminal_error_floor(self) -> float:
        """
        L^2 size of rho_infinity - rho_* implied by the terminal residual.

        Distances to rho_infinity below this are dominated by the terminal state's
        own error and carry no rate information.
        """
        if not self.states:
            return 0.0
        grid = self.terminal_state.grid
        area = grid.cell_area * grid.n * grid.n
        return self.residuals[-1] * np.sqrt(area) / SLOWEST_STABLE_RATE

    def center_variation(self) -> float:
        """Total variation of ||pi^c rho_t|| along the record."""
        if len(self.center_norms) < 2:
            return 0.0
        return float(np.sum(np.abs(np.diff(self.center_norms))))

    def stable_monotone_after(self, t0: float = 1.0, slack: float = 1e-9) -> bool:
        """True if ||pi^s rho_t|| never grows by more than slack after time t0."""
        norms = [s for t, s in zip(self.times, self.stable_norms) if t >= t0]
        return all(b <= a + slack for a, b in zip(norms, norms[1:]))

    def max_energy_increase(self) -> float:
        if len(self.energies) < 2:
            return 0.0
        return float(max(0.0, np.max(np.diff(self.energies))))

    def rows(self) -> List[Tuple[float, float, float, float, float]]:
        return list(zip(self.times, self.energies, self.residuals, self.center_norms, self.stable_norms))

    def summary(self) -> Dict[str, Any]:
        return {
            "records": len(self),
            "steps": self.steps,
            "converged": self.converged,
            "t_final": self.times[-1] if self.times else None,
            "energy_final": self.energies[-1] if self.energies else None,
            "residual_final": self.residuals[-1] if self.residuals else None,
            "center_variation": self.center_variation(),
            "wall_time_s": round(self.wall_time, 3),
        }


def decade_window(trajectory: FlowTrajectory, upper: float = 0.5, lower: float = 0.05,
                  modes: Optional[Iterable[Tuple[int, int]]] = None) -> Tuple[float, float]:
    """
    Opening window: first times at which ||rho_t - rho_inf|| drops below
    upper * e0 and lower * e0, with e0 the initial distance.
    """
    distances = trajectory.distances_to_terminal(modes)
    if len(distances) < MIN_FIT_SAMPLES or distances[0] == 0.0:
        raise InsufficientDataError("trajectory too short or already at equilibrium")
    e0 = distances[0]
    times = np.asarray(trajectory.times)
    below_upper = np.nonzero(distances <= upper * e0)[0]
    below_lower = np.nonzero(distances <= lower * e0)[0]
    if not len(below_upper) or not len(below_lower):
        raise InsufficientDataError("error never decays through the fit decade")
    return float(times[below_upper[0]]), float(times[below_lower[0]])


def final_decade_window(trajectory: FlowTrajectory, modes: Optional[Iterable[Tuple[int, int]]] = None,
                        margin: float = FLOOR_MARGIN) -> Tuple[float, float]:
    """
    Default fit window: the last full decade of ||rho_t - rho_inf|| above the terminal
    error floor, i.e. the first times at which the distance drops below
    10 * margin * floor and margin * floor.

    Raises:
        InsufficientDataError: if the trajectory is too short, has no error floor,
            or never spans that decade
    """
    if len(trajectory) < MIN_FIT_SAMPLES:
        raise InsufficientDataError(f"trajectory has {len(trajectory)} records, need {MIN_FIT_SAMPLES}")
    bottom = margin * trajectory.terminal_error_floor()
    if bottom <= 0.0:
        raise InsufficientDataError("terminal residual is zero, no error floor to fit above")
    top = 10.0 * bottom
    distances = trajectory.distances_to_terminal(modes)
    times = np.asarray(trajectory.times)
    if distances[0] <= top:
        raise InsufficientDataError(f"initial distance {distances[0]:.3e} is within a decade of the floor {bottom:.3e}")
    below_top = np.nonzero(distances <= top)[0]
    below_bottom = np.nonzero(distances <= bottom)[0]
    if not len(below_top) or not len(below_bottom):
        raise InsufficientDataError(f"error never decays to the fit floor {bottom:.3e}")
    return float(times[below_top[0]]), float(times[below_bottom[0]])


def decay_rate(trajectory: FlowTrajectory, window: Tuple[float, float] = None,
               modes: Optional[Iterable[Tuple[int, int]]] = None) -> float:
    """
    Negated least-squares slope of log ||rho_t - rho_inf||_{L^2} over the window
    (the final decade by default), optionally restricted to Fourier modes.
    """
    modes = None if modes is None else list(modes)
    if window is None:
        window = final_decade_window(trajectory, modes)
    t_lo, t_hi = window
    times = np.asarray(trajectory.times)
    distances = trajectory.distances_to_terminal(modes)
    mask = (times >= t_lo) & (times <= t_hi) & (distances > 0.0)
    if np.count_nonzero(mask) < MIN_FIT_SAMPLES:
        raise InsufficientDataError(
            f"only {np.count_nonzero(mask)} samples in window [{t_lo}, {t_hi}], need {MIN_FIT_SAMPLES}")
    slope, _ = np.polyfit(times[mask], np.log(distances[mask]), 1)
    return float(-slope)
