"""Semi-implicit time stepping of d_t rho = G(rho) with diagnostics."""

import logging
import time
from collections import deque
from typing import Any, Dict, List, Optional, Tuple

from ..errors import ChartDomainError, FlowAbortedError, FlowUndefinedError, ImmersionError
from ..geometry.surface import GraphGeometry, graph_geometry, willmore_energy
from ..spectral.center import center_basis, project_center
from ..spectral.grid import ScalarField
from ..spectral.operators import dealias, imex_resolvent, l2_norm, tcc_apply
from .models import FlowConfig
from .trajectory import FlowTrajectory
from .velocity import velocity_from_geometry

logger = logging.getLogger(__name__)


class FlowEngine:
    """Integrates the graph flow with first-order IMEX steps built on T_CC."""

    def __init__(self, config: Optional[FlowConfig] = None):
        """
        Initialize engine.

        Args:
            config: Flow parameters (defaults to FlowConfig())
        """
        self.config = config or FlowConfig()
        self.debug_logs: deque = deque(maxlen=20)

    def evaluate(self, rho: ScalarField) -> Tuple[ScalarField, GraphGeometry]:
        """Velocity together with the geometry it was computed from."""
        geometry = graph_geometry(rho)
        G = velocity_from_geometry(geometry, self.config.a0_floor, self.config.variant)
        return G, geometry

    def velocity(self, rho: ScalarField) -> ScalarField:
        return self.evaluate(rho)[0]

    def step(self, rho: ScalarField, dt: Optional[float] = None,
             velocity: Optional[ScalarField] = None) -> ScalarField:
        """
        rho+ = (I + dt T)^{-1} (rho + dt (G(rho) + T rho)), T = scale * T_CC.

        The stiff linear part is solved exactly in Fourier space; only the
        nonlinear remainder G + T rho is explicit.
        """
        dt = self.config.dt if dt is None else dt
        scale = self.config.linear_scale
        G = self.velocity(rho) if velocity is None else velocity
        explicit = rho + (G + tcc_apply(rho, scale)) * dt
        return dealias(imex_resolvent(explicit, dt, scale))

    def _log_debug(self, step: int, t: float, energy: float, residual: float, started: float) -> None:
        self.debug_logs.append({
            "step": step,
            "t": round(t, 12),
            "energy": energy,
            "residual": residual,
            "elapsed_ms": round((time.perf_counter() - started) * 1000.0, 2),
        })

    def get_debug_logs(self) -> List[Dict[str, Any]]:
        return list(self.debug_logs)

    def _abort(self, reason: str, step: int, t: float, **diagnostics) -> FlowAbortedError:
        logger.error(f"Flow aborted at step {step} (t={t:.4g}): {reason}")
        return FlowAbortedError(reason, step, t, diagnostics, self.get_debug_logs())

    def run(self, rho0: ScalarField, config: Optional[FlowConfig] = None) -> FlowTrajectory:
        """
        Integrate until t_end or until ||G(rho_t)||_inf < residual_tol.

        Raises:
            FlowAbortedError: on chart exit, umbilic guard, degenerate metric, or
                an energy increase above the per-step slack
        """
        cfg = config or self.config
        self.config = cfg
        basis = center_basis(rho0.grid)
        trajectory = FlowTrajectory()
        started = time.perf_counter()
        n_steps = int(round(cfg.t_end / cfg.dt))

        rho = dealias(rho0)
        previous_energy = None
        step = 0
        t = 0.0
        logger.info(f"Flow run: n={rho0.grid.n}, dt={cfg.dt}, t_end={cfg.t_end}, variant={cfg.variant}")

        while True:
            try:
                G, geometry = self.evaluate(rho)
            except (ChartDomainError, ImmersionError, FlowUndefinedError) as e:
                raise self._abort(str(e), step, t, error=type(e).__name__) from e
            energy = willmore_energy(geometry)
            residual = G.sup_norm()
            self._log_debug(step, t, energy, residual, started)

            if previous_energy is not None and energy > previous_energy + cfg.energy_slack:
                raise self._abort("energy increase", step, t,
                                  energy=energy, previous_energy=previous_energy,
                                  increase=energy - previous_energy)
            previous_energy = energy

            converged = residual < cfg.residual_tol
            finished = converged or step >= n_steps
            if step % cfg.record_every == 0 or finished:
                split = project_center(rho, basis)
                trajectory.append(t, rho, energy, residual,
                                  l2_norm(split.center_part), l2_norm(split.stable_part))
            if finished:
                trajectory.converged = converged
                break

            rho = self.step(rho, cfg.dt, G)
            step += 1
            t = step * cfg.dt
            peak = rho.sup_norm()
            if peak >= cfg.tube_half_width:
                raise self._abort("chart exit", step, t, sup_norm=peak, tube_half_width=cfg.tube_half_width)

        trajectory.steps = step
        trajectory.wall_time = time.perf_counter() - started
        logger.info(f"Flow finished after {step} steps: converged={trajectory.converged}, "
                    f"residual={trajectory.residuals[-1]:.3e}, energy={trajectory.energies[-1]:.12f}")
        return trajectory


def step(rho: ScalarField, dt: float, config: Optional[FlowConfig] = None) -> ScalarField:
    """One semi-implicit Euler step of the flow."""
    return FlowEngine(config).step(rho, dt)


def run(rho0: ScalarField, config: Optional[FlowConfig] = None) -> FlowTrajectory:
    return FlowEngine(config).run(rho0)
