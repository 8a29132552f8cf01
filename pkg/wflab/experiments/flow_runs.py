"""Flow experiments from seeded perturbations of the Clifford torus."""

import logging
import math
from pathlib import Path
from typing import Any, Dict, List

from ..errors import FlowAbortedError, InsufficientDataError
from ..flow.engine import FlowEngine
from ..flow.trajectory import FlowTrajectory, decay_rate, final_decade_window
from ..geometry.fermi import fermi_embedding
from ..output.preview import FieldPreviewOutput
from ..output.writers import write_field_csv, write_obj, write_table_csv, write_trajectory_csv
from ..spectral.grid import ScalarField, band_limited_random_field, trig_mode
from ..spectral.operators import l2_norm
from ..utils.helpers import format_duration, parallel_map
from .base import ExperimentReport, ExperimentType
from .models import ExperimentConfig

logger = logging.getLogger(__name__)

CLIFFORD_ENERGY = 2.0 * math.pi ** 2
RANDOM_MAX_MODE = 4
ENERGY_TOL = 1e-4
MIN_RANDOM_RATE = 1.8
COS2U_RATE = 6.0
COS2U_RATE_RTOL = 0.1
COS2U_MODES = ((2, 0),)
CENTER_VARIATION_FACTOR = 5.0
TRANSIENT = 1.0


def initial_field(cfg: ExperimentConfig, seed: int) -> ScalarField:
    if cfg.initial == "cos2u":
        return trig_mode(cfg.grid, 2, 0, "cos", cfg.amplitude)
    return band_limited_random_field(cfg.grid, seed, RANDOM_MAX_MODE, cfg.amplitude)


def write_snapshots(trajectory: FlowTrajectory, every: int, output_dir: Path) -> List[Path]:
    """Field CSV and projected OBJ mesh of every `every`-th record and of the terminal record."""
    indices = list(range(0, len(trajectory), every))
    if indices[-1] != len(trajectory) - 1:
        indices.append(len(trajectory) - 1)
    paths = []
    for i in indices:
        state = trajectory.states[i]
        U, V = state.grid.mesh
        paths.append(write_field_csv(output_dir / f"rho_{i:05d}.csv", state))
        paths.append(write_obj(output_dir / f"rho_{i:05d}.obj", fermi_embedding(U, V, state.values)))
    logger.debug(f"Wrote {len(indices)} snapshots to {output_dir}")
    return paths


def flow_run(cfg: ExperimentConfig, seed: int, output_dir: Path) -> Dict[str, Any]:
    """Run one trajectory and evaluate its convergence assertions."""
    tag = f"{cfg.initial}_seed{seed}"
    rho0 = initial_field(cfg, seed)
    engine = FlowEngine(cfg.flow)
    result: Dict[str, Any] = {"seed": seed, "tag": tag, "failures": [], "artifacts": []}

    try:
        trajectory = engine.run(rho0)
    except FlowAbortedError as e:
        result["aborted"] = e.to_dict()
        result["failures"].append(f"{tag}: {e}")
        return result

    result["artifacts"].append(write_trajectory_csv(output_dir / f"trajectory_{tag}.csv", trajectory))
    result["artifacts"].append(write_field_csv(output_dir / f"terminal_{tag}.csv", trajectory.terminal_state))
    if cfg.snapshots:
        preview = FieldPreviewOutput(output_dir / "previews")
        if preview.initialize():
            result["artifacts"].append(preview.save_field(rho0, f"initial_{tag}"))
            result["artifacts"].append(preview.save_field(trajectory.terminal_state, f"terminal_{tag}"))
        result["artifacts"].extend(write_snapshots(trajectory, cfg.snapshot_every, output_dir / "snapshots" / tag))

    summary = trajectory.summary()
    rho0_norm = l2_norm(rho0)
    energy_error = abs(trajectory.energies[-1] - CLIFFORD_ENERGY)
    summary.update({
        "energy_error": energy_error,
        "max_energy_increase": trajectory.max_energy_increase(),
        "stable_monotone": trajectory.stable_monotone_after(TRANSIENT, cfg.flow.energy_slack),
        "rho0_norm": rho0_norm,
        "wall_time": format_duration(trajectory.wall_time),
    })

    failures = result["failures"]
    if not trajectory.converged:
        failures.append(f"{tag}: not converged by t={cfg.flow.t_end} "
                        f"(residual {trajectory.residuals[-1]:.3e})")
    if energy_error > ENERGY_TOL:
        failures.append(f"{tag}: terminal energy off by {energy_error:.3e}")
    if trajectory.center_variation() > CENTER_VARIATION_FACTOR * rho0_norm ** 2:
        failures.append(f"{tag}: center variation {trajectory.center_variation():.3e} "
                        f"> {CENTER_VARIATION_FACTOR} ||rho0||^2")
    if not summary["stable_monotone"]:
        failures.append(f"{tag}: stable norm grows after t={TRANSIENT}")

    if rho0_norm > 0.0:
        try:
            # the cos 2u rate is read off its own mode; the nonlinear constant decays at 2
            modes = COS2U_MODES if cfg.initial == "cos2u" else None
            window = final_decade_window(trajectory, modes)
            rate = decay_rate(trajectory, window, modes)
            summary.update({"decay_rate": rate, "fit_window": list(window)})
            if cfg.initial == "cos2u":
                if abs(rate - COS2U_RATE) > COS2U_RATE_RTOL * COS2U_RATE:
                    failures.append(f"{tag}: decay rate {rate:.3f} not within 10% of {COS2U_RATE}")
            elif rate < MIN_RANDOM_RATE:
                failures.append(f"{tag}: decay rate {rate:.3f} < {MIN_RANDOM_RATE}")
        except InsufficientDataError as e:
            failures.append(f"{tag}: {e}")

    result["summary"] = summary
    logger.info(f"{tag}: converged={trajectory.converged}, steps={trajectory.steps}, "
                f"rate={summary.get('decay_rate')}, {summary['wall_time']}")
    return result


class FlowExperiment(ExperimentType):
    """Integrate the flow from seeded perturbations and check convergence."""

    @property
    def type_name(self) -> str:
        return "flow"

    @property
    def display_name(self) -> str:
        return "Flow convergence"

    def execute(self, cfg: ExperimentConfig, output_dir: Path) -> ExperimentReport:
        report = ExperimentReport()
        seeds = range(cfg.seed, cfg.seed + cfg.runs)
        results = parallel_map(lambda seed: flow_run(cfg, seed, output_dir), seeds, cfg.parallel)

        rows = []
        for result in results:
            for path in result["artifacts"]:
                report.add_artifact(path)
            for message in result["failures"]:
                report.fail(message)
            summary = result.get("summary", {})
            rows.append((result["seed"],
                         "aborted" if "aborted" in result else summary.get("converged"),
                         summary.get("steps", ""),
                         summary.get("energy_final", ""),
                         summary.get("residual_final", ""),
                         summary.get("decay_rate", ""),
                         summary.get("center_variation", "")))
            report.summary[result["tag"]] = result.get("aborted") or summary
        report.add_artifact(write_table_csv(output_dir / "flow_runs.csv",
                                            ("seed", "converged", "steps", "energy", "residual",
                                             "decay_rate", "center_variation"), rows))
        return report
