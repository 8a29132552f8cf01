"""Equilibrium family rho_z and the rank of z -> pi^c rho_z at z = 0."""

import logging
import math
from pathlib import Path
from typing import Any, Dict, List

import numpy as np

from ..errors import FlowUndefinedError, NotAGraphError
from ..flow.velocity import velocity_from_geometry
from ..geometry.surface import graph_geometry, willmore_energy
from ..moebius.equilibria import df0_rank_check, equilibrium_distance_function
from ..moebius.fields import BASIS_LABELS, BASIS_SIZE, NORMAL_DIRECTIONS, ConformalParams
from ..output.writers import write_field_csv, write_table_csv
from ..spectral.center import project_center
from ..spectral.operators import l2_norm
from ..utils.helpers import parallel_map
from .base import ExperimentReport, ExperimentType
from .models import ExperimentConfig

logger = logging.getLogger(__name__)

CLIFFORD_ENERGY = 2.0 * math.pi ** 2
RESIDUAL_TOL = 1e-6
ENERGY_TOL = 1e-6
TANGENTIAL_TOL = 1e-8
EXPECTED_RANK = NORMAL_DIRECTIONS


def sample_parameters(seed: int, count: int, radius: float) -> List[ConformalParams]:
    """Seeded parameters uniform in the closed ball of the given radius."""
    rng = np.random.default_rng(seed)
    samples = []
    for _ in range(count):
        direction = rng.normal(size=BASIS_SIZE)
        direction /= np.linalg.norm(direction)
        samples.append(ConformalParams(radius * rng.uniform() ** (1.0 / BASIS_SIZE) * direction))
    return samples


def probe_equilibrium(cfg: ExperimentConfig, index: int, z: ConformalParams) -> Dict[str, Any]:
    result: Dict[str, Any] = {"index": index, "z": z, "z_norm": z.norm}
    try:
        rho = equilibrium_distance_function(z, cfg.grid, cfg.oversample)
        geometry = graph_geometry(rho)
        residual = velocity_from_geometry(geometry, cfg.flow.a0_floor, cfg.flow.variant).sup_norm()
    except (NotAGraphError, FlowUndefinedError) as e:
        result["error"] = f"{type(e).__name__}: {e}"
        return result
    split = project_center(rho)
    result.update({
        "rho": rho,
        "sup_norm": rho.sup_norm(),
        "residual": residual,
        "energy": willmore_energy(geometry),
        "center_norm": l2_norm(split.center_part),
        "stable_norm": l2_norm(split.stable_part),
    })
    return result


class EquilibriaExperiment(ExperimentType):
    """Build rho_z, check that each is a Willmore equilibrium, and report DF(0)."""

    @property
    def type_name(self) -> str:
        return "equilibria"

    @property
    def display_name(self) -> str:
        return "Equilibrium manifold"

    def execute(self, cfg: ExperimentConfig, output_dir: Path) -> ExperimentReport:
        report = ExperimentReport()
        params = [cfg.z] if cfg.z is not None else sample_parameters(cfg.seed, cfg.z_count, cfg.z_radius)
        results = parallel_map(lambda item: probe_equilibrium(cfg, *item), list(enumerate(params)), cfg.parallel)

        rows = []
        for r in results:
            tag = f"z[{r['index']}]"
            if "error" in r:
                report.fail(f"{tag}: {r['error']}")
                rows.append((r["index"], r["z_norm"], "", "", "", "", "", r["error"]))
                continue
            report.check(r["residual"] <= RESIDUAL_TOL, f"{tag}: residual {r['residual']:.3e} > {RESIDUAL_TOL}")
            energy_error = abs(r["energy"] - CLIFFORD_ENERGY)
            report.check(energy_error <= ENERGY_TOL, f"{tag}: energy off by {energy_error:.3e}")
            rows.append((r["index"], r["z_norm"], r["sup_norm"], r["residual"], r["energy"],
                         r["center_norm"], r["stable_norm"], ""))
        report.add_artifact(write_table_csv(output_dir / "equilibria.csv",
                                            ("index", "z_norm", "sup_norm", "residual", "energy",
                                             "center_norm", "stable_norm", "error"), rows))
        if cfg.z is not None and "rho" in results[0]:
            report.add_artifact(write_field_csv(output_dir / "rho_z.csv", results[0]["rho"]))

        rank = df0_rank_check(cfg.eps_fd, cfg.grid, cfg.oversample, cfg.parallel)
        rank_rows = []
        for k in range(BASIS_SIZE):
            error = rank.column_errors[k] if k < NORMAL_DIRECTIONS else ""
            rank_rows.append((k + 1, BASIS_LABELS[k], float(np.linalg.norm(rank.matrix[:, k])),
                              rank.singular_values[k], error))
        report.add_artifact(write_table_csv(output_dir / "df0_rank.csv",
                                            ("k", "field", "column_norm", "singular_value", "kernel_error"),
                                            rank_rows))
        report.check(rank.rank == EXPECTED_RANK, f"DF(0) rank {rank.rank} != {EXPECTED_RANK}")
        report.check(float(np.max(rank.tangential_norms)) <= TANGENTIAL_TOL,
                     f"columns 9, 10 not negligible: {rank.tangential_norms}")

        ok = [r for r in results if "error" not in r]
        report.summary.update({
            "count": len(results),
            "failed_extractions": len(results) - len(ok),
            "max_residual": max((r["residual"] for r in ok), default=None),
            "max_energy_error": max((abs(r["energy"] - CLIFFORD_ENERGY) for r in ok), default=None),
            "rank": rank.to_dict(),
        })
        logger.info(f"{len(ok)}/{len(results)} equilibria extracted, DF(0) rank {rank.rank}")
        return report
