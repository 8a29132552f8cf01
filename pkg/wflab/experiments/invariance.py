"""Conformal invariance of the Willmore energy under Moebius maps and stereographic projection."""

import logging
import math
from pathlib import Path
from typing import List, Tuple

import numpy as np

from ..errors import ImmersionError, PoleProximityError
from ..geometry.sphere import inverse_stereographic, stereographic
from ..geometry.surface import euclidean_willmore_energy, tracefree_energy, willmore_energy
from ..moebius.equilibria import transformed_clifford_geometry
from ..moebius.fields import BASIS_LABELS, BASIS_SIZE, ConformalParams
from ..output.writers import write_table_csv
from ..utils.helpers import parallel_map
from .base import ExperimentReport, ExperimentType
from .models import ExperimentConfig

logger = logging.getLogger(__name__)

CLIFFORD_ENERGY = 2.0 * math.pi ** 2
BATTERY_NORM = 0.15
MIXED_SAMPLES = 3
ISOMETRY_TOL = 1e-9
CONFORMAL_TOL = 1e-6
ROUNDTRIP_TOL = 1e-12
POLES = {"e4": (0.0, 0.0, 0.0, 1.0), "e2": (0.0, 1.0, 0.0, 0.0)}


def transformation_battery(seed: int) -> List[Tuple[str, ConformalParams, float]]:
    """(label, z, tolerance): identity, single basis fields, and mixed parameters of norm 0.15."""
    battery = [("identity", ConformalParams.zero(), ISOMETRY_TOL)]
    for k in range(1, BASIS_SIZE + 1):
        tol = CONFORMAL_TOL if BASIS_LABELS[k - 1].startswith("xi") else ISOMETRY_TOL
        battery.append((BASIS_LABELS[k - 1], ConformalParams.unit(k, BATTERY_NORM), tol))
    rng = np.random.default_rng(seed)
    for i in range(MIXED_SAMPLES):
        direction = rng.normal(size=BASIS_SIZE)
        battery.append((f"mixed_{i}", ConformalParams(BATTERY_NORM * direction / np.linalg.norm(direction)),
                        CONFORMAL_TOL))
    return battery


def probe_transformation(cfg: ExperimentConfig, label: str, z: ConformalParams, tol: float) -> dict:
    geometry = transformed_clifford_geometry(z, cfg.grid)
    result = {
        "label": label,
        "z_norm": z.norm,
        "tol": tol,
        "willmore": willmore_energy(geometry),
        "tracefree": tracefree_energy(geometry),
    }
    deviations = [abs(result["willmore"] - CLIFFORD_ENERGY), abs(result["tracefree"] - CLIFFORD_ENERGY)]
    for name, pole in POLES.items():
        try:
            projected = stereographic(geometry.theta, pole)
            result[f"euclidean_{name}"] = euclidean_willmore_energy(projected)
            result[f"roundtrip_{name}"] = float(np.max(np.abs(inverse_stereographic(projected, pole) - geometry.theta)))
            deviations.append(abs(result[f"euclidean_{name}"] - CLIFFORD_ENERGY))
        except (PoleProximityError, ImmersionError) as e:
            result["error"] = f"{name}: {e}"
    result["deviation"] = max(deviations)
    return result


class InvarianceExperiment(ExperimentType):
    """Willmore energy of Moebius images of CC in S^3 and of their stereographic projections."""

    @property
    def type_name(self) -> str:
        return "invariance"

    @property
    def display_name(self) -> str:
        return "Conformal invariance"

    def execute(self, cfg: ExperimentConfig, output_dir: Path) -> ExperimentReport:
        report = ExperimentReport()
        battery = transformation_battery(cfg.seed)
        results = parallel_map(lambda item: probe_transformation(cfg, *item), battery, cfg.parallel)

        rows = []
        for r in results:
            label = r["label"]
            if "error" in r:
                report.fail(f"{label}: {r['error']}")
            report.check(r["deviation"] <= r["tol"], f"{label}: energy deviation {r['deviation']:.3e} > {r['tol']:g}")
            for name in POLES:
                roundtrip = r.get(f"roundtrip_{name}")
                if roundtrip is not None:
                    report.check(roundtrip <= ROUNDTRIP_TOL,
                                 f"{label}: stereographic roundtrip from {name} off by {roundtrip:.3e}")
            rows.append((label, r["z_norm"], r["willmore"], r["tracefree"],
                         r.get("euclidean_e4", ""), r.get("euclidean_e2", ""),
                         max(r.get("roundtrip_e4", 0.0), r.get("roundtrip_e2", 0.0)), r["deviation"]))
        report.add_artifact(write_table_csv(output_dir / "invariance.csv",
                                            ("transformation", "z_norm", "willmore", "tracefree",
                                             "euclidean_e4", "euclidean_e2", "roundtrip", "deviation"), rows))
        report.summary.update({
            "transformations": len(results),
            "max_deviation": max(r["deviation"] for r in results),
        })
        logger.info(f"invariance battery: max deviation {report.summary['max_deviation']:.3e}")
        return report
