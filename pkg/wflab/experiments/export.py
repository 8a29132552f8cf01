"""Export a graph surface: field samples, OBJ mesh and PNG preview."""

import logging
from pathlib import Path

import numpy as np

from ..geometry.fermi import fermi_embedding
from ..moebius.equilibria import equilibrium_distance_function
from ..output.preview import FieldPreviewOutput
from ..output.writers import read_field_csv, write_field_csv, write_obj
from ..spectral.grid import band_limited_random_field
from .base import ExperimentReport, ExperimentType
from .flow_runs import RANDOM_MAX_MODE
from .models import ExperimentConfig

logger = logging.getLogger(__name__)


class ExportExperiment(ExperimentType):
    """Write rho_z (when z is given) or the seeded random perturbation."""

    @property
    def type_name(self) -> str:
        return "export"

    @property
    def display_name(self) -> str:
        return "Surface export"

    def execute(self, cfg: ExperimentConfig, output_dir: Path) -> ExperimentReport:
        report = ExperimentReport()
        if cfg.z is not None:
            name = "rho_z"
            rho = equilibrium_distance_function(cfg.z, cfg.grid, cfg.oversample)
        else:
            name = f"random_seed{cfg.seed}"
            rho = band_limited_random_field(cfg.grid, cfg.seed, RANDOM_MAX_MODE, cfg.amplitude)

        field_path = write_field_csv(output_dir / f"{name}.csv", rho)
        report.add_artifact(field_path)
        U, V = cfg.grid.mesh
        report.add_artifact(write_obj(output_dir / f"{name}.obj", fermi_embedding(U, V, rho.values)))

        preview = FieldPreviewOutput(output_dir)
        if report.check(preview.initialize(), f"cannot create preview directory {output_dir}"):
            png = preview.save_field(rho, name)
            report.check(png is not None, f"failed to write preview {name}.png")
            report.add_artifact(png)

        roundtrip = float(np.max(np.abs(read_field_csv(field_path, cfg.grid).values - rho.values)))
        report.check(roundtrip == 0.0, f"field file does not reproduce the samples (max error {roundtrip:.3e})")
        report.summary.update({"field": name, "sup_norm": rho.sup_norm(), "roundtrip_error": roundtrip})
        logger.info(f"exported {name} to {output_dir}")
        return report
