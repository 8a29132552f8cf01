"""Spectrum of Delta_CC and T_CC on the discrete torus."""

import logging
from pathlib import Path

from ..output.writers import write_table_csv
from ..spectral.operators import (
    kernel_dimension,
    laplace_symbol,
    smallest_positive_eigenvalue,
    tcc_spectrum,
)
from .base import ExperimentReport, ExperimentType
from .models import ExperimentConfig

logger = logging.getLogger(__name__)

KERNEL_DIMENSION = 8
SPECTRAL_GAP = 2.0
NEGATIVE_TOL = -1e-12


class SpectrumExperiment(ExperimentType):
    """Tabulate (m, n, lambda_Delta, lambda_T) and check kernel and gap."""

    @property
    def type_name(self) -> str:
        return "spectrum"

    @property
    def display_name(self) -> str:
        return "T_CC spectrum"

    def execute(self, cfg: ExperimentConfig, output_dir: Path) -> ExperimentReport:
        report = ExperimentReport()
        spectrum = tcc_spectrum(cfg.max_freq)
        rows = [(m, n, float(laplace_symbol(m, n)), value) for m, n, value in spectrum]
        report.add_artifact(write_table_csv(output_dir / "spectrum.csv",
                                            ("m", "n", "lambda_laplace", "lambda_t"), rows))

        kernel = kernel_dimension(spectrum)
        gap = smallest_positive_eigenvalue(spectrum)
        lowest = min(value for _, _, value in spectrum)
        report.summary.update({
            "modes": len(spectrum),
            "kernel_dimension": kernel,
            "mu1": gap,
            "min_eigenvalue": lowest,
        })
        logger.info(f"kernel dimension {kernel}, mu1 = {gap:g}")

        report.check(lowest >= NEGATIVE_TOL, f"negative eigenvalue {lowest:g}")
        report.check(kernel == KERNEL_DIMENSION, f"kernel dimension {kernel} != {KERNEL_DIMENSION}")
        report.check(abs(gap - SPECTRAL_GAP) <= 1e-12, f"mu1 = {gap:g} != {SPECTRAL_GAP:g}")
        return report
