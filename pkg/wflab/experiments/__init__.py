"""Experiment commands."""

from .models import COMMANDS, ExperimentConfig
from .base import ExperimentReport, ExperimentType
from .registry import ExperimentRegistry
from .spectrum import SpectrumExperiment
from .linearize import LinearizeExperiment
from .flow_runs import FlowExperiment
from .equilibria import EquilibriaExperiment
from .invariance import InvarianceExperiment
from .export import ExportExperiment

# Register all commands
ExperimentRegistry.register(SpectrumExperiment)
ExperimentRegistry.register(LinearizeExperiment)
ExperimentRegistry.register(FlowExperiment)
ExperimentRegistry.register(EquilibriaExperiment)
ExperimentRegistry.register(InvarianceExperiment)
ExperimentRegistry.register(ExportExperiment)

__all__ = [
    'COMMANDS',
    'ExperimentConfig',
    'ExperimentReport',
    'ExperimentType',
    'ExperimentRegistry',
    'SpectrumExperiment',
    'LinearizeExperiment',
    'FlowExperiment',
    'EquilibriaExperiment',
    'InvarianceExperiment',
    'ExportExperiment',
]
