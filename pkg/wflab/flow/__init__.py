"""MIWF graph velocity, time stepping and convergence diagnostics."""

from .models import FlowConfig
from .velocity import (
    velocity,
    velocity_from_geometry,
    velocity_derivative,
    linearization_residual,
    mean_curvature_derivative,
    mean_curvature_derivative_check,
)
from .trajectory import FlowTrajectory, decay_rate, decade_window, final_decade_window
from .engine import FlowEngine, step, run

__all__ = [
    'FlowConfig',
    'velocity',
    'velocity_from_geometry',
    'velocity_derivative',
    'linearization_residual',
    'mean_curvature_derivative',
    'mean_curvature_derivative_check',
    'FlowTrajectory',
    'decay_rate',
    'decade_window',
    'final_decade_window',
    'FlowEngine',
    'step',
    'run',
]
