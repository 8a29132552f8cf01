"""Graph velocity, IMEX stepping, trajectories and rate fitting."""

import dataclasses
import math
import unittest

import numpy as np

from wflab.errors import ConfigError, FlowAbortedError, FlowUndefinedError, InsufficientDataError, InvalidFieldError
from wflab.flow.engine import FlowEngine, run, step
from wflab.flow.models import FlowConfig
from wflab.flow.trajectory import FlowTrajectory, decade_window, decay_rate, final_decade_window
from wflab.flow.velocity import (
    linearization_residual,
    mean_curvature_derivative_check,
    velocity,
    velocity_from_geometry,
)
from wflab.geometry.surface import graph_geometry
from wflab.spectral.grid import GridSpec, ScalarField, trig_mode
from wflab.spectral.operators import l2_inner, l2_norm


class FlowConfigCheck(unittest.TestCase):
    def test_defaults(self):
        cfg = FlowConfig()
        self.assertEqual(cfg.dt, 1e-3)
        self.assertEqual(cfg.linear_scale, 1.0)
        self.assertEqual(FlowConfig(variant="classical").linear_scale, 4.0)

    def test_validation(self):
        for kwargs in ({"dt": 0.0}, {"dt": 0.1}, {"residual_tol": 1e-3}, {"a0_floor": 1.0},
                       {"record_every": 0}, {"variant": "euclidean"}):
            with self.assertRaises(ConfigError):
                FlowConfig(**kwargs)

    def test_from_dict_coerces_strings(self):
        cfg = FlowConfig.from_dict({"dt": "5e-4", "record_every": "4", "seed": "1", "variant": ""})
        self.assertEqual(cfg.dt, 5e-4)
        self.assertEqual(cfg.record_every, 4)
        self.assertEqual(cfg.variant, "moebius")


class VelocityCheck(unittest.TestCase):
    def setUp(self):
        self.grid = GridSpec(32)

    def test_clifford_torus_is_equilibrium(self):
        self.assertLess(velocity(ScalarField.zeros(self.grid)).sup_norm(), 1e-10)

    def test_flat_torus_velocity(self):
        # G(c) = -sin(4c)/2 for the Moebius-invariant flow
        grid = GridSpec(16)
        for c in (-0.1, -0.05, 0.05, 0.1):
            G = velocity(ScalarField.constant(grid, c))
            np.testing.assert_allclose(G.values, -0.5 * math.sin(4 * c), atol=1e-8)

    def test_flat_torus_classical_velocity(self):
        grid = GridSpec(16)
        c = 0.05
        G = velocity(ScalarField.constant(grid, c), variant="classical")
        np.testing.assert_allclose(G.values, -4.0 * math.sin(2 * c) / math.cos(2 * c) ** 3, atol=1e-8)

    def test_umbilic_guard(self):
        geometry = graph_geometry(ScalarField.zeros(self.grid))
        umbilic = dataclasses.replace(geometry, A0sq=ScalarField.constant(self.grid, 0.1))
        with self.assertRaises(FlowUndefinedError):
            velocity_from_geometry(umbilic, a0_floor=0.5)
        velocity_from_geometry(umbilic, a0_floor=0.5, variant="classical")

    def test_linearization_matches_tcc(self):
        phi = trig_mode(self.grid, 2, 0)
        self.assertLess(linearization_residual(phi, 1e-5, central=True), 6e-4)
        coarse = linearization_residual(phi, 1e-3)
        fine = linearization_residual(phi, 1e-4)
        self.assertGreater(coarse / fine, 5.0)
        self.assertLess(coarse / fine, 20.0)

    def test_mean_curvature_linearization(self):
        phi = trig_mode(self.grid, 2, 1)
        self.assertLess(mean_curvature_derivative_check(phi, 1e-5, central=True), 1e-5 * 6.0)

    def test_step_size_range(self):
        with self.assertRaises(InvalidFieldError):
            linearization_residual(trig_mode(self.grid, 1, 0), 1e-2)


class StepCheck(unittest.TestCase):
    def test_linear_decay_of_cos2u(self):
        grid = GridSpec(32)
        dt = 1e-3
        rho = trig_mode(grid, 2, 0, amplitude=1e-3)
        rho_next = step(rho, dt)
        self.assertAlmostEqual(l2_norm(rho_next) / l2_norm(rho), 1.0 / (1.0 + 6.0 * dt), delta=1e-4)

    def test_kernel_mode_barely_moves(self):
        grid = GridSpec(16)
        rho = trig_mode(grid, 1, 1, amplitude=1e-3)
        rho_next = step(rho, 1e-3)
        self.assertLess(l2_norm(rho_next - rho) / l2_norm(rho), 1e-4)


class RunCheck(unittest.TestCase):
    def test_zero_initial_data_is_converged(self):
        trajectory = run(ScalarField.zeros(GridSpec(16)))
        self.assertTrue(trajectory.converged)
        self.assertEqual(trajectory.steps, 0)
        self.assertEqual(len(trajectory), 1)

    def test_cos2u_decays_at_rate_six(self):
        grid = GridSpec(16)
        dt = 1e-3
        eps = 1e-3
        phi = trig_mode(grid, 2, 0)
        cfg = FlowConfig(dt=dt, t_end=1.0, record_every=50)
        trajectory = FlowEngine(cfg).run(phi * eps)
        self.assertEqual(trajectory.steps, 1000)
        self.assertAlmostEqual(trajectory.times[-1], 1.0, places=12)
        coefficient = l2_inner(trajectory.terminal_state, phi) / l2_inner(phi, phi)
        expected = eps * (1.0 + 6.0 * dt) ** -1000
        self.assertAlmostEqual(coefficient / expected, 1.0, delta=0.02)
        self.assertLessEqual(trajectory.max_energy_increase(), cfg.energy_slack)
        self.assertTrue(trajectory.stable_monotone_after(0.0))

    def test_chart_exit_aborts(self):
        cfg = FlowConfig(dt=1e-3, t_end=0.1, tube_half_width=0.01)
        engine = FlowEngine(cfg)
        with self.assertRaises(FlowAbortedError) as ctx:
            engine.run(trig_mode(GridSpec(16), 2, 0, amplitude=0.05))
        self.assertEqual(ctx.exception.reason, "chart exit")
        self.assertEqual(ctx.exception.step, 1)
        self.assertTrue(ctx.exception.debug_logs)
        self.assertIn("sup_norm", ctx.exception.to_dict()["diagnostics"])

    def test_debug_log_ring_is_bounded(self):
        engine = FlowEngine(FlowConfig(dt=1e-2, t_end=0.5))
        engine.run(trig_mode(GridSpec(16), 2, 0, amplitude=1e-3))
        self.assertEqual(len(engine.get_debug_logs()), 20)
        self.assertEqual(engine.get_debug_logs()[-1]["step"], 50)


class TrajectoryCheck(unittest.TestCase):
    def setUp(self):
        self.grid = GridSpec(16)
        self.phi = trig_mode(self.grid, 2, 0, amplitude=0.01)

    def synthetic(self, rate: float, t_end: float, dt: float = 0.1, residual: float = 1e-8) -> FlowTrajectory:
        trajectory = FlowTrajectory()
        for i in range(int(round(t_end / dt)) + 1):
            t = i * dt
            trajectory.append(t, self.phi * math.exp(-rate * t), 0.0, residual, 0.0, math.exp(-rate * t))
        return trajectory

    def test_opening_decade_of_exponential(self):
        trajectory = self.synthetic(3.0, 5.0)
        t_lo, t_hi = decade_window(trajectory)
        self.assertAlmostEqual(t_lo, 0.3, places=12)
        self.assertAlmostEqual(t_hi, 1.0, places=12)
        self.assertAlmostEqual(decay_rate(trajectory, (t_lo, t_hi)), 3.0, delta=1e-3)

    def test_final_decade_of_exponential(self):
        # floor = 1e-8 * pi sqrt(2) / 2; the window is [1e3, 1e2] floors, e0 = 0.01 pi
        trajectory = self.synthetic(3.0, 5.0)
        self.assertAlmostEqual(trajectory.terminal_error_floor(), 1e-8 * math.pi / math.sqrt(2.0), places=20)
        t_lo, t_hi = final_decade_window(trajectory)
        self.assertAlmostEqual(t_lo, 2.5, places=12)
        self.assertAlmostEqual(t_hi, 3.2, places=12)
        self.assertAlmostEqual(decay_rate(trajectory), 3.0, delta=1e-2)

    def test_final_decade_needs_a_floor(self):
        with self.assertRaises(InsufficientDataError):
            final_decade_window(self.synthetic(3.0, 5.0, residual=0.0))
        with self.assertRaises(InsufficientDataError):
            final_decade_window(self.synthetic(3.0, 5.0, residual=1e-3))

    def test_slow_constant_hides_fast_mode(self):
        constant = ScalarField.constant(self.grid, 1e-3)
        trajectory = FlowTrajectory()
        for i in range(161):
            t = 0.05 * i
            state = self.phi * math.exp(-6.0 * t) + constant * math.exp(-2.0 * t)
            trajectory.append(t, state, 0.0, 1e-8, 0.0, 0.0)
        self.assertAlmostEqual(decay_rate(trajectory), 2.0, delta=1e-2)
        self.assertAlmostEqual(decay_rate(trajectory, modes=[(2, 0)]), 6.0, delta=1e-6)

    def test_too_short(self):
        with self.assertRaises(InsufficientDataError):
            decade_window(self.synthetic(3.0, 0.2))
        with self.assertRaises(InsufficientDataError):
            final_decade_window(self.synthetic(3.0, 0.2))

    def test_times_must_increase(self):
        trajectory = self.synthetic(1.0, 0.2)
        with self.assertRaises(ValueError):
            trajectory.append(0.1, self.phi, 0.0, 0.0, 0.0, 0.0)

    def test_center_variation_and_monotonicity(self):
        trajectory = FlowTrajectory()
        for t, center, stable in [(0.0, 1.0, 3.0), (0.5, 2.0, 2.0), (1.0, 1.0, 2.5), (1.5, 1.0, 1.0)]:
            trajectory.append(t, self.phi, 0.0, 0.0, center, stable)
        self.assertAlmostEqual(trajectory.center_variation(), 2.0)
        self.assertFalse(trajectory.stable_monotone_after(0.0))
        self.assertTrue(trajectory.stable_monotone_after(1.0))


if __name__ == '__main__':
    unittest.main()
