"""Conformal fields, Moebius flows and the equilibrium family rho_z."""

import math
import unittest

import numpy as np
from scipy.linalg import expm

from wflab.errors import ConfigError
from wflab.flow.velocity import velocity
from wflab.geometry.sphere import S3Point, clifford_embedding, clifford_normal_field
from wflab.geometry.surface import graph_geometry, willmore_energy
from wflab.moebius.equilibria import (
    df0_rank_check,
    equilibrium_distance_function,
    kernel_direction,
    transformed_clifford_geometry,
)
from wflab.moebius.fields import (
    BASIS_SIZE,
    ConformalParams,
    basis_field_values,
    conformal_field,
    conformal_generator,
)
from wflab.moebius.flow import moebius_flow, moebius_transform
from wflab.spectral.center import project_center
from wflab.spectral.grid import GridSpec
from wflab.spectral.operators import l2_norm, tcc_apply

CLIFFORD_ENERGY = 2.0 * math.pi ** 2


def random_params(seed: int, norm: float) -> ConformalParams:
    direction = np.random.default_rng(seed).normal(size=BASIS_SIZE)
    return ConformalParams(norm * direction / np.linalg.norm(direction))


class ConformalParamsCheck(unittest.TestCase):
    def test_unit_ball(self):
        with self.assertRaises(ConfigError):
            ConformalParams(np.full(BASIS_SIZE, 0.5))
        with self.assertRaises(ConfigError):
            ConformalParams(np.zeros(9))

    def test_parse(self):
        z = ConformalParams.parse("0.1,0,0,0,0,0,0,0,0,-0.05")
        self.assertAlmostEqual(z.z[0], 0.1)
        self.assertAlmostEqual(z.z[9], -0.05)
        np.testing.assert_array_equal(ConformalParams.parse(str(z)).z, z.z)
        with self.assertRaises(ConfigError):
            ConformalParams.parse("0.1,abc")

    def test_generator_is_antisymmetric(self):
        A, a = conformal_generator(random_params(1, 0.5))
        np.testing.assert_allclose(A, -A.T, atol=0.0)
        self.assertEqual(a.shape, (4,))


class ConformalFieldCheck(unittest.TestCase):
    def setUp(self):
        self.p = S3Point.normalized([0.3, -0.5, 0.7, 0.2])

    def test_zero_parameters(self):
        np.testing.assert_array_equal(conformal_field(ConformalParams.zero(), self.p).v, np.zeros(4))

    def test_tangent_to_sphere(self):
        for seed in range(5):
            v = conformal_field(random_params(seed, 0.9), self.p)
            self.assertLess(abs(float(v.v @ self.p.x)), 1e-12)

    def test_parallel_field_at_equator(self):
        p = S3Point.normalized([0.6, 0.0, 0.8, 0.0])
        v = conformal_field(ConformalParams.unit(4, 0.5), p)
        np.testing.assert_allclose(v.v, [0.0, 0.0, 0.0, 0.5], atol=1e-15)

    def test_normal_projection_on_clifford_torus(self):
        grid = GridSpec(16)
        U, V = grid.mesh
        points = clifford_embedding(U, V)
        normal = clifford_normal_field(U, V)
        for k in range(1, BASIS_SIZE + 1):
            projection = np.max(np.abs(np.sum(basis_field_values(k, points) * normal, axis=-1)))
            if k <= 8:
                self.assertGreater(projection, 0.1)
            else:
                self.assertLess(projection, 1e-12)


class MoebiusFlowCheck(unittest.TestCase):
    def test_identity(self):
        p0 = S3Point.normalized([1.0, 2.0, 3.0, 4.0])
        np.testing.assert_allclose(moebius_flow(ConformalParams.zero(), 0.8, p0).x, p0.x, atol=1e-15)

    def test_rotation_matches_matrix_exponential(self):
        z = ConformalParams(np.array([0, 0, 0, 0, 0.3, 0, 0, 0.4, 0, 0.2]))
        A, a = conformal_generator(z)
        np.testing.assert_array_equal(a, np.zeros(4))
        p0 = S3Point.normalized([0.3, -0.5, 0.7, 0.2])
        for t in (0.25, 0.7, 1.0):
            np.testing.assert_allclose(moebius_flow(z, t, p0).x, expm(t * A) @ p0.x, atol=1e-10)

    def test_fixed_point_of_parallel_field(self):
        e1 = S3Point(np.array([1.0, 0.0, 0.0, 0.0]))
        np.testing.assert_allclose(moebius_flow(ConformalParams.unit(1, 0.5), 1.0, e1).x, e1.x, atol=1e-15)

    def test_group_property(self):
        z = random_params(4, 0.5)
        rng = np.random.default_rng(2)
        points = rng.normal(size=(30, 4))
        points /= np.linalg.norm(points, axis=-1, keepdims=True)
        composed = moebius_transform(z, moebius_transform(z, points, 0.4), 0.3)
        np.testing.assert_allclose(composed, moebius_transform(z, points, 0.7), atol=1e-8)

    def test_stays_on_sphere(self):
        z = random_params(6, 0.8)
        points = clifford_embedding(*GridSpec(16).mesh)
        moved = moebius_transform(z, points, 1.0)
        np.testing.assert_allclose(np.linalg.norm(moved, axis=-1), 1.0, atol=1e-14)


class KernelDirectionCheck(unittest.TestCase):
    def setUp(self):
        self.grid = GridSpec(16)
        self.U, self.V = self.grid.mesh

    def test_parallel_field_direction(self):
        np.testing.assert_allclose(kernel_direction(1, self.grid).values,
                                   -np.cos(self.U) / math.sqrt(2.0), atol=1e-14)

    def test_rotation_direction(self):
        np.testing.assert_allclose(kernel_direction(5, self.grid).values,
                                   -np.cos(self.U) * np.cos(self.V), atol=1e-14)

    def test_directions_lie_in_kernel(self):
        for k in range(1, 9):
            v = kernel_direction(k, self.grid)
            self.assertLess(tcc_apply(v).sup_norm(), 1e-10)
            self.assertLess(l2_norm(project_center(v).stable_part), 1e-10)

    def test_index_range(self):
        with self.assertRaises(ConfigError):
            kernel_direction(9, self.grid)


class EquilibriumCheck(unittest.TestCase):
    def setUp(self):
        self.grid = GridSpec(32)

    def test_zero_parameters(self):
        self.assertEqual(equilibrium_distance_function(ConformalParams.zero(), self.grid).sup_norm(), 0.0)

    def test_rejects_large_parameters(self):
        with self.assertRaises(ConfigError):
            equilibrium_distance_function(random_params(0, 0.3), self.grid)

    def test_tangential_rotation_keeps_clifford_torus(self):
        rho = equilibrium_distance_function(ConformalParams.unit(9, 0.1), self.grid)
        self.assertLess(rho.sup_norm(), 1e-10)

    def test_first_order_is_kernel_direction(self):
        eps = 1e-3
        rho = equilibrium_distance_function(ConformalParams.unit(2, eps), self.grid)
        expected = kernel_direction(2, self.grid)
        self.assertLess((rho / eps - expected).sup_norm(), 10 * eps)

    def test_rho_z_is_willmore_equilibrium(self):
        rho = equilibrium_distance_function(random_params(8, 0.05), self.grid)
        self.assertGreater(rho.sup_norm(), 1e-3)
        self.assertLess(velocity(rho).sup_norm(), 1e-6)
        self.assertAlmostEqual(willmore_energy(graph_geometry(rho)), CLIFFORD_ENERGY, delta=1e-6)

    def test_transformed_clifford_energy(self):
        geometry = transformed_clifford_geometry(random_params(3, 0.1), self.grid)
        self.assertAlmostEqual(willmore_energy(geometry), CLIFFORD_ENERGY, delta=1e-6)


class RankCheck(unittest.TestCase):
    def test_df0_is_onto_kernel(self):
        report = df0_rank_check(1e-4, GridSpec(16))
        self.assertEqual(report.rank, 8)
        self.assertEqual(len(report.singular_values), 10)
        np.testing.assert_array_equal(report.singular_values[8:], 0.0)
        self.assertLess(float(np.max(report.tangential_norms)), 1e-8)
        self.assertLess(float(np.max(report.column_errors)), 1e-6)


if __name__ == '__main__':
    unittest.main()
