"""S^3 utilities, Fermi chart and graph geometry."""

import math
import unittest

import numpy as np

from wflab.errors import ChartDomainError, ImmersionError, InvalidFieldError, PoleProximityError
from wflab.geometry.fermi import circle_radii, fermi_coordinates, fermi_invert, fermi_map
from wflab.geometry.sphere import (
    S3Point,
    TangentVector,
    clifford_embedding,
    clifford_normal,
    clifford_normal_field,
    clifford_point,
    geodesic_distance,
    inverse_stereographic,
    stereographic,
)
from wflab.geometry.surface import (
    area,
    euclidean_willmore_energy,
    graph_geometry,
    immersion_geometry,
    intrinsic_curvature,
    tracefree_energy,
    willmore_energy,
)
from wflab.spectral.grid import GridSpec, ScalarField, band_limited_random_field, trig_mode

CLIFFORD_ENERGY = 2.0 * math.pi ** 2


class SphereCheck(unittest.TestCase):
    def test_clifford_point_and_normal(self):
        p = clifford_point(0.3, -1.2)
        nu = clifford_normal(0.3, -1.2)
        self.assertAlmostEqual(np.linalg.norm(p.x), 1.0, places=14)
        self.assertAlmostEqual(nu.norm, 1.0, places=14)

    def test_rejects_off_sphere_and_non_tangent(self):
        with self.assertRaises(InvalidFieldError):
            S3Point(np.array([1.0, 1.0, 0.0, 0.0]))
        p = S3Point(np.array([1.0, 0.0, 0.0, 0.0]))
        with self.assertRaises(InvalidFieldError):
            TangentVector(p, np.array([1.0, 0.0, 0.0, 0.0]))

    def test_stereographic_from_e4(self):
        np.testing.assert_allclose(stereographic(np.array([1.0, 0.0, 0.0, 0.0])), [1.0, 0.0, 0.0], atol=1e-15)
        np.testing.assert_allclose(stereographic(np.array([0.0, 0.0, 0.0, -1.0])), [0.0, 0.0, 0.0], atol=1e-15)

    def test_stereographic_roundtrip(self):
        rng = np.random.default_rng(11)
        points = rng.normal(size=(20, 4))
        points /= np.linalg.norm(points, axis=-1, keepdims=True)
        pole = np.array([0.5, 0.5, 0.5, 0.5])
        np.testing.assert_allclose(inverse_stereographic(stereographic(points, pole), pole), points, atol=1e-10)

    def test_pole_is_rejected(self):
        with self.assertRaises(PoleProximityError):
            stereographic(np.array([0.0, 0.0, 0.0, 1.0]))

    def test_geodesic_distance(self):
        self.assertAlmostEqual(float(geodesic_distance(np.array([1.0, 0, 0, 0]), np.array([0, 1.0, 0, 0]))),
                               math.pi / 2, places=14)


class FermiCheck(unittest.TestCase):
    def test_roundtrip(self):
        for u, v, r in [(0.4, -2.0, 0.1), (3.0, 1.0, -0.5), (-1.5, 0.2, 0.7)]:
            np.testing.assert_allclose(fermi_invert(fermi_map(u, v, r)), (u, v, r), atol=1e-12)

    def test_zero_distance_lands_on_clifford_torus(self):
        np.testing.assert_allclose(fermi_map(0.7, 2.1, 0.0).x, clifford_embedding(0.7, 2.1), atol=1e-15)

    def test_chart_limit(self):
        with self.assertRaises(ChartDomainError):
            fermi_map(0.0, 0.0, math.pi / 4)
        with self.assertRaises(ChartDomainError):
            fermi_coordinates(np.array([0.0, 0.0, 1.0, 0.0]))

    def test_circle_radii(self):
        a, b = circle_radii(0.0)
        self.assertAlmostEqual(float(a), 1.0 / math.sqrt(2.0), places=15)
        a, b = circle_radii(0.3)
        self.assertAlmostEqual(float(a * a + b * b), 1.0, places=14)


class CliffordGeometryCheck(unittest.TestCase):
    def setUp(self):
        self.grid = GridSpec(32)
        self.geometry = graph_geometry(ScalarField.zeros(self.grid))

    def test_curvature_constants(self):
        g = self.geometry
        self.assertLess(g.H.sup_norm(), 1e-9)
        np.testing.assert_allclose(g.K.values, -1.0, atol=1e-9)
        np.testing.assert_allclose(g.A0sq.values, 2.0, atol=1e-9)
        np.testing.assert_allclose(g.L.values, 1.0, atol=1e-15)

    def test_energy_and_area(self):
        self.assertAlmostEqual(willmore_energy(self.geometry), CLIFFORD_ENERGY, delta=1e-10)
        self.assertAlmostEqual(area(self.geometry), CLIFFORD_ENERGY, delta=1e-10)

    def test_normal_matches_clifford_normal(self):
        U, V = self.grid.mesh
        np.testing.assert_allclose(self.geometry.normal, clifford_normal_field(U, V), atol=1e-12)
        self.assertLess(self.geometry.normal_residual(), 1e-12)


class FlatTorusCheck(unittest.TestCase):
    """rho = c gives S^1(a) x S^1(b) with H = tan 2c, K = -1, area 2 pi^2 cos 2c."""

    def test_constant_graphs(self):
        grid = GridSpec(16)
        for c in (-0.1, -0.05, 0.05, 0.1):
            g = graph_geometry(ScalarField.constant(grid, c))
            np.testing.assert_allclose(g.H.values, math.tan(2 * c), atol=1e-8)
            np.testing.assert_allclose(g.K.values, -1.0, atol=1e-8)
            self.assertAlmostEqual(area(g), CLIFFORD_ENERGY * math.cos(2 * c), delta=1e-8)
            self.assertAlmostEqual(willmore_energy(g), CLIFFORD_ENERGY / math.cos(2 * c), delta=1e-8)

    def test_mean_curvature_formula(self):
        c = 0.08
        a, b = circle_radii(c)
        g = graph_geometry(ScalarField.constant(GridSpec(16), c))
        np.testing.assert_allclose(g.H.values, 0.5 * (b / a - a / b), atol=1e-10)


class PerturbedGraphCheck(unittest.TestCase):
    def setUp(self):
        self.grid = GridSpec(32)
        self.rho = band_limited_random_field(self.grid, seed=5, max_mode=3, amplitude=0.05)
        self.geometry = graph_geometry(self.rho)

    def test_gauss_equation(self):
        k_int = intrinsic_curvature(self.geometry)
        np.testing.assert_allclose(k_int.values, 1.0 + self.geometry.K.values, atol=1e-7)

    def test_tracefree_energy_equals_willmore_energy(self):
        self.assertAlmostEqual(tracefree_energy(self.geometry), willmore_energy(self.geometry), delta=1e-8)

    def test_willmore_energy_above_clifford(self):
        self.assertGreater(willmore_energy(self.geometry), CLIFFORD_ENERGY)

    def test_normal_is_unit_and_orthogonal(self):
        self.assertLess(self.geometry.normal_residual(), 1e-12)

    def test_chart_exit(self):
        with self.assertRaises(ChartDomainError):
            graph_geometry(trig_mode(self.grid, 1, 0, amplitude=0.8))

    def test_degenerate_immersion(self):
        theta = np.zeros((16, 16, 4))
        theta[..., 0] = 1.0
        with self.assertRaises(ImmersionError):
            immersion_geometry(theta)


class ResolutionCheck(unittest.TestCase):
    """A band-limited graph has the same geometry on every grid that resolves it."""

    def test_refinement_agrees_at_common_nodes(self):
        coarse = graph_geometry(trig_mode(GridSpec(64), 2, 1, amplitude=0.05))
        fine = graph_geometry(trig_mode(GridSpec(96), 2, 1, amplitude=0.05))
        # node 2k on the 64-grid is node 3k on the 96-grid
        for name in ("H", "K", "A0sq"):
            with self.subTest(quantity=name):
                np.testing.assert_allclose(getattr(coarse, name).values[::2, ::2],
                                           getattr(fine, name).values[::3, ::3], atol=1e-8)
        self.assertAlmostEqual(willmore_energy(coarse), willmore_energy(fine), delta=1e-8)

    def test_energy_invariant_under_grid_shift(self):
        rho = band_limited_random_field(GridSpec(64), seed=2, max_mode=3, amplitude=0.05)
        shifted = rho.with_values(np.roll(rho.values, (5, 11), axis=(0, 1)))
        self.assertAlmostEqual(willmore_energy(graph_geometry(shifted)),
                               willmore_energy(graph_geometry(rho)), delta=1e-12)


class EuclideanEnergyCheck(unittest.TestCase):
    def test_projected_clifford_torus(self):
        grid = GridSpec(64)
        U, V = grid.mesh
        points = stereographic(clifford_embedding(U, V))
        self.assertAlmostEqual(euclidean_willmore_energy(points), CLIFFORD_ENERGY, delta=1e-8)

    def test_rejects_bad_shape(self):
        with self.assertRaises(InvalidFieldError):
            euclidean_willmore_energy(np.zeros((16, 16, 4)))


if __name__ == '__main__':
    unittest.main()
