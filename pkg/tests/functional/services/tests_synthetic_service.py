import unittest

import numpy as np

from services.evaluation_service import EvaluationService
from services.synthetic_service import SyntheticService, VIEW_NAMES, moons


class TestsSyntheticService(unittest.TestCase):
    """Tests for the synthetic three-view mixture"""

    def test_generate_synthetic_mixture(self):
        """Test to verify shapes, balance and determinism of the generator"""

        # Test 1: N = 2 n, J = 3 two-dimensional views, balanced labels
        dataset = SyntheticService.generate_synthetic_mixture(n_per_component=200, seed=7)
        self.assertEqual(dataset.n_samples, 400)
        self.assertEqual(dataset.n_views, 3)
        self.assertEqual(dataset.view_names, VIEW_NAMES)
        self.assertEqual([view.shape for view in dataset.views], [(2, 400)] * 3)
        self.assertEqual(np.bincount(dataset.labels).tolist(), [200, 200])

        # Test 2: same seed identical, other seed different
        again = SyntheticService.generate_synthetic_mixture(n_per_component=200, seed=7)
        other = SyntheticService.generate_synthetic_mixture(n_per_component=200, seed=8)
        np.testing.assert_array_equal(dataset.labels, again.labels)
        for a, b in zip(dataset.views, again.views):
            np.testing.assert_array_equal(a, b)

        self.assertFalse(np.array_equal(dataset.views[0], other.views[0]))

    def test_invalid_arguments(self):
        """Test to verify the generator preconditions"""

        with self.assertRaises(ValueError):
            SyntheticService.generate_synthetic_mixture(n_per_component=10)

        with self.assertRaises(ValueError):
            SyntheticService.generate_synthetic_mixture(n_components=3)

        with self.assertRaises(ValueError):
            SyntheticService.generate_synthetic_mixture(noise=-0.1)

    def test_class_means(self):
        """Test to verify the class-conditional means of every view nearly coincide"""

        # Constants
        dataset = SyntheticService.generate_synthetic_mixture(n_per_component=5000, noise=0.0, seed=1)

        # Assert the mean of each component is close to the origin in every view
        for view in dataset.views:
            for component in (0, 1):
                mean = view[:, dataset.labels == component].mean(axis=1)
                self.assertLess(np.max(np.abs(mean)), 0.1)

    def test_shared_angle(self):
        """Test to verify the default views share the position of every point along the curves"""

        # Constants
        shared = SyntheticService.generate_synthetic_mixture(n_per_component=100, noise=0.0, seed=1)
        independent = SyntheticService.generate_synthetic_mixture(
            n_per_component=100, noise=0.0, seed=1, shared_angle=False
        )

        def moons_from_circles(dataset):
            circles = dataset.views[0]
            t = np.mod(np.arctan2(circles[1], circles[0]), 2 * np.pi) / (2 * np.pi)
            sign = np.where(dataset.labels == 0, 1.0, -1.0)

            return sign * np.vstack([np.cos(np.pi * t), np.sin(np.pi * t) - 2 / np.pi])

        # Test 1: by default the moons view is the same t seen through another curve
        self.assertIn('shared_angle=True', shared.provenance)
        np.testing.assert_allclose(shared.views[1], moons_from_circles(shared), atol=1e-9)

        # Test 2: the spiral radius 0.5 + t follows the circle angle too
        circles, spiral = shared.views[0], shared.views[2]
        t = np.mod(np.arctan2(circles[1], circles[0]), 2 * np.pi) / (2 * np.pi)
        arm_mean_y = np.where(shared.labels == 0, -1.0, 1.0) / (2 * np.pi)
        radius = np.hypot(spiral[0], spiral[1] + arm_mean_y)
        np.testing.assert_allclose(radius, 0.5 + t, atol=1e-9)

        # Test 3: independent positions do not line up
        self.assertFalse(np.allclose(independent.views[1], moons_from_circles(independent), atol=1e-3))

    def test_moons(self):
        """Test to verify the second moon is the first rotated by pi"""

        # Constants
        t = np.linspace(0, 1, 11)

        # Assert the rotation and the ends and top of the upper arc
        upper = moons(np.zeros(11, dtype=int), t)
        lower = moons(np.ones(11, dtype=int), t)
        np.testing.assert_allclose(lower, -upper)
        np.testing.assert_allclose(upper[:, 5], [0.0, 1 - 2 / np.pi], atol=1e-12)
        np.testing.assert_allclose(upper[:, 0], [1.0, -2 / np.pi], atol=1e-12)

    def test_raw_views_not_linearly_separable(self):
        """Test to verify a linear probe on any raw view stays near chance"""

        # Constants
        dataset = SyntheticService.generate_synthetic_mixture(n_per_component=200, seed=7)

        # Assert the in-sample probe accuracy is at most 0.65 on every view
        for view in dataset.views:
            probe = EvaluationService.linear_probe(view, dataset.labels, ridge=1e-3)
            report = EvaluationService.score(probe, view, dataset.labels)
            self.assertLessEqual(report.accuracy, 0.65)

    def test_components_are_nonlinearly_recoverable(self):
        """Test to verify KNN on the raw views recovers the component well above chance"""

        # Constants
        dataset = SyntheticService.generate_synthetic_mixture(n_per_component=500, seed=3)

        # Assert the circles view is separable by neighbors
        report = EvaluationService.knn_report(dataset.views[0], dataset.labels, dataset.views[0], dataset.labels, k=5)
        self.assertGreater(report.accuracy, 0.9)
