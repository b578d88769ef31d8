import unittest
from unittest.mock import patch

import numpy as np

from services.gradcheck_service import GradcheckService


class TestsGradcheckService(unittest.TestCase):
    """Tests for the finite-difference check of the GCCA gradient"""

    def test_check(self):
        """Test to verify a random instance passes and a flipped gradient fails"""

        # Constants
        problem = GradcheckService.random_instance(seed=0, dims=[3, 4, 5], n_samples=40, r=2, eps=1e-3)

        # Test 1: the analytic gradient passes
        report = GradcheckService.check(problem, samples=8, seed=0)
        self.assertTrue(report.passed)
        self.assertTrue(report.guard_passed)
        self.assertEqual(report.n_sampled, 24)
        self.assertGreater(report.n_compared, 0)
        self.assertLessEqual(report.max_relative_error, 1e-4)
        self.assertEqual(report.calculate_metrics()['passed'], True)

        # Test 2: the harness catches a wrong sign
        report = GradcheckService.check(problem, samples=8, seed=0, flip_sign=True)
        self.assertFalse(report.passed)
        self.assertGreater(report.max_relative_error, 1.0)

    def test_identical_views(self):
        """Test to verify identical views have zero gradients and pass"""

        # Constants
        problem = GradcheckService.random_instance(seed=2, dims=[3, 3, 3], n_samples=30, r=3, eps=0.0, identical=True)

        # Assert all gradients vanish and the check passes
        report = GradcheckService.check(problem, samples=5, seed=1)
        self.assertTrue(report.passed)
        self.assertLess(report.max_abs_gradient, 1e-8)

    def test_degenerate_guard(self):
        """Test to verify a tied eigenvalue fails the eigengap guard"""

        # Identical views with r below their rank tie the top eigenvalues of M
        problem = GradcheckService.random_instance(seed=2, dims=[3, 3, 3], n_samples=30, r=1, eps=0.0, identical=True)

        # Assert the report fails without comparing any entry
        report = GradcheckService.check(problem, samples=5, seed=1)
        self.assertFalse(report.passed)
        self.assertFalse(report.guard_passed)
        self.assertEqual(report.n_compared, 0)
        self.assertTrue(np.isnan(report.max_relative_error))

    @patch('settings.settings.GRADCHECK_MIN_MAGNITUDE', 1e-4)
    def test_random_instances(self):
        """Test to verify the gradient on fixed-seed instances with 2, 3 and 5 views"""

        # Constants: (dims, N, r, eps) with generic, non-intersecting view subspaces
        instances = [
            ([3, 4], 10, 1, 1e-8),
            ([5, 3], 12, 2, 1e-4),
            ([8, 6], 20, 3, 1e-8),
            ([3, 3, 3], 12, 2, 1e-4),
            ([4, 5, 6], 20, 3, 1e-8),
            ([8, 3, 7], 25, 1, 1e-4),
            ([6, 7, 8], 22, 2, 1e-4),
            ([3, 3, 3, 3, 3], 17, 2, 1e-8),
            ([3, 4, 5, 6, 7], 30, 3, 1e-4),
            ([8, 8, 8, 8, 8], 40, 1, 1e-8),
            ([3, 3], 40, 3, 1e-8),
        ]

        checked = 0
        for seed, (dims, n_samples, r, eps) in enumerate(instances):
            # Check 20 entries per view
            problem = GradcheckService.random_instance(seed, dims, n_samples, r, eps)
            report = GradcheckService.check(problem, samples=20, seed=seed)
            if not report.guard_passed:
                continue

            # Assert every compared entry is within the relative tolerance
            checked += 1
            self.assertEqual(report.n_sampled, 20 * len(dims))
            self.assertTrue(report.passed, f'Instance {seed} | max relative error {report.max_relative_error:.3e}')

        self.assertGreaterEqual(checked, 8)
