import unittest

import numpy as np

from objects.mlp_network import ACTIVATION_POLICIES_MAP


class TestsActivationPolicies(unittest.TestCase):
    """Tests for the activation policies"""

    def test_values(self):
        """Test to verify known values of every activation"""

        # Constants
        z = np.array([-2.0, 0.0, 3.0])

        # Assert the activations
        np.testing.assert_allclose(ACTIVATION_POLICIES_MAP['sigmoid'].execute(z), 1 / (1 + np.exp(-z)))
        np.testing.assert_allclose(ACTIVATION_POLICIES_MAP['tanh'].execute(z), np.tanh(z))
        np.testing.assert_array_equal(ACTIVATION_POLICIES_MAP['relu'].execute(z), [0.0, 0.0, 3.0])
        np.testing.assert_array_equal(ACTIVATION_POLICIES_MAP['identity'].execute(z), z)

        # The sigmoid does not overflow
        self.assertTrue(np.all(np.isfinite(ACTIVATION_POLICIES_MAP['sigmoid'].execute(np.array([-1e4, 1e4])))))

    def test_derivatives(self):
        """Test to verify every derivative against central differences"""

        # Constants
        z = np.array([-1.5, -0.3, 0.4, 2.0])
        h = 1e-6

        for name, policy in ACTIVATION_POLICIES_MAP.items():
            # Compare the derivative away from the relu kink
            numeric = (policy.execute(z + h) - policy.execute(z - h)) / (2 * h)
            np.testing.assert_allclose(policy.derivative(z, policy.execute(z)), numeric, rtol=1e-6, atol=1e-9)
            self.assertEqual(policy.name, name)

        # The relu derivative at 0 is 0
        self.assertEqual(ACTIVATION_POLICIES_MAP['relu'].derivative(np.array([0.0]), np.array([0.0]))[0], 0.0)
