import unittest

import numpy as np

from services.network_builder import NetworkBuilder
from utils.errors import ShapeError


class TestsNetworkBuilder(unittest.TestCase):
    """Tests for the network builder"""

    def test_build(self):
        """Test to verify the seeded Glorot initialization"""

        # Test 1: same seed gives bitwise identical networks, another seed does not
        a = NetworkBuilder.build([2, 10, 10, 2], seed=[8795, 2, 0])
        b = NetworkBuilder.build([2, 10, 10, 2], seed=[8795, 2, 0])
        c = NetworkBuilder.build([2, 10, 10, 2], seed=[8795, 2, 1])
        for p, q in zip(a.parameters(), b.parameters()):
            np.testing.assert_array_equal(p, q)

        self.assertFalse(np.array_equal(a.weights[0], c.weights[0]))

        # Test 2: weights within the Glorot limit and zero biases
        for k, (w, bias) in enumerate(zip(a.weights, a.biases)):
            fan_out, fan_in = w.shape
            self.assertEqual((fan_in, fan_out), (a.layer_widths[k], a.layer_widths[k + 1]))
            self.assertLessEqual(np.max(np.abs(w)), NetworkBuilder.glorot_limit(fan_in, fan_out))
            np.testing.assert_array_equal(bias, 0.0)

        self.assertAlmostEqual(NetworkBuilder.glorot_limit(2, 10), np.sqrt(0.5))

    def test_identity_init(self):
        """Test to verify the identity initialization"""

        # Test 1: equal widths give identity weights
        network = NetworkBuilder.build([3, 3, 3], activation='identity', init='identity')
        x = np.arange(6.0).reshape(3, 2)
        np.testing.assert_array_equal(network(x), x)

        # Test 2: unequal widths and unknown schemes
        with self.assertRaises(ShapeError):
            NetworkBuilder.build([3, 2], init='identity')

        with self.assertRaises(ValueError):
            NetworkBuilder.build([3, 2], init='orthogonal')

        with self.assertRaises(ShapeError):
            NetworkBuilder.build([3])

    def test_synthetic_architecture(self):
        """Test to verify the shapes of a three hidden layer network and the spread of its initial weights"""

        # Test 1: one weight matrix and bias per layer
        network = NetworkBuilder.build([2, 10, 10, 10, 2], seed=0)
        self.assertEqual([w.shape for w in network.weights], [(10, 2), (10, 10), (10, 10), (2, 10)])
        self.assertEqual([b.shape for b in network.biases], [(10,), (10,), (10,), (2,)])

        # Test 2: 1000 first-layer draws over 50 seeds have the standard deviation of U(-limit, limit)
        draws = np.concatenate([
            NetworkBuilder.build([2, 10, 10, 10, 2], seed=[seed, 2, 0]).weights[0].ravel() for seed in range(50)
        ])
        self.assertEqual(draws.size, 1000)
        target = NetworkBuilder.glorot_limit(2, 10) / np.sqrt(3.0)
        self.assertLess(abs(float(np.std(draws)) - target), 0.2 * target)
