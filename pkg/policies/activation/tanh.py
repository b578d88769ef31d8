import numpy as np

from policies.activation.activation_policy import ActivationPolicy


class TanhActivationPolicy(ActivationPolicy):
    """Hyperbolic tangent"""

    name = 'tanh'

    def execute(self, z: np.ndarray) -> np.ndarray:
        """Execution of the Activation Policy"""

        return np.tanh(z)

    def derivative(self, z: np.ndarray, a: np.ndarray) -> np.ndarray:
        return 1.0 - a ** 2
