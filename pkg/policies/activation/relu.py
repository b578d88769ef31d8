import numpy as np

from policies.activation.activation_policy import ActivationPolicy


class ReluActivationPolicy(ActivationPolicy):
    """Rectified linear unit. The derivative at exactly 0 is taken as 0"""

    name = 'relu'

    def execute(self, z: np.ndarray) -> np.ndarray:
        """Execution of the Activation Policy"""

        return np.maximum(z, 0.0)

    def derivative(self, z: np.ndarray, a: np.ndarray) -> np.ndarray:
        return (z > 0).astype(np.float64)
