import numpy as np

from policies.activation.activation_policy import ActivationPolicy


class SigmoidActivationPolicy(ActivationPolicy):
    """Logistic sigmoid, evaluated as (1 + tanh(z / 2)) / 2 to avoid overflow"""

    name = 'sigmoid'

    def execute(self, z: np.ndarray) -> np.ndarray:
        """Execution of the Activation Policy"""

        return 0.5 * (1.0 + np.tanh(0.5 * z))

    def derivative(self, z: np.ndarray, a: np.ndarray) -> np.ndarray:
        return a * (1.0 - a)
