import numpy as np

from policies.activation.activation_policy import ActivationPolicy


class IdentityActivationPolicy(ActivationPolicy):
    """Linear layer. Output layers always use it"""

    name = 'identity'

    def execute(self, z: np.ndarray) -> np.ndarray:
        """Execution of the Activation Policy"""

        return z

    def derivative(self, z: np.ndarray, a: np.ndarray) -> np.ndarray:
        return np.ones_like(z)
