import numpy as np

from policies.policy import Policy


class ActivationPolicy(Policy):
    """Class that establishes the elementwise nonlinearity of a hidden layer"""

    def execute(self, z: np.ndarray) -> np.ndarray:
        """Implementation of the policy: activation of the pre-activations z"""

        pass

    def derivative(self, z: np.ndarray, a: np.ndarray) -> np.ndarray:
        """Elementwise derivative at the pre-activations z, whose activations are a"""

        pass
