from typing import List, Tuple

import numpy as np

from objects.optimizer_state import OptimizerState
from policies.policy import Policy


class OptimizerPolicy(Policy):
    """Class that establishes how parameters are updated from their gradients"""

    def execute(
            self,
            state: OptimizerState,
            params: List[np.ndarray],
            grads: List[np.ndarray]
    ) -> Tuple[List[np.ndarray], OptimizerState]:
        """Implementation of the policy: returns the updated parameters and state"""

        pass

    @staticmethod
    def _buffers(buffers: List[np.ndarray], params: List[np.ndarray]) -> List[np.ndarray]:
        """Existing buffers, or zeros shaped like the parameters on the first step"""

        return buffers if buffers else [np.zeros_like(p) for p in params]
