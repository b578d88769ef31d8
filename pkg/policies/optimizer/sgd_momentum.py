from dataclasses import replace
from typing import List, Tuple

import numpy as np

from objects.optimizer_state import OptimizerState
from policies.optimizer.optimizer_policy import OptimizerPolicy


class MomentumOptimizerPolicy(OptimizerPolicy):
    """Gradient descent with momentum: v <- momentum * v + g, p <- p - lr * v"""

    name = 'sgd_momentum'

    def execute(
            self,
            state: OptimizerState,
            params: List[np.ndarray],
            grads: List[np.ndarray]
    ) -> Tuple[List[np.ndarray], OptimizerState]:
        """Execution of the Optimizer Policy"""

        velocity = [
            state.momentum * v + g
            for v, g in zip(self._buffers(state.velocity, params), grads)
        ]
        new_params = [p - state.learning_rate * v for p, v in zip(params, velocity)]

        return new_params, replace(state, step=state.step + 1, first_moments=velocity)
