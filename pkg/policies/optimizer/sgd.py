from dataclasses import replace
from typing import List, Tuple

import numpy as np

from objects.optimizer_state import OptimizerState
from policies.optimizer.optimizer_policy import OptimizerPolicy


class SGDOptimizerPolicy(OptimizerPolicy):
    """Plain gradient descent: p <- p - lr * g"""

    name = 'sgd'

    def execute(
            self,
            state: OptimizerState,
            params: List[np.ndarray],
            grads: List[np.ndarray]
    ) -> Tuple[List[np.ndarray], OptimizerState]:
        """Execution of the Optimizer Policy"""

        new_params = [p - state.learning_rate * g for p, g in zip(params, grads)]

        return new_params, replace(state, step=state.step + 1)
