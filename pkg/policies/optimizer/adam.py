from dataclasses import replace
from typing import List, Tuple

import numpy as np

from objects.optimizer_state import OptimizerState
from policies.optimizer.optimizer_policy import OptimizerPolicy


class AdamOptimizerPolicy(OptimizerPolicy):
    """Adam with bias-corrected first and second moment estimates"""

    name = 'adam'

    def execute(
            self,
            state: OptimizerState,
            params: List[np.ndarray],
            grads: List[np.ndarray]
    ) -> Tuple[List[np.ndarray], OptimizerState]:
        """Execution of the Optimizer Policy"""

        step = state.step + 1
        beta_1, beta_2 = state.beta_1, state.beta_2

        first_moments = [
            beta_1 * m + (1 - beta_1) * g
            for m, g in zip(self._buffers(state.first_moments, params), grads)
        ]
        second_moments = [
            beta_2 * v + (1 - beta_2) * g ** 2
            for v, g in zip(self._buffers(state.second_moments, params), grads)
        ]

        first_correction, second_correction = 1 - beta_1 ** step, 1 - beta_2 ** step
        new_params = [
            p - state.learning_rate * (m / first_correction) / (np.sqrt(v / second_correction) + state.adam_eps)
            for p, m, v in zip(params, first_moments, second_moments)
        ]

        return new_params, replace(
            state,
            step=step,
            first_moments=first_moments,
            second_moments=second_moments
        )
