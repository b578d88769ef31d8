from typing import List, Tuple

import numpy as np

from objects.optimizer_state import OptimizerState
from policies.optimizer.adam import AdamOptimizerPolicy
from policies.optimizer.sgd import SGDOptimizerPolicy
from policies.optimizer.sgd_momentum import MomentumOptimizerPolicy
from utils.errors import DivergenceError, ShapeError

OPTIMIZER_POLICIES_MAP = {
    'sgd': SGDOptimizerPolicy(),
    'sgd_momentum': MomentumOptimizerPolicy(),
    'adam': AdamOptimizerPolicy(),
}


class OptimizerService:
    """Class that applies the configured update rule to a flat list of parameters"""

    @classmethod
    def apply_update(
            cls,
            state: OptimizerState,
            params: List[np.ndarray],
            grads: List[np.ndarray]
    ) -> Tuple[List[np.ndarray], OptimizerState]:
        """Main method: validates the step and delegates to the policy of state.kind"""

        if state.kind not in OPTIMIZER_POLICIES_MAP:
            raise ValueError(f'Unknown optimizer {state.kind}. Options: {list(OPTIMIZER_POLICIES_MAP)}')

        if state.learning_rate < 0:
            raise ValueError(f'Learning rate must be nonnegative, got {state.learning_rate}')

        if len(params) != len(grads) or any(p.shape != g.shape for p, g in zip(params, grads)):
            raise ShapeError('Parameters and gradients do not match')

        for buffers in (state.first_moments, state.second_moments):
            if buffers and (len(buffers) != len(params) or any(b.shape != p.shape for b, p in zip(buffers, params))):
                raise ShapeError('Optimizer buffers do not match the parameters')

        if not all(np.all(np.isfinite(g)) for g in grads):
            raise DivergenceError(f'Non-finite gradient at optimizer step {state.step + 1}')

        return OPTIMIZER_POLICIES_MAP[state.kind].execute(state, params, grads)
