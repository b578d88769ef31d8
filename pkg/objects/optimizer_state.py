from dataclasses import dataclass, field
from typing import List

import numpy as np


@dataclass(frozen=True)
class OptimizerState:
    """Hyperparameters, step count and moment buffers of one training run's update rule"""

    kind: str = 'sgd'
    learning_rate: float = 0.005
    momentum: float = 0.9
    beta_1: float = 0.9
    beta_2: float = 0.999
    adam_eps: float = 1e-8
    step: int = 0
    first_moments: List[np.ndarray] = field(default_factory=lambda: list())
    second_moments: List[np.ndarray] = field(default_factory=lambda: list())

    @property
    def velocity(self) -> List[np.ndarray]:
        """Velocity buffers of SGD with momentum, kept as first moments"""

        return self.first_moments
