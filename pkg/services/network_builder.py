from typing import List, Sequence, Union

import numpy as np

from objects.mlp_network import MlpNetwork
from utils.errors import ShapeError

INIT_SCHEMES = ['glorot_uniform', 'identity']


class NetworkBuilder:
    """Class that enables the construction of the per-view networks"""

    @classmethod
    def build(
            cls,
            widths: List[int],
            activation: str = 'sigmoid',
            seed: Union[int, Sequence[int], None] = None,
            init: str = 'glorot_uniform'
    ) -> MlpNetwork:
        """Main method for building a network. Biases start at zero and the draws only depend on the seed"""

        widths = [int(w) for w in widths or []]
        if len(widths) < 2 or any(w < 1 for w in widths):
            raise ShapeError(f'Widths must have at least 2 entries >= 1, got {widths}')

        if init == 'glorot_uniform':
            rng = np.random.default_rng(seed)
            weights = [cls._glorot_uniform(rng, fan_in, fan_out) for fan_in, fan_out in zip(widths, widths[1:])]

        elif init == 'identity':
            if len(set(widths)) != 1:
                raise ShapeError(f'Identity initialization needs equal widths, got {widths}')

            weights = [np.eye(widths[0]) for _ in widths[1:]]

        else:
            raise ValueError(f'Unknown init scheme {init}. Options: {INIT_SCHEMES}')

        return MlpNetwork(
            layer_widths=widths,
            weights=weights,
            biases=[np.zeros(fan_out) for fan_out in widths[1:]],
            activation=activation
        )

    @staticmethod
    def glorot_limit(fan_in: int, fan_out: int) -> float:
        """Half-width of the uniform initialization interval"""

        return float(np.sqrt(6.0 / (fan_in + fan_out)))

    @classmethod
    def _glorot_uniform(cls, rng: np.random.Generator, fan_in: int, fan_out: int) -> np.ndarray:
        """Weights drawn uniformly on [-limit, limit], shaped fan_out x fan_in"""

        limit = cls.glorot_limit(fan_in, fan_out)

        return rng.uniform(-limit, limit, size=(fan_out, fan_in))
