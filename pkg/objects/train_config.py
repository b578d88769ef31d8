from dataclasses import dataclass, asdict
from typing import Any, Dict, List, Optional

from utils.errors import ConfigError

ACTIVATIONS = ['sigmoid', 'relu', 'tanh', 'identity']
INITS = ['glorot_uniform', 'identity']
OPTIMIZERS = ['sgd', 'sgd_momentum', 'adam']


@dataclass(frozen=True)
class ViewConfig:
    """Architecture and WGCCA weight of one view's network"""

    widths: List[int]
    activation: str = 'sigmoid'
    init: str = 'glorot_uniform'
    weight: float = 1.0


@dataclass(frozen=True)
class TrainConfig:
    """All hyperparameters of a DGCCA training run"""

    views: List[ViewConfig]
    r: int = 2
    eps: float = 1e-8
    optimizer: str = 'adam'
    learning_rate: float = 1e-3
    momentum: float = 0.9
    beta_1: float = 0.9
    beta_2: float = 0.999
    adam_eps: float = 1e-8
    l1: float = 0.0
    l2: float = 0.0
    batch_size: int = 2000
    epochs: int = 200
    seed: int = 0
    tune_fraction: float = 0.1
    shuffle: bool = True
    full_pass_every: int = 0

    def __post_init__(self):
        """Validates every hyperparameter, naming the offending key"""

        checks = [
            ('r', self.r >= 1),
            ('eps', self.eps >= 0),
            ('optimizer', self.optimizer in OPTIMIZERS),
            ('learning_rate', self.learning_rate >= 0),
            ('momentum', 0 <= self.momentum < 1),
            ('beta_1', 0 <= self.beta_1 < 1),
            ('beta_2', 0 <= self.beta_2 < 1),
            ('adam_eps', self.adam_eps > 0),
            ('l1', self.l1 >= 0),
            ('l2', self.l2 >= 0),
            ('batch_size', self.batch_size >= max(self.r, 2)),
            ('epochs', self.epochs >= 0),
            ('tune_fraction', 0 <= self.tune_fraction <= 0.5),
            ('full_pass_every', self.full_pass_every >= 0),
        ]
        for key, valid in checks:
            if not valid:
                raise ConfigError(f'Invalid value for {key}: {getattr(self, key)!r}')

        if len(self.views) < 2:
            raise ConfigError(f'DGCCA needs at least 2 views, got {len(self.views)}')

        for j, view in enumerate(self.views):
            if len(view.widths) < 2 or any(w < 1 for w in view.widths):
                raise ConfigError(f'Invalid value for view.{j}.widths: {view.widths}')

            if view.widths[-1] < self.r:
                raise ConfigError(f'Invalid value for view.{j}.widths: output width {view.widths[-1]} < r = {self.r}')

            if view.activation not in ACTIVATIONS:
                raise ConfigError(f'Invalid value for view.{j}.activation: {view.activation!r}')

            if view.init not in INITS:
                raise ConfigError(f'Invalid value for view.{j}.init: {view.init!r}')

            if view.init == 'identity' and len(set(view.widths)) != 1:
                raise ConfigError(f'Invalid value for view.{j}.init: identity needs equal widths')

            if not view.weight >= 0:
                raise ConfigError(f'Invalid value for view.{j}.weight: {view.weight}')

        if max(view.weight for view in self.views) <= 0:
            raise ConfigError('Invalid value for weight: at least one view weight must be positive')

    @property
    def weights(self) -> Optional[List[float]]:
        """WGCCA weights, or None when every view has weight 1"""

        weights = [float(view.weight) for view in self.views]

        return None if all(w == 1.0 for w in weights) else weights

    def to_dict(self) -> Dict[str, Any]:
        """Plain structured echo of the config"""

        return asdict(self)

    @classmethod
    def from_dict(cls, values: Dict[str, Any]) -> 'TrainConfig':
        """Inverse of to_dict"""

        values = dict(values)
        views = [ViewConfig(**view) for view in values.pop('views')]

        return cls(views=views, **values)
