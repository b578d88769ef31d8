from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from objects.mlp_network import MlpNetwork
from objects.train_config import TrainConfig


@dataclass(frozen=True)
class EpochMetric:
    """Class to store the reconstruction errors of one training epoch"""

    epoch: int
    train_error: float
    tune_error: Optional[float]
    seconds: float = 0.0

    def calculate_metrics(self) -> Dict[str, Any]:
        """Method to express the metric as one epoch log record"""

        return {
            'epoch': self.epoch,
            'train_err': self.train_error,
            'tune_err': self.tune_error,
            'seconds': self.seconds,
        }


@dataclass(frozen=True)
class DgccaModel:
    """J trained networks with the GCCA head fixed by the final full-data pass"""

    networks: List[MlpNetwork]
    u: List[np.ndarray]
    g: np.ndarray
    means: List[np.ndarray]
    config: TrainConfig
    eigenvalues: np.ndarray
    train_error: float
    history: List[EpochMetric] = field(default_factory=lambda: list())

    @property
    def n_views(self) -> int:
        return len(self.networks)

    @property
    def r(self) -> int:
        return self.config.r
