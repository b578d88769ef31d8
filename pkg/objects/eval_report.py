from dataclasses import dataclass
from typing import Any, Dict, Optional

import numpy as np


@dataclass(frozen=True)
class EvalReport:
    """Class to store the result of a downstream evaluation"""

    accuracy: float
    confusion: np.ndarray
    n_eval: int
    metric: str
    k: Optional[int] = None
    ridge: Optional[float] = None

    def __post_init__(self):
        """Checks that the counts and the accuracy agree"""

        if int(self.confusion.sum()) != self.n_eval:
            raise ValueError(f'Confusion counts sum to {int(self.confusion.sum())}, expected {self.n_eval}')

        if self.n_eval and self.accuracy != np.trace(self.confusion) / self.n_eval:
            raise ValueError('Accuracy does not match the trace of the confusion matrix')

    def calculate_metrics(self) -> Dict[str, Any]:
        """Method to express the report as plain structured values"""

        return {
            'metric': self.metric,
            'accuracy': self.accuracy,
            'n_eval': self.n_eval,
            'k': self.k,
            'ridge': self.ridge,
            'confusion': self.confusion.astype(int).tolist(),
        }
