from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from utils.errors import ShapeError
from utils.linalg_utils import as_matrix


@dataclass
class GccaInput:
    """A class used to hold the J views (o_j x N) a GCCA problem is solved on"""

    views: List[np.ndarray]
    r: int
    eps: float = 0.0
    weights: Optional[List[float]] = None

    def __post_init__(self):
        """Validates the problem right after it is created"""

        self.views = [as_matrix(view, name=f'view {j}') for j, view in enumerate(self.views)]

        if len(self.views) < 2:
            raise ShapeError(f'GCCA needs at least 2 views, got {len(self.views)}')

        n_samples = {view.shape[1] for view in self.views}
        if len(n_samples) != 1:
            raise ShapeError(f'All views must share the number of samples, got {sorted(n_samples)}')

        max_r = min(self.n_samples, min(view.shape[0] for view in self.views))
        if not 1 <= self.r <= max_r:
            raise ShapeError(f'r must be in [1, {max_r}], got {self.r}')

        if self.eps < 0:
            raise ValueError(f'eps must be nonnegative, got {self.eps}')

        if self.weights is not None:
            self.weights = [float(w) for w in self.weights]
            if len(self.weights) != len(self.views):
                raise ShapeError(f'Expected {len(self.views)} weights, got {len(self.weights)}')

            if any(w < 0 or not np.isfinite(w) for w in self.weights) or max(self.weights) <= 0:
                raise ValueError(f'Weights must be nonnegative with one positive entry, got {self.weights}')

    @property
    def n_views(self) -> int:
        return len(self.views)

    @property
    def n_samples(self) -> int:
        return self.views[0].shape[1]

    @property
    def view_weights(self) -> List[float]:
        """Weights of every view, 1 for each when the problem is unweighted"""

        return self.weights if self.weights is not None else [1.0] * self.n_views

    def with_views(self, views: List[np.ndarray]) -> 'GccaInput':
        """Same problem on other views"""

        return GccaInput(views=views, r=self.r, eps=self.eps, weights=self.weights)
