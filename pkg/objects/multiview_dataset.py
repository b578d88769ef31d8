from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from utils.errors import DataError
from utils.linalg_utils import as_matrix


@dataclass
class MultiviewDataset:
    """A class used to hold J column-aligned views (d_j x N) of the same N samples and their labels"""

    views: List[np.ndarray]
    labels: Optional[np.ndarray] = None
    view_names: List[str] = field(default_factory=lambda: list())
    provenance: str = ''

    def __post_init__(self):
        """Validates that every view and the labels agree on N"""

        if not self.views:
            raise DataError('A dataset needs at least one view')

        self.views = [as_matrix(view, name=f'view {j}') for j, view in enumerate(self.views)]
        n_samples = {view.shape[1] for view in self.views}
        if len(n_samples) != 1:
            raise DataError(f'Views disagree on the number of samples: {sorted(n_samples)}')

        if not self.view_names:
            self.view_names = [f'view_{j}' for j in range(len(self.views))]

        if len(self.view_names) != len(self.views) or len(set(self.view_names)) != len(self.views):
            raise DataError(f'Expected {len(self.views)} distinct view names, got {self.view_names}')

        if self.labels is not None:
            labels = np.asarray(self.labels)
            if labels.ndim != 1 or labels.shape[0] != self.n_samples:
                raise DataError(
                    f'Labels length {labels.shape[0] if labels.ndim == 1 else labels.shape} '
                    f'does not match N = {self.n_samples}'
                )

            if labels.size and (np.any(labels < 0) or np.any(labels != np.round(labels))):
                raise DataError('Labels must be nonnegative integers')

            self.labels = labels.astype(np.int64)

    @property
    def n_views(self) -> int:
        return len(self.views)

    @property
    def n_samples(self) -> int:
        return self.views[0].shape[1]

    @property
    def n_classes(self) -> int:
        return int(self.labels.max()) + 1 if self.labels is not None and self.labels.size else 0

    def subset(self, indices: np.ndarray) -> 'MultiviewDataset':
        """Dataset restricted to the given sample indices (columns)"""

        return MultiviewDataset(
            views=[view[:, indices] for view in self.views],
            labels=self.labels[indices] if self.labels is not None else None,
            view_names=list(self.view_names),
            provenance=self.provenance
        )


@dataclass(frozen=True)
class SplitSpec:
    """Train / tune / test fractions of a deterministic split"""

    train: float = 0.8
    tune: float = 0.1
    test: float = 0.1
    seed: int = 0

    def __post_init__(self):
        """Validates the fractions"""

        if min(self.train, self.tune, self.test) <= 0:
            raise ValueError(f'Split fractions must be positive, got {(self.train, self.tune, self.test)}')

        if abs(self.train + self.tune + self.test - 1) > 1e-12:
            raise ValueError(f'Split fractions must sum to 1, got {self.train + self.tune + self.test}')
