from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class SymEigResult:
    """Top-k eigenpairs of a symmetric matrix. Eigenvalues descend and eigenvectors are the rows"""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def k(self) -> int:
        return self.eigenvalues.shape[0]
