from dataclasses import dataclass
from typing import List

import numpy as np

from settings import settings


@dataclass(frozen=True)
class GccaSolution:
    """Solution of a GCCA problem. G is r x N with orthonormal rows and every U_j is o_j x r"""

    g: np.ndarray
    u: List[np.ndarray]
    eigenvalues: np.ndarray
    objective_l: float
    reconstruction_error: float
    eigengap: float

    @property
    def r(self) -> int:
        return self.g.shape[0]

    @property
    def degenerate(self) -> bool:
        """The r-th eigenvalue is (nearly) tied with the next one and G is not unique"""

        return self.eigengap < settings.EIGENGAP_TOLERANCE

    def flip_sign(self) -> 'GccaSolution':
        """Equivalent solution with G and every U_j negated"""

        return GccaSolution(
            g=-self.g,
            u=[-u for u in self.u],
            eigenvalues=self.eigenvalues,
            objective_l=self.objective_l,
            reconstruction_error=self.reconstruction_error,
            eigengap=self.eigengap
        )


@dataclass(frozen=True)
class GccaGradients:
    """Gradients of the GCCA objective L with respect to every view, dL/dY_j (o_j x N)"""

    views: List[np.ndarray]

    def __getitem__(self, j: int) -> np.ndarray:
        return self.views[j]

    def __len__(self) -> int:
        return len(self.views)
