from dataclasses import dataclass
from typing import Any, Dict


@dataclass(frozen=True)
class GradcheckReport:
    """Class to store the comparison of analytic and finite-difference GCCA gradients"""

    passed: bool
    guard_passed: bool
    eigengap: float
    max_relative_error: float
    max_abs_gradient: float
    n_sampled: int
    n_compared: int
    tolerance: float

    def calculate_metrics(self) -> Dict[str, Any]:
        """Method to express the report as plain structured values"""

        return dict(self.__dict__)
