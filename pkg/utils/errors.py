from typing import Any, List, Optional


class DgccaError(Exception):
    """Base class of every expected failure. The exit code is the CLI contract"""

    exit_code: int = 1


class ConfigError(DgccaError):
    """Invalid configuration: unknown key, value out of range, inconsistent settings"""

    exit_code = 2


class DataError(DgccaError):
    """Unreadable, truncated or inconsistent data and model files"""

    exit_code = 3


class DivergenceError(DgccaError):
    """Training produced non-finite values. The history collected so far is kept"""

    exit_code = 4

    def __init__(self, msg: str, history: Optional[List[Any]] = None):
        super().__init__(msg)
        self.history = history if history is not None else []


class GradcheckError(DgccaError):
    """Analytic and finite-difference gradients disagree"""

    exit_code = 5


class NumericalError(DgccaError, ValueError):
    """Failure of a numerical kernel"""

    exit_code = 4


class ShapeError(NumericalError):
    """Matrix shapes are inconsistent"""


class NotSymmetricError(NumericalError):
    """A symmetric matrix was expected"""


class NotPositiveDefiniteError(NumericalError):
    """A PSD matrix has a negative eigenvalue or a regularized matrix is singular"""


class ConvergenceError(NumericalError):
    """The eigensolver did not converge"""


class IllConditionedError(NumericalError):
    """The eigengap is too small for the GCCA objective to be differentiable"""


class TrainingError(DgccaError):
    """A batch failed during training. The message holds the epoch and batch"""

    exit_code = 4
