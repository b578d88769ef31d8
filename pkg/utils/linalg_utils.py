from typing import Tuple

import numpy as np

from objects.sym_eig_result import SymEigResult
from settings import settings
from utils.errors import ConvergenceError, NotPositiveDefiniteError, NotSymmetricError, ShapeError


def as_matrix(values, name: str = 'matrix') -> np.ndarray:
    """Converts to a dense 2-D float64 array, rejecting empty shapes and non-finite entries"""

    matrix = np.asarray(values, dtype=np.float64)
    if matrix.ndim != 2 or matrix.shape[0] < 1 or matrix.shape[1] < 1:
        raise ShapeError(f'{name} must be a non-empty 2-D matrix, got shape {matrix.shape}')

    if not np.all(np.isfinite(matrix)):
        raise ShapeError(f'{name} has non-finite entries')

    return matrix


def check_symmetric(m: np.ndarray, name: str = 'matrix'):
    """Raises if m is not square and symmetric within the relative tolerance"""

    if m.shape[0] != m.shape[1]:
        raise ShapeError(f'{name} must be square, got shape {m.shape}')

    scale = max(1.0, float(np.max(np.abs(m))))
    if np.max(np.abs(m - m.T)) > settings.SYMMETRY_TOLERANCE * scale:
        raise NotSymmetricError(f'{name} is not symmetric')


def _eigh(m: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Full spectrum of a symmetric matrix in descending order, eigenvectors as columns"""

    try:
        eigenvalues, eigenvectors = np.linalg.eigh((m + m.T) / 2)
    except np.linalg.LinAlgError as e:
        raise ConvergenceError(f'Symmetric eigensolver did not converge: {e}')

    return eigenvalues[::-1], eigenvectors[:, ::-1]


def sym_eig_topk(m, k: int) -> SymEigResult:
    """Returns the k largest eigenvalues of a symmetric matrix and their orthonormal eigenvectors (rows)"""

    m = as_matrix(m)
    check_symmetric(m)
    n = m.shape[0]
    if not 1 <= k <= n:
        raise ShapeError(f'k must be in [1, {n}], got {k}')

    eigenvalues, eigenvectors = _eigh(m)

    return SymEigResult(
        eigenvalues=np.ascontiguousarray(eigenvalues[:k]),
        eigenvectors=np.ascontiguousarray(eigenvectors[:, :k].T)
    )


def regularized_inverse_psd(c, eps: float) -> np.ndarray:
    """Returns (c + eps * I)^-1 of a symmetric PSD matrix, computed from its eigendecomposition"""

    c = as_matrix(c)
    check_symmetric(c)
    if eps < 0:
        raise ValueError(f'eps must be nonnegative, got {eps}')

    eigenvalues, eigenvectors = _eigh(c)
    norm = max(float(np.max(np.abs(eigenvalues))), 0.0)
    if eigenvalues[-1] < -settings.PSD_TOLERANCE * norm:
        raise NotPositiveDefiniteError(f'Matrix is not PSD: smallest eigenvalue {eigenvalues[-1]:.3e}')

    shifted = np.clip(eigenvalues, 0.0, None) + eps
    if shifted[-1] <= settings.SINGULAR_TOLERANCE * max(norm + eps, 1e-300):
        raise NotPositiveDefiniteError(
            f'Matrix is singular with eps = {eps}: smallest shifted eigenvalue {shifted[-1]:.3e}'
        )

    inverse = (eigenvectors / shifted) @ eigenvectors.T

    return (inverse + inverse.T) / 2


def mean_center_columns(y) -> np.ndarray:
    """Subtracts from every row its mean over the columns (samples)"""

    y = as_matrix(y)

    return y - y.mean(axis=1, keepdims=True)
