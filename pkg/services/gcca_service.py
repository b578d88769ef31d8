import numpy as np

from objects.gcca_input import GccaInput
from objects.gcca_solution import GccaGradients, GccaSolution
from utils.errors import IllConditionedError, NotPositiveDefiniteError, ShapeError
from utils.linalg_utils import regularized_inverse_psd, sym_eig_topk


class GCCAService:
    """
    Class that contains the linear GCCA solver and the closed-form gradient of its objective.
    Views are o_j x N (features x samples) and are expected to be mean-centered by the caller.
    """

    @classmethod
    def solve(cls, problem: GccaInput) -> GccaSolution:
        """
        Solves min sum_j w_j ||G - U_j^T Y_j||_F^2 + eps ||U_j||_F^2 subject to G G^T = I_r.
        The rows of G are the top-r eigenvectors of M = sum_j w_j Y_j^T (Y_j Y_j^T + eps I)^-1 Y_j
        """

        m, cov_inverses = cls._build_m(problem)
        r, n_samples = problem.r, problem.n_samples

        eig = sym_eig_topk(m, min(r + 1, n_samples))
        g = eig.eigenvectors[:r]
        eigenvalues = eig.eigenvalues[:r]
        eigengap = float(eig.eigenvalues[r - 1] - eig.eigenvalues[r]) if r < n_samples else np.inf

        u = [c_inv @ view @ g.T for c_inv, view in zip(cov_inverses, problem.views)]

        return GccaSolution(
            g=g,
            u=u,
            eigenvalues=eigenvalues,
            objective_l=float(np.sum(eigenvalues)),
            reconstruction_error=float(r * sum(problem.view_weights) - np.trace(g @ m @ g.T)),
            eigengap=eigengap
        )

    @classmethod
    def objective_value(cls, problem: GccaInput) -> float:
        """Value of L, the sum of the top-r eigenvalues of M"""

        return cls.solve(problem).objective_l

    @classmethod
    def gradient(cls, problem: GccaInput, solution: GccaSolution) -> GccaGradients:
        """Returns dL/dY_j = 2 w_j (U_j G - U_j U_j^T Y_j) for every view"""

        cls._check_solution(problem, solution)

        return GccaGradients(
            views=[
                2 * weight * u @ (solution.g - u.T @ view)
                for u, view, weight in zip(solution.u, problem.views, problem.view_weights)
            ]
        )

    @classmethod
    def reconstruction_error_direct(cls, solution: GccaSolution, problem: GccaInput) -> float:
        """Direct evaluation of sum_j w_j (||G - U_j^T Y_j||_F^2 + eps ||U_j||_F^2)"""

        cls._check_solution(problem, solution)

        return float(sum(
            weight * (np.sum((solution.g - u.T @ view) ** 2) + problem.eps * np.sum(u ** 2))
            for u, view, weight in zip(solution.u, problem.views, problem.view_weights)
        ))

    @classmethod
    def finite_difference_objective(cls, problem: GccaInput, view: int, row: int, col: int, h: float) -> float:
        """Central difference (L(Y_j + hE) - L(Y_j - hE)) / 2h for the entry (row, col) of a view"""

        if not 0 <= view < problem.n_views:
            raise IndexError(f'View index {view} out of range [0, {problem.n_views})')

        rows, cols = problem.views[view].shape
        if not (0 <= row < rows and 0 <= col < cols):
            raise IndexError(f'Entry ({row}, {col}) out of range for a {rows} x {cols} view')

        if h <= 0:
            raise ValueError(f'Step must be positive, got {h}')

        base = cls.solve(problem)
        if base.degenerate:
            raise IllConditionedError(
                f'Eigengap {base.eigengap:.3e} too small: L is not differentiable at this point'
            )

        def perturbed(step: float) -> float:
            views = [v.copy() for v in problem.views]
            views[view][row, col] += step

            return cls.objective_value(problem.with_views(views))

        return (perturbed(h) - perturbed(-h)) / (2 * h)

    @staticmethod
    def _build_m(problem: GccaInput):
        """Builds M and the regularized inverse covariance of every view"""

        m = np.zeros((problem.n_samples, problem.n_samples))
        cov_inverses = []
        for j, (view, weight) in enumerate(zip(problem.views, problem.view_weights)):
            try:
                c_inv = regularized_inverse_psd(view @ view.T, problem.eps)
            except NotPositiveDefiniteError as e:
                raise NotPositiveDefiniteError(f'View {j} | Covariance is rank deficient: {e}')

            cov_inverses.append(c_inv)
            if weight != 0:
                m += weight * (view.T @ c_inv @ view)

        return (m + m.T) / 2, cov_inverses

    @staticmethod
    def _check_solution(problem: GccaInput, solution: GccaSolution):
        """Raises if a solution does not belong to the problem's shapes"""

        if len(solution.u) != problem.n_views or solution.g.shape != (problem.r, problem.n_samples):
            raise ShapeError('Solution does not match the problem (number of views or G shape)')

        for j, (u, view) in enumerate(zip(solution.u, problem.views)):
            if u.shape != (view.shape[0], problem.r):
                raise ShapeError(f'View {j} | U shape {u.shape} does not match ({view.shape[0]}, {problem.r})')
