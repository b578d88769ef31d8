import logging
from typing import List, Optional

import numpy as np

from objects.gcca_input import GccaInput
from objects.gradcheck_report import GradcheckReport
from services.gcca_service import GCCAService
from settings import settings
from utils.errors import IllConditionedError
from utils.linalg_utils import mean_center_columns


class GradcheckService:
    """Class that verifies the closed-form GCCA gradient against central finite differences"""

    @classmethod
    def random_instance(
            cls,
            seed: int,
            dims: List[int],
            n_samples: int,
            r: int,
            eps: float,
            identical: bool = False
    ) -> GccaInput:
        """Mean-centered Gaussian views. identical repeats the first view in every slot"""

        rng = np.random.default_rng(seed)
        views = [mean_center_columns(rng.standard_normal((d, n_samples))) for d in dims]
        if identical:
            views = [views[0].copy() for _ in dims]

        return GccaInput(views=views, r=r, eps=eps)

    @classmethod
    def check(
            cls,
            problem: GccaInput,
            samples: int,
            seed: int = 0,
            h: Optional[float] = None,
            flip_sign: bool = False
    ) -> GradcheckReport:
        """Compares the analytic gradient with finite differences on `samples` random entries per view"""

        h = settings.GRADCHECK_STEP if h is None else h
        tolerance = settings.GRADCHECK_TOLERANCE
        solution = GCCAService.solve(problem)
        gradients = GCCAService.gradient(problem, solution).views
        if flip_sign:
            gradients = [-g for g in gradients]

        max_abs_gradient = float(max(np.max(np.abs(g)) for g in gradients))
        rng = np.random.default_rng(seed)
        max_error, n_sampled, n_compared = 0.0, 0, 0
        try:
            for j, view in enumerate(problem.views):
                entries = rng.choice(view.size, size=min(samples, view.size), replace=False)
                for entry in entries:
                    row, col = np.unravel_index(entry, view.shape)
                    numeric = GCCAService.finite_difference_objective(problem, j, row, col, h)
                    analytic = gradients[j][row, col]
                    n_sampled += 1

                    magnitude = max(abs(numeric), abs(analytic))
                    if magnitude > settings.GRADCHECK_MIN_MAGNITUDE:
                        max_error = max(max_error, abs(numeric - analytic) / magnitude)
                        n_compared += 1

        except IllConditionedError as e:
            logging.warning(f'Gradcheck | {e}')

            return GradcheckReport(
                passed=False,
                guard_passed=False,
                eigengap=float(solution.eigengap),
                max_relative_error=float('nan'),
                max_abs_gradient=max_abs_gradient,
                n_sampled=0,
                n_compared=0,
                tolerance=tolerance
            )

        logging.info(
            f'Gradcheck | {n_compared} of {n_sampled} entries compared, max relative error = {max_error:.3e}.'
        )

        return GradcheckReport(
            passed=bool(max_error <= tolerance),
            guard_passed=True,
            eigengap=float(solution.eigengap),
            max_relative_error=float(max_error),
            max_abs_gradient=max_abs_gradient,
            n_sampled=n_sampled,
            n_compared=n_compared,
            tolerance=tolerance
        )
