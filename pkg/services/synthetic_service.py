import logging
from typing import Optional

import numpy as np

from objects.multiview_dataset import MultiviewDataset
from settings import settings

VIEW_NAMES = ['circles', 'moons', 'spiral']


def circles(component: np.ndarray, t: np.ndarray) -> np.ndarray:
    """Concentric circles of radius 1 and 2, angle 2 pi t"""

    radius = 1.0 + component

    return np.vstack([radius * np.cos(2 * np.pi * t), radius * np.sin(2 * np.pi * t)])


def moons(component: np.ndarray, t: np.ndarray) -> np.ndarray:
    """
    Two-moons pattern: an upward arc and the same arc rotated by pi. Each arc is translated to
    mean (0, 0), so the arcs cross rather than nest and the class means coincide
    """

    sign = np.where(component == 0, 1.0, -1.0)

    return sign * np.vstack([np.cos(np.pi * t), np.sin(np.pi * t) - 2 / np.pi])


def spiral(component: np.ndarray, t: np.ndarray) -> np.ndarray:
    """Two-arm spiral of one turn, the second arm rotated by pi. Each arm is shifted to mean (0, 0)"""

    radius = 0.5 + t
    angle = 2 * np.pi * t + np.pi * component
    arm_mean_y = np.where(component == 0, -1.0, 1.0) / (2 * np.pi)

    return np.vstack([radius * np.cos(angle), radius * np.sin(angle) - arm_mean_y])


VIEW_CURVES = [circles, moons, spiral]


class SyntheticService:
    """
    Class that generates the three-view, two-component synthetic mixture.
    Every view embeds the component of a sample on a nonlinear curve whose class-conditional
    means coincide, so no linear separator in any raw view does much better than chance.
    """

    @classmethod
    def generate_synthetic_mixture(
            cls,
            n_per_component: int = None,
            n_components: int = 2,
            noise: Optional[float] = None,
            seed: Optional[int] = None,
            shared_angle: bool = True
    ) -> MultiviewDataset:
        """
        Main method to generate the dataset. Every point has one latent position t shared by the
        three curves. Without shared_angle each view draws its own t, leaving the component as the
        only signal common to the views
        """

        n_per_component = settings.SYNTH_N_PER_COMPONENT if n_per_component is None else n_per_component
        noise = settings.SYNTH_NOISE if noise is None else noise

        if n_per_component < settings.SYNTH_MIN_PER_COMPONENT:
            raise ValueError(
                f'At least {settings.SYNTH_MIN_PER_COMPONENT} samples per component are needed, '
                f'got {n_per_component}'
            )

        if n_components != 2:
            raise ValueError(f'The mixture has exactly 2 components, got {n_components}')

        if noise < 0:
            raise ValueError(f'Noise must be nonnegative, got {noise}')

        rng = np.random.default_rng(seed)
        n_samples = n_components * n_per_component
        labels = rng.permutation(np.repeat(np.arange(n_components), n_per_component))

        t_shared = rng.uniform(size=n_samples)
        views = []
        for curve in VIEW_CURVES:
            t = t_shared if shared_angle else rng.uniform(size=n_samples)
            views.append(curve(labels, t) + noise * rng.standard_normal((2, n_samples)))

        logging.info(f'Synthetic mixture | Generated N = {n_samples}, noise = {noise}, seed = {seed}.')

        return MultiviewDataset(
            views=views,
            labels=labels,
            view_names=list(VIEW_NAMES),
            provenance=(
                f'synthetic mixture: n_per_component={n_per_component}, noise={noise}, '
                f'seed={seed}, shared_angle={shared_angle}'
            )
        )
