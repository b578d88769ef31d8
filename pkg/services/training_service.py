import logging
import time
from typing import List, Optional, Tuple

import numpy as np

from objects.dgcca_model import DgccaModel, EpochMetric
from objects.gcca_input import GccaInput
from objects.gcca_solution import GccaSolution
from objects.mlp_network import MlpNetwork
from objects.optimizer_state import OptimizerState
from objects.train_config import TrainConfig
from services.gcca_service import GCCAService
from services.network_builder import NetworkBuilder
from services.optimizer_service import OptimizerService
from settings import settings
from utils.errors import ConfigError, DataError, DivergenceError, NumericalError, TrainingError
from utils.linalg_utils import as_matrix, mean_center_columns
from utils.logging_utils import epoch_log, log

SPLIT_STREAM = 0
SHUFFLE_STREAM = 1
NETWORK_STREAM = 2


class TrainingService:
    """
    Class that trains DGCCA models with minibatch gradient descent: every batch is forwarded
    through the per-view networks, mean-centered and solved with GCCA, and the GCCA gradient
    is back-propagated into the network weights
    """

    @classmethod
    def train_dgcca(
            cls,
            views: List[np.ndarray],
            config: TrainConfig,
            tuning_views: Optional[List[np.ndarray]] = None
    ) -> DgccaModel:
        """Main method for training. Without tuning views, config.tune_fraction of the samples is held out"""

        views = [as_matrix(view, name=f'view {j}') for j, view in enumerate(views)]
        cls._check_views(views, config)

        if tuning_views is None:
            views, tuning_views = cls._hold_out(views, config)

        elif tuning_views:
            tuning_views = [as_matrix(view, name=f'tuning view {j}') for j, view in enumerate(tuning_views)]
            cls._check_views(tuning_views, config)

        networks = cls.build_networks(config)
        state = OptimizerState(
            kind=config.optimizer,
            learning_rate=config.learning_rate,
            momentum=config.momentum,
            beta_1=config.beta_1,
            beta_2=config.beta_2,
            adam_eps=config.adam_eps
        )
        shuffle_rng = np.random.default_rng([config.seed, SHUFFLE_STREAM])
        history: List[EpochMetric] = []

        for epoch in range(1, config.epochs + 1):
            start = time.perf_counter()
            batch_errors = []
            for b, indices in enumerate(cls.batches(views[0].shape[1], config, shuffle_rng)):
                try:
                    networks, state, error = cls._train_batch(networks, [v[:, indices] for v in views], config, state)
                except DivergenceError as e:
                    raise DivergenceError(f'Epoch {epoch} | batch {b} | {e}', history)
                except NumericalError as e:
                    raise TrainingError(f'Epoch {epoch} | batch {b} | GCCA failed: {e}') from e

                batch_errors.append(error)
                log('Training', f'Epoch {epoch} | batch {b} | reconstruction error = {error:.6f}')

            train_error = float(np.mean(batch_errors))
            if config.full_pass_every and epoch % config.full_pass_every == 0:
                _, solution = cls._guarded(lambda: cls.full_pass(networks, views, config), epoch)
                train_error = solution.reconstruction_error

            tune_error = None
            if tuning_views:
                tune_error = cls._guarded(lambda: cls._tuning_error(networks, views, tuning_views, config), epoch)

            metric = EpochMetric(
                epoch=epoch,
                train_error=train_error,
                tune_error=tune_error,
                seconds=time.perf_counter() - start
            )
            if not np.isfinite(train_error) or (tune_error is not None and not np.isfinite(tune_error)):
                raise DivergenceError(f'Epoch {epoch} | non-finite reconstruction error', history)

            history.append(metric)
            logging.info(epoch_log(metric))

        means, solution = cls._guarded(lambda: cls.full_pass(networks, views, config), config.epochs)
        logging.info(f'Training | Final full pass reconstruction error = {solution.reconstruction_error:.6f}.')

        return DgccaModel(
            networks=networks,
            u=solution.u,
            g=solution.g,
            means=means,
            config=config,
            eigenvalues=solution.eigenvalues,
            train_error=solution.reconstruction_error,
            history=history
        )

    @classmethod
    def build_networks(cls, config: TrainConfig) -> List[MlpNetwork]:
        """Initial networks, each seeded from the run seed and its view index"""

        return [
            NetworkBuilder.build(
                widths=view.widths,
                activation=view.activation,
                seed=[config.seed, NETWORK_STREAM, j],
                init=view.init
            )
            for j, view in enumerate(config.views)
        ]

    @classmethod
    def batches(cls, n_samples: int, config: TrainConfig, rng: np.random.Generator) -> List[np.ndarray]:
        """Sample indices of every batch of an epoch. A short last batch is dropped"""

        order = rng.permutation(n_samples) if config.shuffle else np.arange(n_samples)
        batches = [order[start:start + config.batch_size] for start in range(0, n_samples, config.batch_size)]

        min_size = max(config.r + 1, settings.MIN_BATCH_REMAINDER)
        if len(batches) > 1 and len(batches[-1]) < min_size:
            batches = batches[:-1]

        return batches

    @classmethod
    def full_pass(
            cls,
            networks: List[MlpNetwork],
            views: List[np.ndarray],
            config: TrainConfig
    ) -> Tuple[List[np.ndarray], GccaSolution]:
        """Forwards all the data, mean-centers the outputs and solves GCCA. Returns the output means too"""

        outputs = [network(view) for network, view in zip(networks, views)]
        means = [output.mean(axis=1) for output in outputs]
        problem = GccaInput(
            views=[output - mean[:, None] for output, mean in zip(outputs, means)],
            r=config.r,
            eps=config.eps,
            weights=config.weights
        )

        return means, GCCAService.solve(problem)

    @classmethod
    def transform(cls, model: DgccaModel, views: List[np.ndarray]) -> List[np.ndarray]:
        """Per-view projections U_j^T (f_j(X_j) - training mean_j), each r x N"""

        views = [as_matrix(view, name=f'view {j}') for j, view in enumerate(views)]
        cls._check_views(views, model.config)

        return [
            u.T @ (network(view) - mean[:, None])
            for network, u, mean, view in zip(model.networks, model.u, model.means, views)
        ]

    @classmethod
    def shared_representation(cls, model: DgccaModel, views: List[np.ndarray]) -> np.ndarray:
        """Estimate of G for new data: the weighted average of the per-view projections"""

        weights = np.asarray(model.config.weights or [1.0] * model.n_views)
        projections = cls.transform(model, views)

        return sum(w * p for w, p in zip(weights, projections)) / weights.sum()

    @classmethod
    def tuning_reconstruction_error(cls, model: DgccaModel, views: List[np.ndarray]) -> float:
        """GCCA re-solved on the frozen networks' outputs, centered with the stored training means"""

        views = [as_matrix(view, name=f'tuning view {j}') for j, view in enumerate(views)]
        cls._check_views(views, model.config)
        if views[0].shape[1] < model.r:
            raise DataError(f'The tuning set has {views[0].shape[1]} samples, fewer than r = {model.r}')

        return cls._reconstruction_error(model.networks, views, model.means, model.config)

    @classmethod
    def _train_batch(
            cls,
            networks: List[MlpNetwork],
            views: List[np.ndarray],
            config: TrainConfig,
            state: OptimizerState
    ) -> Tuple[List[MlpNetwork], OptimizerState, float]:
        """One update of every network from one batch. Returns the batch reconstruction error before the update"""

        traces = [network.forward(view) for network, view in zip(networks, views)]
        if not all(np.all(np.isfinite(trace.output)) for trace in traces):
            raise DivergenceError('Network outputs are not finite')

        problem = GccaInput(
            views=[mean_center_columns(trace.output) for trace in traces],
            r=config.r,
            eps=config.eps,
            weights=config.weights
        )
        solution = GCCAService.solve(problem)
        if solution.degenerate:
            logging.warning(f'Training | Near-degenerate eigengap {solution.eigengap:.3e} in a batch.')

        params, grads, sizes = [], [], []
        for network, trace, gradient in zip(networks, traces, GCCAService.gradient(problem, solution).views):
            # dF/dO_j = w_j (U_j U_j^T O_j - U_j G), then through the centering
            output_grad = -0.5 * gradient
            output_grad = output_grad - output_grad.mean(axis=1, keepdims=True)
            network_grads = network.backward(trace, output_grad, l1=config.l1, l2=config.l2)
            params += network.parameters()
            grads += network_grads.parameters()
            sizes.append(2 * network.depth)

        new_params, state = OptimizerService.apply_update(state, params, grads)
        if not all(np.all(np.isfinite(p)) for p in new_params):
            raise DivergenceError(f'Parameters are not finite after optimizer step {state.step}')

        new_networks, offset = [], 0
        for network, size in zip(networks, sizes):
            new_networks.append(network.with_parameters(new_params[offset:offset + size]))
            offset += size

        return new_networks, state, solution.reconstruction_error

    @classmethod
    def _tuning_error(
            cls,
            networks: List[MlpNetwork],
            train_views: List[np.ndarray],
            tuning_views: List[np.ndarray],
            config: TrainConfig
    ) -> float:
        """Tuning reconstruction error of the current networks, centered with the current training means"""

        means = [network(view).mean(axis=1) for network, view in zip(networks, train_views)]

        return cls._reconstruction_error(networks, tuning_views, means, config)

    @staticmethod
    def _reconstruction_error(
            networks: List[MlpNetwork],
            views: List[np.ndarray],
            means: List[np.ndarray],
            config: TrainConfig
    ) -> float:
        """Reconstruction error of GCCA solved on outputs centered with the given means"""

        problem = GccaInput(
            views=[network(view) - mean[:, None] for network, view, mean in zip(networks, views, means)],
            r=config.r,
            eps=config.eps,
            weights=config.weights
        )

        return GCCAService.solve(problem).reconstruction_error

    @classmethod
    def _hold_out(cls, views: List[np.ndarray], config: TrainConfig) -> Tuple[List[np.ndarray], List[np.ndarray]]:
        """Seeded split of the samples into training and tuning views"""

        n_samples = views[0].shape[1]
        n_tune = int(round(n_samples * config.tune_fraction))
        if n_tune == 0:
            return views, []

        if n_tune < config.r:
            raise ConfigError(f'Invalid value for tune_fraction: {n_tune} tuning samples, fewer than r = {config.r}')

        permutation = np.random.default_rng([config.seed, SPLIT_STREAM]).permutation(n_samples)
        tune, train = np.sort(permutation[:n_tune]), np.sort(permutation[n_tune:])

        return [view[:, train] for view in views], [view[:, tune] for view in views]

    @staticmethod
    def _check_views(views: List[np.ndarray], config: TrainConfig):
        """Raises if the views do not match the configured networks"""

        if len(views) != len(config.views):
            raise ConfigError(f'Config declares {len(config.views)} views, data has {len(views)}')

        if len({view.shape[1] for view in views}) != 1:
            raise DataError('Views disagree on the number of samples')

        for j, (view, view_config) in enumerate(zip(views, config.views)):
            if view.shape[0] != view_config.widths[0]:
                raise ConfigError(
                    f'Invalid value for view.{j}.widths: input width {view_config.widths[0]} '
                    f'does not match the data dimension {view.shape[0]}'
                )

    @staticmethod
    def _guarded(step, epoch: int):
        """Runs a full-data GCCA step, turning numerical failures into training errors"""

        try:
            return step()
        except NumericalError as e:
            raise TrainingError(f'Epoch {epoch} | full pass failed: {e}') from e
